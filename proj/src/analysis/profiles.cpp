#include "ripsim/analysis/profiles.hpp"

#include <string>

#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"

namespace ripsim::analysis {

ReachableHistories reachable_histories(const ProtocolSpec& spec, const Input& x,
                                       const EnumerationCaps& caps) {
  validate_spec(spec);
  const std::size_t rounds = spec.prover_round_count();
  ReachableHistories reachable(spec.prover_count, std::vector<std::set<History>>(rounds));
  for (auto& per_prover : reachable) per_prover[0].insert(History{});
  if (rounds == 1) return reachable;

  explore_runs(
      spec, x, caps,
      [&](const RandomTape&, const Execution& e) {
        const Transcript& t = e.transcript;
        std::size_t reached = (t.rounds_used() + 1) / 2;
        for (std::size_t round = 1; round < reached; ++round) {
          for (std::size_t i = 0; i < spec.prover_count; ++i) {
            reachable[i][round].insert(t.history(i, round));
          }
        }
      },
      RunOptions{.enforce_budgets = false});
  return reachable;
}

ProfileSpace::ProfileSpace(std::size_t prover_count, std::size_t prover_rounds,
                           std::vector<ProfileSlot> slots, const EnumerationCaps& caps)
    : prover_count_(prover_count), prover_rounds_(prover_rounds), slots_(std::move(slots)) {
  std::size_t total_bits = 0;
  for (const auto& slot : slots_) total_bits += slot.bits;
  if (total_bits >= 63 || (std::uint64_t{1} << total_bits) > caps.profiles) {
    throw RipError(ErrorKind::kStrategyCapExceeded,
                   "2^" + std::to_string(total_bits) + " strategy profiles exceed the cap of " +
                       std::to_string(caps.profiles));
  }
  size_ = std::uint64_t{1} << total_bits;
}

StrategyProfile ProfileSpace::profile(std::uint64_t index) const {
  if (index >= size_) throw RipError(ErrorKind::kInvalidArgument, "profile index out of range");
  StrategyProfile s(prover_count_, prover_rounds_);
  for (auto it = slots_.rbegin(); it != slots_.rend(); ++it) {
    std::uint64_t radix = std::uint64_t{1} << it->bits;
    s.set(it->prover, it->prover_round, it->history, BitString::from_uint(index % radix, it->bits));
    index /= radix;
  }
  return s;
}

ProfileSpace profile_space(const ProtocolSpec& spec, const Input& x, const EnumerationCaps& caps) {
  ProtocolShape shape = checked_shape(spec, x);
  ReachableHistories reachable = reachable_histories(spec, x, caps);
  std::vector<ProfileSlot> slots;
  for (std::size_t i = 0; i < spec.prover_count; ++i) {
    for (std::size_t t = 0; t < spec.prover_round_count(); ++t) {
      std::size_t bits = shape.message_bits[t][i];
      if (bits == 0) continue;
      for (const auto& h : reachable[i][t]) slots.push_back({i, t, h, bits});
    }
  }
  return ProfileSpace(spec.prover_count, spec.prover_round_count(), std::move(slots), caps);
}

std::vector<StrategyProfile> enumerate_profiles(const ProtocolSpec& spec, const Input& x,
                                                const EnumerationCaps& caps) {
  ProfileSpace space = profile_space(spec, x, caps);
  std::vector<StrategyProfile> out;
  out.reserve(space.size());
  for (std::uint64_t k = 0; k < space.size(); ++k) out.push_back(space.profile(k));
  return out;
}

}  // namespace ripsim::analysis
