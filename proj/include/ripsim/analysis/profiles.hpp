#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "ripsim/core/protocol.hpp"

namespace ripsim::analysis {

// One entry of a strategy table: what prover `prover` sends in `prover_round`
// after observing `history`.
struct ProfileSlot {
  std::size_t prover = 0;
  std::size_t prover_round = 0;
  History history;
  std::size_t bits = 0;
};

// reachable[i][t]: histories prover i can observe at prover round t under
// some tape and some behavior of all provers.
using ReachableHistories = std::vector<std::vector<std::set<History>>>;

ReachableHistories reachable_histories(const ProtocolSpec& spec, const Input& x,
                                       const EnumerationCaps& caps = {});

// All deterministic profiles over reachable histories, in lexicographic order
// of their flattened tables (first slot most significant). Unreachable
// histories are left undefined; they are never consulted.
class ProfileSpace {
 public:
  ProfileSpace(std::size_t prover_count, std::size_t prover_rounds, std::vector<ProfileSlot> slots,
               const EnumerationCaps& caps);

  std::uint64_t size() const { return size_; }
  const std::vector<ProfileSlot>& slots() const { return slots_; }
  StrategyProfile profile(std::uint64_t index) const;

 private:
  std::size_t prover_count_;
  std::size_t prover_rounds_;
  std::vector<ProfileSlot> slots_;
  std::uint64_t size_ = 1;
};

ProfileSpace profile_space(const ProtocolSpec& spec, const Input& x,
                           const EnumerationCaps& caps = {});

std::vector<StrategyProfile> enumerate_profiles(const ProtocolSpec& spec, const Input& x,
                                                const EnumerationCaps& caps = {});

}  // namespace ripsim::analysis
