#include "ripsim/core/protocol.hpp"

#include <utility>

#include "ripsim/core/error.hpp"

namespace ripsim {

Input::Input(BitString bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw RipError(ErrorKind::kInvalidArgument, "input must have n >= 1");
}

std::size_t Transcript::total_bits() const {
  std::size_t total = 0;
  for (const auto& round : rounds) {
    for (const auto& m : round) total += m.size();
  }
  return total;
}

History Transcript::history(std::size_t prover, std::size_t prover_round) const {
  History h;
  for (std::size_t t = 1; t <= prover_round; ++t) {
    std::size_t verifier_round = 2 * t;  // 1-based round number
    h.push_back(rounds.at(verifier_round - 1).at(prover));
  }
  return h;
}

std::uint64_t VerifierSession::coins(std::size_t count) {
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < count; ++i) value = (value << 1) | (coin() ? 1U : 0U);
  return value;
}

BitString VerifierSession::read_range(std::size_t round, std::size_t prover, std::size_t offset,
                                      std::size_t length) {
  BitString out;
  for (std::size_t k = 0; k < length; ++k) out.push_back(read({round, prover, offset + k}));
  return out;
}

void validate_spec(const ProtocolSpec& spec) {
  if (spec.prover_count < 1) throw RipError(ErrorKind::kInvalidArgument, "prover_count must be >= 1");
  if (spec.round_count < 1) throw RipError(ErrorKind::kInvalidArgument, "round_count must be >= 1");
  if (!spec.shape || !spec.verifier) {
    throw RipError(ErrorKind::kInvalidArgument, "spec '" + spec.name + "' lacks shape or verifier");
  }
}

ProtocolShape checked_shape(const ProtocolSpec& spec, const Input& x) {
  validate_spec(spec);
  ProtocolShape shape = spec.shape(x);
  if (shape.message_bits.size() != spec.prover_round_count()) {
    throw RipError(ErrorKind::kInvalidArgument,
                   "shape of '" + spec.name + "' does not match its round count");
  }
  for (const auto& round : shape.message_bits) {
    if (round.size() != spec.prover_count) {
      throw RipError(ErrorKind::kInvalidArgument,
                     "shape of '" + spec.name + "' does not match its prover count");
    }
  }
  if (shape.message_bits[0][0] < 1) {
    throw RipError(ErrorKind::kInvalidArgument, "prover 0's first message must carry the answer bit");
  }
  return shape;
}

StrategyProfile::StrategyProfile(std::size_t prover_count, std::size_t prover_rounds)
    : slots_(prover_count, std::vector<Slot>(prover_rounds)) {}

const StrategyProfile::Slot& StrategyProfile::slot(std::size_t prover,
                                                   std::size_t prover_round) const {
  if (prover >= slots_.size() || prover_round >= slots_[prover].size()) {
    throw RipError(ErrorKind::kMalformedStrategy, "no strategy slot for prover " +
                                                      std::to_string(prover) + " round " +
                                                      std::to_string(prover_round));
  }
  return slots_[prover][prover_round];
}

StrategyProfile::Slot& StrategyProfile::slot(std::size_t prover, std::size_t prover_round) {
  return const_cast<Slot&>(std::as_const(*this).slot(prover, prover_round));
}

void StrategyProfile::set(std::size_t prover, std::size_t prover_round, const History& history,
                          Message message) {
  slot(prover, prover_round).table[history] = std::move(message);
}

void StrategyProfile::set_rule(std::size_t prover, std::size_t prover_round, Rule rule) {
  slot(prover, prover_round).rule = std::move(rule);
}

bool StrategyProfile::defined(std::size_t prover, std::size_t prover_round,
                              const History& history) const {
  const Slot& s = slot(prover, prover_round);
  return s.table.contains(history) || static_cast<bool>(s.rule);
}

Message StrategyProfile::message(std::size_t prover, std::size_t prover_round,
                                 const History& history) const {
  const Slot& s = slot(prover, prover_round);
  if (auto it = s.table.find(history); it != s.table.end()) return it->second;
  if (s.rule) return s.rule(history);
  throw RipError(ErrorKind::kMalformedStrategy,
                 "prover " + std::to_string(prover) + " has no message for a reachable history in "
                 "prover round " + std::to_string(prover_round));
}

bool StrategyProfile::answer_bit() const {
  Message first = message(0, 0, {});
  if (first.empty()) throw RipError(ErrorKind::kMalformedStrategy, "first message is empty");
  return first[0];
}

StrategyProfile StrategyProfile::constant(std::size_t prover_count, std::size_t prover_rounds,
                                          const std::vector<std::vector<Message>>& messages) {
  StrategyProfile s(prover_count, prover_rounds);
  for (std::size_t i = 0; i < prover_count; ++i) {
    for (std::size_t t = 0; t < prover_rounds; ++t) {
      Message m = messages.at(i).at(t);
      s.set_rule(i, t, [m](const History&) { return m; });
    }
  }
  return s;
}

}  // namespace ripsim
