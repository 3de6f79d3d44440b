#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ripsim/core/bit_string.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim {

using Message = BitString;
using RandomTape = BitString;

// The problem instance. Never empty.
class Input {
 public:
  explicit Input(BitString bits);
  static Input from_string(std::string_view text) { return Input(BitString::from_string(text)); }

  const BitString& bits() const { return bits_; }
  std::size_t n() const { return bits_.size(); }

  auto operator<=>(const Input&) const = default;
  bool operator==(const Input&) const = default;

 private:
  BitString bits_;
};

// A transcript bit. Rounds are numbered from 1 and prover rounds are the odd
// ones; prover and bit indices are 0-based.
struct Position {
  std::size_t round = 1;
  std::size_t prover = 0;
  std::size_t bit = 0;

  auto operator<=>(const Position&) const = default;
  bool operator==(const Position&) const = default;
};

// Messages a prover has received from the verifier, oldest first. This is the
// whole of what a prover observes; its own past messages are a function of it.
using History = std::vector<BitString>;

struct Transcript {
  // rounds[r - 1][i] is the round-r message sent by (odd r) or to (even r)
  // prover i.
  std::vector<std::vector<Message>> rounds;
  // Distinct transcript positions read by the verifier, in first-read order.
  // Repeated reads of a position are not recorded again.
  std::vector<Position> access_trace;
  bool answer_bit = false;

  std::size_t rounds_used() const { return rounds.size(); }
  std::size_t total_bits() const;
  bool bit(const Position& p) const { return rounds.at(p.round - 1).at(p.prover).at(p.bit); }
  History history(std::size_t prover, std::size_t prover_round) const;

  bool operator==(const Transcript&) const = default;
};

// Per-input dimensions and budgets of a protocol.
struct ProtocolShape {
  // message_bits[t][i]: fixed length of prover i's message in prover round t
  // (0-based; prover round t is protocol round 2t + 1).
  std::vector<std::vector<std::size_t>> message_bits;
  std::size_t randomness_bits = 0;
  std::size_t communication_budget = 0;
  std::size_t message_bound = 0;
  // Maximum number of distinct transcript bits the verifier reads in a run.
  std::size_t read_bound = 0;
};

// The verifier's view of a run. Every transcript bit the verifier uses must be
// obtained through read(); coins are consumed from the tape left to right.
class VerifierSession {
 public:
  virtual ~VerifierSession() = default;

  virtual const Input& input() const = 0;
  virtual bool coin() = 0;
  virtual std::size_t coins_consumed() const = 0;
  virtual bool read(const Position& position) = 0;
  virtual std::size_t message_length(std::size_t round, std::size_t prover) const = 0;
  // Latest completed round; a verifier round is completed by send().
  virtual std::size_t current_round() const = 0;
  // Sends one message per prover, then the provers answer in the next round.
  virtual void send(std::vector<Message> messages) = 0;

  std::uint64_t coins(std::size_t count);
  BitString read_range(std::size_t round, std::size_t prover, std::size_t offset,
                       std::size_t length);
};

// Runs the verifier to completion and returns the terminal payment.
using VerifierProcedure = std::function<Rational(VerifierSession&)>;

struct ProtocolSpec {
  std::string name;
  std::size_t prover_count = 1;
  std::size_t round_count = 1;
  bool normalized = false;  // payments lie in [0, 1]
  bool zero_one = false;    // payments lie in {0, 1}
  std::map<std::string, std::string> metadata;
  std::function<ProtocolShape(const Input&)> shape;
  VerifierProcedure verifier;

  std::size_t prover_round_count() const { return (round_count + 1) / 2; }
};

// Throws RipError(kInvalidArgument) if the structural invariants fail.
void validate_spec(const ProtocolSpec& spec);
ProtocolShape checked_shape(const ProtocolSpec& spec, const Input& x);

// Deterministic prover strategies: per prover and prover round, a mapping from
// the observed history to a message. A slot is either an explicit table, a
// rule, or both (the table wins).
class StrategyProfile {
 public:
  using Rule = std::function<Message(const History&)>;

  StrategyProfile(std::size_t prover_count, std::size_t prover_rounds);

  std::size_t prover_count() const { return slots_.size(); }
  std::size_t prover_rounds() const { return slots_.empty() ? 0 : slots_.front().size(); }

  void set(std::size_t prover, std::size_t prover_round, const History& history,
           Message message);
  void set_rule(std::size_t prover, std::size_t prover_round, Rule rule);

  // Throws RipError(kMalformedStrategy) when the slot is undefined on history.
  Message message(std::size_t prover, std::size_t prover_round, const History& history) const;
  bool defined(std::size_t prover, std::size_t prover_round, const History& history) const;

  // First bit of prover 0's first-round message.
  bool answer_bit() const;

  // messages[i][t] is sent by prover i in prover round t whatever it has seen.
  static StrategyProfile constant(std::size_t prover_count, std::size_t prover_rounds,
                                  const std::vector<std::vector<Message>>& messages);

 private:
  struct Slot {
    std::map<History, Message> table;
    Rule rule;
  };
  const Slot& slot(std::size_t prover, std::size_t prover_round) const;
  Slot& slot(std::size_t prover, std::size_t prover_round);

  std::vector<std::vector<Slot>> slots_;
};

struct EnumerationCaps {
  std::uint64_t profiles = std::uint64_t{1} << 20;
  std::uint64_t tapes = std::uint64_t{1} << 20;
};

}  // namespace ripsim
