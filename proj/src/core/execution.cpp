#include "ripsim/core/execution.hpp"

#include <algorithm>
#include <map>

#include "ripsim/core/error.hpp"

namespace ripsim {
namespace {

class RunSession final : public VerifierSession {
 public:
  RunSession(const ProtocolSpec& spec, const ProtocolShape& shape, const Input& x,
             const RandomTape& r, MessageSource& source, const RunOptions& options)
      : spec_(spec), shape_(shape), input_(x), tape_(r), source_(source), options_(options) {
    prover_round(0);
  }

  const Input& input() const override { return input_; }

  bool coin() override {
    if (tape_pos_ >= tape_.size()) {
      throw RipError(ErrorKind::kBudgetExceeded,
                     "verifier of '" + spec_.name + "' consumed more than " +
                         std::to_string(tape_.size()) + " random bits");
    }
    return tape_[tape_pos_++];
  }

  std::size_t coins_consumed() const override { return tape_pos_; }

  bool read(const Position& p) override {
    if (p.round == 0 || p.round % 2 == 0 || p.round > transcript_.rounds.size()) {
      throw RipError(ErrorKind::kProtocolViolation,
                     "verifier read round " + std::to_string(p.round) +
                         " which is not a completed prover round");
    }
    const auto& round = transcript_.rounds[p.round - 1];
    if (p.prover >= round.size() || p.bit >= round[p.prover].size()) {
      throw RipError(ErrorKind::kProtocolViolation, "verifier read past the end of a message");
    }
    bool value = round[p.prover][p.bit];
    if (read_set_.emplace(p, value).second) {
      transcript_.access_trace.push_back(p);
      if (options_.enforce_budgets && transcript_.access_trace.size() > shape_.read_bound) {
        throw RipError(ErrorKind::kBudgetExceeded,
                       "verifier read more than " + std::to_string(shape_.read_bound) + " bits");
      }
    }
    return value;
  }

  std::size_t message_length(std::size_t round, std::size_t prover) const override {
    if (round == 0 || round % 2 == 0) return 0;
    std::size_t t = (round - 1) / 2;
    if (t >= shape_.message_bits.size() || prover >= spec_.prover_count) return 0;
    return shape_.message_bits[t][prover];
  }

  std::size_t current_round() const override { return transcript_.rounds.size(); }

  void send(std::vector<Message> messages) override {
    std::size_t next_prover_round = (transcript_.rounds.size() + 1) / 2;
    if (next_prover_round >= spec_.prover_round_count()) {
      throw RipError(ErrorKind::kProtocolViolation,
                     "verifier of '" + spec_.name + "' sent past round " +
                         std::to_string(spec_.round_count));
    }
    if (messages.size() != spec_.prover_count) {
      throw RipError(ErrorKind::kProtocolViolation, "verifier must address every prover");
    }
    for (const auto& m : messages) account(m);
    transcript_.rounds.push_back(std::move(messages));
    prover_round(next_prover_round);
  }

  Execution finish(Rational payment) {
    if (payment < -1 || payment > 1) {
      throw RipError(ErrorKind::kProtocolViolation,
                     "payment " + to_fraction_string(payment) + " outside [-1, 1]");
    }
    if (spec_.normalized && payment < 0) {
      throw RipError(ErrorKind::kNotNormalized,
                     "normalized spec '" + spec_.name + "' paid " + to_fraction_string(payment));
    }
    if (spec_.zero_one && payment != 0 && payment != 1) {
      throw RipError(ErrorKind::kNonBinaryPayment,
                     "zero-one spec '" + spec_.name + "' paid " + to_fraction_string(payment));
    }
    transcript_.answer_bit = transcript_.rounds[0][0][0];
    return Execution{std::move(transcript_), std::move(payment), tape_pos_};
  }

 private:
  void account(const Message& m) {
    communication_ += m.size();
    if (!options_.enforce_budgets) return;
    if (m.size() > shape_.message_bound) {
      throw RipError(ErrorKind::kBudgetExceeded,
                     "message of " + std::to_string(m.size()) + " bits exceeds bound " +
                         std::to_string(shape_.message_bound));
    }
    if (communication_ > shape_.communication_budget) {
      throw RipError(ErrorKind::kBudgetExceeded,
                     "communication exceeds budget " + std::to_string(shape_.communication_budget));
    }
  }

  void prover_round(std::size_t t) {
    std::vector<Message> messages;
    messages.reserve(spec_.prover_count);
    for (std::size_t i = 0; i < spec_.prover_count; ++i) {
      std::size_t length = shape_.message_bits[t][i];
      Message m;
      if (length > 0) {
        m = source_.message(i, t, transcript_.history(i, t), length);
        if (m.size() != length) {
          throw RipError(ErrorKind::kMalformedStrategy,
                         "prover " + std::to_string(i) + " sent " + std::to_string(m.size()) +
                             " bits where " + std::to_string(length) + " are required");
        }
      }
      account(m);
      messages.push_back(std::move(m));
    }
    transcript_.rounds.push_back(std::move(messages));
  }

  const ProtocolSpec& spec_;
  const ProtocolShape& shape_;
  const Input& input_;
  const RandomTape& tape_;
  MessageSource& source_;
  RunOptions options_;
  Transcript transcript_;
  std::map<Position, bool> read_set_;
  std::size_t tape_pos_ = 0;
  std::size_t communication_ = 0;
};

class ProfileSource final : public MessageSource {
 public:
  explicit ProfileSource(const StrategyProfile& s) : s_(s) {}
  Message message(std::size_t prover, std::size_t prover_round, const History& history,
                  std::size_t) override {
    return s_.message(prover, prover_round, history);
  }

 private:
  const StrategyProfile& s_;
};

// Replays a run with recorded choices; unseen choice points default to 0.
class ChoiceSource final : public MessageSource {
 public:
  Message message(std::size_t, std::size_t, const History&, std::size_t length) override {
    if (length > 24) {
      throw RipError(ErrorKind::kStrategyCapExceeded,
                     "message of " + std::to_string(length) + " bits is too wide to explore");
    }
    if (cursor_ == choices_.size()) {
      choices_.push_back(0);
      arities_.push_back(std::uint64_t{1} << length);
    }
    return BitString::from_uint(choices_[cursor_++], length);
  }

  void rewind() { cursor_ = 0; }
  bool advance() {
    while (!choices_.empty() && choices_.back() + 1 == arities_.back()) {
      choices_.pop_back();
      arities_.pop_back();
    }
    if (choices_.empty()) return false;
    ++choices_.back();
    return true;
  }

 private:
  std::vector<std::uint64_t> choices_;
  std::vector<std::uint64_t> arities_;
  std::size_t cursor_ = 0;
};

}  // namespace

Execution simulate(const ProtocolSpec& spec, const ProtocolShape& shape, const Input& x,
                   const RandomTape& r, MessageSource& source, const RunOptions& options) {
  if (r.size() != shape.randomness_bits) {
    throw RipError(ErrorKind::kInvalidArgument,
                   "tape has " + std::to_string(r.size()) + " bits, protocol declares " +
                       std::to_string(shape.randomness_bits));
  }
  RunSession session(spec, shape, x, r, source, options);
  Rational payment = spec.verifier(session);
  return session.finish(std::move(payment));
}

Execution execute(const ProtocolSpec& spec, const Input& x, const RandomTape& r,
                  const StrategyProfile& s) {
  ProtocolShape shape = checked_shape(spec, x);
  ProfileSource source(s);
  return simulate(spec, shape, x, r, source);
}

std::uint64_t tape_count(std::size_t randomness_bits, const EnumerationCaps& caps) {
  if (randomness_bits >= 63 || (std::uint64_t{1} << randomness_bits) > caps.tapes) {
    throw RipError(ErrorKind::kRandomnessCapExceeded,
                   "2^" + std::to_string(randomness_bits) + " random tapes exceed the cap of " +
                       std::to_string(caps.tapes));
  }
  return std::uint64_t{1} << randomness_bits;
}

void for_each_tape(std::size_t randomness_bits, const EnumerationCaps& caps,
                   const std::function<void(const RandomTape&)>& visit) {
  std::uint64_t count = tape_count(randomness_bits, caps);
  for (std::uint64_t v = 0; v < count; ++v) visit(BitString::from_uint(v, randomness_bits));
}

Rational expected_payment(const ProtocolSpec& spec, const Input& x, const StrategyProfile& s,
                          const EnumerationCaps& caps) {
  ProtocolShape shape = checked_shape(spec, x);
  ProfileSource source(s);
  Rational sum = 0;
  for_each_tape(shape.randomness_bits, caps, [&](const RandomTape& r) {
    sum += simulate(spec, shape, x, r, source).payment;
  });
  Rational expectation = sum / Rational(tape_count(shape.randomness_bits, caps));
  expectation.canonicalize();
  return expectation;
}

ProtocolSpec normalize_payments(const ProtocolSpec& spec) {
  ProtocolSpec out = spec;
  out.name = spec.name + "+normalized";
  out.normalized = true;
  out.zero_one = false;
  out.metadata["normalize.affine"] = "(R+1)/2";
  out.verifier = [inner = spec.verifier](VerifierSession& session) {
    Rational raw = inner(session);
    if (raw < -1 || raw > 1) {
      throw RipError(ErrorKind::kProtocolViolation,
                     "raw payment " + to_fraction_string(raw) + " outside [-1, 1]");
    }
    Rational mapped = (raw + 1) / 2;
    mapped.canonicalize();
    return mapped;
  };
  return out;
}

void explore_runs(const ProtocolSpec& spec, const Input& x, const EnumerationCaps& caps,
                  const std::function<void(const RandomTape&, const Execution&)>& visit,
                  const RunOptions& options) {
  ProtocolShape shape = checked_shape(spec, x);
  for_each_tape(shape.randomness_bits, caps, [&](const RandomTape& r) {
    ChoiceSource source;
    std::uint64_t runs = 0;
    do {
      if (++runs > caps.profiles) {
        throw RipError(ErrorKind::kStrategyCapExceeded,
                       "more than " + std::to_string(caps.profiles) +
                           " message combinations per tape");
      }
      source.rewind();
      visit(r, simulate(spec, shape, x, r, source, options));
    } while (source.advance());
  });
}

AuditReport resource_audit(const ProtocolSpec& spec, const Input& x, const EnumerationCaps& caps) {
  AuditReport report;
  report.declared = checked_shape(spec, x);
  report.declared_rounds = spec.round_count;
  RunOptions unchecked{.enforce_budgets = false};
  try {
    explore_runs(
        spec, x, caps,
        [&](const RandomTape&, const Execution& e) {
          ++report.runs;
          const Transcript& t = e.transcript;
          report.max_communication = std::max(report.max_communication, t.total_bits());
          report.max_rounds_used = std::max(report.max_rounds_used, t.rounds_used());
          report.max_random_bits = std::max(report.max_random_bits, e.coins_consumed);
          report.max_reads = std::max(report.max_reads, t.access_trace.size());
          for (const auto& round : t.rounds) {
            for (const auto& m : round) {
              report.max_message_bits = std::max(report.max_message_bits, m.size());
            }
          }
        },
        unchecked);
  } catch (const RipError& e) {
    if (e.kind() == ErrorKind::kStrategyCapExceeded ||
        e.kind() == ErrorKind::kRandomnessCapExceeded) {
      throw;
    }
    report.violations.push_back(std::string("run aborted: ") + e.what());
  }
  const ProtocolShape& d = report.declared;
  auto flag = [&](bool bad, const std::string& what, std::size_t used, std::size_t budget) {
    if (bad) {
      report.violations.push_back(what + " " + std::to_string(used) + " exceeds " +
                                  std::to_string(budget));
    }
  };
  flag(report.max_communication > d.communication_budget, "communication",
       report.max_communication, d.communication_budget);
  flag(report.max_message_bits > d.message_bound, "message length", report.max_message_bits,
       d.message_bound);
  flag(report.max_rounds_used > spec.round_count, "rounds", report.max_rounds_used,
       spec.round_count);
  flag(report.max_random_bits > d.randomness_bits, "random bits", report.max_random_bits,
       d.randomness_bits);
  flag(report.max_reads > d.read_bound, "verifier reads", report.max_reads, d.read_bound);
  return report;
}

}  // namespace ripsim
