#include "ripsim/zoo/proof_system.hpp"

#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"
#include "ripsim/zoo/cnf.hpp"

namespace ripsim::zoo {
namespace {

// A bare single-message session for running a checker outside a protocol.
class CheckerSession final : public VerifierSession {
 public:
  CheckerSession(const Input& instance, const Message& message, const RandomTape& tape)
      : instance_(instance), message_(message), tape_(tape) {}

  const Input& input() const override { return instance_; }
  bool coin() override {
    if (pos_ >= tape_.size()) throw RipError(ErrorKind::kBudgetExceeded, "checker tape exhausted");
    return tape_[pos_++];
  }
  std::size_t coins_consumed() const override { return pos_; }
  bool read(const Position& p) override {
    if (p.round != 1 || p.prover != 0 || p.bit >= message_.size()) {
      throw RipError(ErrorKind::kProtocolViolation, "checker read outside its message");
    }
    return message_[p.bit];
  }
  std::size_t message_length(std::size_t round, std::size_t prover) const override {
    return round == 1 && prover == 0 ? message_.size() : 0;
  }
  std::size_t current_round() const override { return 1; }
  void send(std::vector<Message>) override {
    throw RipError(ErrorKind::kProtocolViolation, "one-round checker cannot send");
  }

 private:
  const Input& instance_;
  const Message& message_;
  const RandomTape& tape_;
  std::size_t pos_ = 0;
};

ClassicalProofSystem sat_checker_base() {
  ClassicalProofSystem cps;
  cps.member = [](const Input& x) { return decode_formula(x).satisfiable(); };
  cps.message_bits = [](const Input& x) { return decode_formula(x).variables; };
  cps.completeness = 1;
  return cps;
}

}  // namespace

ClassicalProofSystem perfect_sat_checker() {
  ClassicalProofSystem cps = sat_checker_base();
  cps.name = "sat-perfect";
  cps.randomness_bits = [](const Input&) { return std::size_t{0}; };
  cps.accepts = [](VerifierSession& session, const Input& instance, const Position& start) {
    Cnf f = decode_formula(instance);
    BitString assignment = session.read_range(start.round, start.prover, start.bit, f.variables);
    return f.satisfied_by(assignment);
  };
  cps.soundness = 0;
  return cps;
}

ClassicalProofSystem noisy_sat_checker(std::size_t noise_bits) {
  if (noise_bits == 0 || noise_bits > 16) {
    throw RipError(ErrorKind::kInvalidArgument, "noise_bits must be in [1, 16]");
  }
  ClassicalProofSystem cps = sat_checker_base();
  cps.name = "sat-noisy-" + std::to_string(noise_bits);
  cps.randomness_bits = [noise_bits](const Input&) { return noise_bits; };
  const std::uint64_t cutoff = (std::uint64_t{1} << noise_bits) / 3;
  cps.accepts = [noise_bits, cutoff](VerifierSession& session, const Input& instance,
                                     const Position& start) {
    Cnf f = decode_formula(instance);
    BitString assignment = session.read_range(start.round, start.prover, start.bit, f.variables);
    if (f.satisfied_by(assignment)) return true;
    return session.coins(noise_bits) < cutoff;
  };
  cps.soundness = make_rational(1, 3);
  return cps;
}

Rational acceptance_probability(const ClassicalProofSystem& cps, const Input& instance,
                                const Message& message) {
  if (message.size() != cps.message_bits(instance)) {
    throw RipError(ErrorKind::kMalformedStrategy, "checker message has the wrong length");
  }
  std::size_t bits = cps.randomness_bits(instance);
  std::uint64_t accepted = 0;
  for_each_tape(bits, {}, [&](const RandomTape& tape) {
    CheckerSession session(instance, message, tape);
    if (cps.accepts(session, instance, Position{1, 0, 0})) ++accepted;
  });
  Rational p(accepted, tape_count(bits, {}));
  p.canonicalize();
  return p;
}

ProofSystemCheck verify_proof_system(const ClassicalProofSystem& cps,
                                     const std::vector<Input>& instances) {
  ProofSystemCheck check;
  if (!(0 <= cps.soundness && cps.soundness < cps.completeness && cps.completeness <= 1)) {
    check.ok = false;
  }
  for (const auto& x : instances) {
    std::size_t bits = cps.message_bits(x);
    Rational best = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
      Rational p = acceptance_probability(cps, x, BitString::from_uint(m, bits));
      if (p > best) best = p;
    }
    bool ok = cps.member(x) ? best >= cps.completeness : best <= cps.soundness;
    check.ok = check.ok && ok;
    check.best_acceptance.push_back(best);
  }
  return check;
}

}  // namespace ripsim::zoo
