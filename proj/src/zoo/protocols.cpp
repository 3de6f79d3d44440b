#include "ripsim/zoo/protocols.hpp"

#include <algorithm>
#include <numeric>

#include "ripsim/core/error.hpp"
#include "ripsim/zoo/cnf.hpp"

namespace ripsim::zoo {
namespace {

Rational half() { return make_rational(1, 2); }

// Scores one (c, m) block of a message starting at `offset`.
Rational score_block(VerifierSession& session, const ClassicalProofSystem& cps,
                     const Input& instance, std::size_t offset) {
  if (!session.read({1, 0, offset})) return half();
  return cps.accepts(session, instance, Position{1, 0, offset + 1}) ? Rational(1) : Rational(0);
}

Message best_certificate(const ClassicalProofSystem& cps, const Input& instance) {
  std::size_t bits = cps.message_bits(instance);
  Message best = BitString::zeros(bits);
  Rational best_p = -1;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << bits); ++m) {
    Message candidate = BitString::from_uint(m, bits);
    Rational p = acceptance_probability(cps, instance, candidate);
    if (p > best_p) {
      best_p = p;
      best = candidate;
    }
  }
  return best;
}

Message honest_block(const ClassicalProofSystem& cps, const Input& instance) {
  bool member = cps.member(instance);
  Message block;
  block.push_back(member);
  block.append(member ? best_certificate(cps, instance)
                      : BitString::zeros(cps.message_bits(instance)));
  return block;
}

StrategyProfile single_message(const Message& m) {
  return StrategyProfile::constant(1, 1, {{m}});
}

}  // namespace

ProtocolSpec build_np_rip(const ClassicalProofSystem& cps) {
  ProtocolSpec spec;
  spec.name = "np-rip[" + cps.name + "]";
  spec.prover_count = 1;
  spec.round_count = 1;
  spec.normalized = true;
  spec.metadata["inner"] = cps.name;
  spec.metadata["inner.completeness"] = to_fraction_string(cps.completeness);
  spec.metadata["inner.soundness"] = to_fraction_string(cps.soundness);
  spec.shape = [cps](const Input& x) {
    ProtocolShape shape;
    std::size_t bits = 1 + cps.message_bits(x);
    shape.message_bits = {{bits}};
    shape.randomness_bits = cps.randomness_bits(x);
    shape.communication_budget = bits;
    shape.message_bound = bits;
    shape.read_bound = bits;
    return shape;
  };
  spec.verifier = [cps](VerifierSession& session) {
    return score_block(session, cps, session.input(), 0);
  };
  return spec;
}

StrategyProfile honest_np_profile(const ClassicalProofSystem& cps, const Input& x) {
  return single_message(honest_block(cps, x));
}

OracleMachine parity_machine(std::size_t gamma) {
  if (gamma == 0 || gamma > kMaxTupleSize) {
    throw RipError(ErrorKind::kInvalidArgument, "parity machine needs 1 <= gamma <= 7");
  }
  OracleMachine m;
  m.name = "parity-" + std::to_string(gamma);
  m.gamma = gamma;
  m.queries = [gamma](const Input& x) {
    std::vector<Cnf> formulas = decode_formula_tuple(x);
    if (formulas.size() != gamma) {
      throw RipError(ErrorKind::kInvalidArgument,
                     "tuple holds " + std::to_string(formulas.size()) + " formulas, machine makes " +
                         std::to_string(gamma) + " queries");
    }
    std::vector<Input> out;
    for (const auto& f : formulas) out.push_back(encode_formula(f));
    return out;
  };
  m.finish = [](const Input&, const std::vector<bool>& answers) {
    return std::count(answers.begin(), answers.end(), true) % 2 == 1;
  };
  return m;
}

bool oracle_language_member(const OracleMachine& machine, const ClassicalProofSystem& cps,
                            const Input& x) {
  std::vector<bool> answers;
  for (const auto& q : machine.queries(x)) answers.push_back(cps.member(q));
  return machine.finish(x, answers);
}

ProtocolSpec build_oracle_query_rip(const OracleMachine& machine, const ClassicalProofSystem& cps) {
  if (machine.gamma == 0) throw RipError(ErrorKind::kInvalidArgument, "oracle machine needs gamma >= 1");
  ProtocolSpec spec;
  spec.name = "oracle-rip[" + machine.name + "," + cps.name + "]";
  spec.prover_count = 1;
  spec.round_count = 1;
  spec.metadata["gamma"] = std::to_string(machine.gamma);
  spec.metadata["machine"] = machine.name;
  spec.metadata["inner"] = cps.name;
  spec.shape = [machine, cps](const Input& x) {
    std::vector<Input> queries = machine.queries(x);
    std::size_t bits = 1;
    std::size_t coins = 0;
    for (const auto& q : queries) {
      bits += 1 + cps.message_bits(q);
      coins += cps.randomness_bits(q);
    }
    ProtocolShape shape;
    shape.message_bits = {{bits}};
    shape.randomness_bits = coins;
    shape.communication_budget = bits;
    shape.message_bound = bits;
    shape.read_bound = bits;
    return shape;
  };
  spec.verifier = [machine, cps](VerifierSession& session) {
    const Input& x = session.input();
    std::vector<Input> queries = machine.queries(x);
    if (queries.size() != machine.gamma) {
      throw RipError(ErrorKind::kProtocolViolation, "machine made the wrong number of queries");
    }
    bool claim = session.read({1, 0, 0});
    Rational total = 0;
    std::vector<bool> answers;
    std::size_t offset = 1;
    for (const auto& q : queries) {
      answers.push_back(session.read({1, 0, offset}));
      total += score_block(session, cps, q, offset);
      offset += 1 + cps.message_bits(q);
    }
    if (claim != machine.finish(x, answers)) return Rational(-1);
    Rational payment = total / Rational(machine.gamma);
    payment.canonicalize();
    return payment;
  };
  return spec;
}

StrategyProfile honest_oracle_profile(const OracleMachine& machine,
                                      const ClassicalProofSystem& cps, const Input& x) {
  Message m;
  m.push_back(oracle_language_member(machine, cps, x));
  for (const auto& q : machine.queries(x)) m.append(honest_block(cps, q));
  return single_message(m);
}

bool WeightLanguage::member(const Input& x) const {
  if (x.n() != length) {
    throw RipError(ErrorKind::kInvalidArgument, name + " is defined on " +
                                                    std::to_string(length) + "-bit inputs only");
  }
  return accepts_weight(x.bits().popcount());
}

WeightLanguage threshold_language(std::size_t length, std::size_t threshold) {
  if (length == 0) throw RipError(ErrorKind::kInvalidArgument, "threshold language needs n >= 1");
  WeightLanguage l;
  l.name = "threshold-" + std::to_string(length) + "-" + std::to_string(threshold);
  l.length = length;
  l.accepts_weight = [threshold](std::size_t w) { return w >= threshold; };
  return l;
}

ProtocolSpec build_toy_constant_comm(const WeightLanguage& language) {
  const std::size_t n = language.length;
  const std::size_t weight_bits = ceil_log2(n + 1);
  const std::size_t probe_bits = ceil_log2(n);
  ProtocolSpec spec;
  spec.name = "weight-probe[" + language.name + "]";
  spec.prover_count = 1;
  spec.round_count = 1;
  spec.normalized = true;
  spec.metadata["language"] = language.name;
  spec.shape = [n, weight_bits, probe_bits](const Input& x) {
    if (x.n() != n) {
      throw RipError(ErrorKind::kInvalidArgument,
                     "input has " + std::to_string(x.n()) + " bits, protocol expects " +
                         std::to_string(n));
    }
    ProtocolShape shape;
    shape.message_bits = {{1 + weight_bits}};
    shape.randomness_bits = probe_bits;
    shape.communication_budget = 1 + weight_bits;
    shape.message_bound = 1 + weight_bits;
    shape.read_bound = 1 + weight_bits;
    return shape;
  };
  spec.verifier = [language, n, weight_bits, probe_bits](VerifierSession& session) {
    bool claim = session.read({1, 0, 0});
    std::size_t w = session.read_range(1, 0, 1, weight_bits).to_uint();
    if (w > n || claim != language.accepts_weight(w)) return Rational(0);
    std::size_t pos = session.coins(probe_bits);
    if (pos >= n) return half();
    Rational diff = make_rational(static_cast<long>(w), static_cast<long>(n)) -
                    (session.input().bits()[pos] ? 1 : 0);
    Rational payment = 1 - diff * diff;
    payment.canonicalize();
    return payment;
  };
  return spec;
}

StrategyProfile honest_weight_profile(const WeightLanguage& language, const Input& x) {
  std::size_t w = x.bits().popcount();
  Message m;
  m.push_back(language.member(x));
  m.append(BitString::from_uint(w, ceil_log2(language.length + 1)));
  return single_message(m);
}

}  // namespace ripsim::zoo
