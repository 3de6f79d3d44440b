#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

#include "ripsim/analysis/payment_report.hpp"
#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"
#include "ripsim/zoo/communication_reduction.hpp"
#include "ripsim/zoo/protocols.hpp"
#include "toy_protocols.hpp"

namespace ripsim {
namespace {

using testing::formula_input;
using testing::load_formula;

zoo::Cnf parse(const std::string& text) {
  std::istringstream in(text);
  return zoo::parse_dimacs(in);
}

StrategyProfile send(const std::string& bits) {
  return StrategyProfile::constant(1, 1, {{BitString::from_string(bits)}});
}

std::set<Rational> payment_support(const ProtocolSpec& spec, const Input& x) {
  std::set<Rational> out;
  explore_runs(spec, x, {}, [&](const RandomTape&, const Execution& e) { out.insert(e.payment); });
  return out;
}

TEST(Dimacs, ParsesHeaderCommentsAndClauses) {
  zoo::Cnf f = parse("c a comment\np cnf 3 2\n1 -3 0\n2\n 0\n");
  EXPECT_EQ(f.variables, 3u);
  EXPECT_EQ(f.clauses, (std::vector<std::vector<int>>{{1, -3}, {2}}));
  EXPECT_EQ(load_formula("phi1.cnf").clauses, (std::vector<std::vector<int>>{{1, 2}, {-1}}));
}

TEST(Dimacs, RejectsMalformedInput) {
  EXPECT_THROW(parse("1 2 0\n"), RipError);
  EXPECT_THROW(parse("p cnf 2 1\n1 2\n"), RipError);
  EXPECT_THROW(parse("p cnf 2 1\n1 3 0\n"), RipError);
  EXPECT_THROW(parse("p cnf 2 2\n1 0\n"), RipError);
  EXPECT_THROW(parse("p cnf 4 1\n1 0\n"), RipError);
  EXPECT_THROW(zoo::load_dimacs(testing::data_dir() / "missing.cnf"), RipError);
}

TEST(Dimacs, SuiteLabelsMatchBruteForce) {
  ASSERT_GE(testing::formula_suite().size(), 10u);
  for (const auto& f : testing::formula_suite()) {
    zoo::Cnf cnf = load_formula(f.file);
    EXPECT_LE(cnf.variables, 3u);
    EXPECT_EQ(cnf.satisfiable(), f.satisfiable) << f.file;
    EXPECT_EQ(testing::brute_force_sat(cnf), f.satisfiable) << f.file;
  }
}

// The encoding keeps clause order but lists literals by variable, positive first.
zoo::Cnf canonical(zoo::Cnf f) {
  for (auto& clause : f.clauses) {
    std::sort(clause.begin(), clause.end(), [](int a, int b) {
      return std::abs(a) != std::abs(b) ? std::abs(a) < std::abs(b) : a > b;
    });
  }
  return f;
}

TEST(FormulaEncoding, RoundTrips) {
  for (const auto& f : testing::formula_suite()) {
    zoo::Cnf cnf = load_formula(f.file);
    EXPECT_EQ(zoo::decode_formula(zoo::encode_formula(cnf)), canonical(cnf)) << f.file;
  }
  std::vector<zoo::Cnf> tuple = {load_formula("phi1.cnf"), load_formula("sat_xor.cnf"),
                                 load_formula("unsat_forced.cnf")};
  EXPECT_EQ(zoo::decode_formula_tuple(zoo::encode_formula_tuple(tuple)), tuple);
}

TEST(FormulaEncoding, LayoutOfPhi1) {
  // 2 vars, 2 clauses; clause 1 = {+1, +2}, clause 2 = {-1}.
  EXPECT_EQ(zoo::encode_formula(load_formula("phi1.cnf")).bits().to_string(),
            "10" "010" "0101" "1000");
}

TEST(ProofSystems, DeclaredParametersHold) {
  std::vector<Input> instances;
  for (const auto& f : testing::formula_suite()) instances.push_back(formula_input(f.file));
  EXPECT_TRUE(zoo::verify_proof_system(zoo::perfect_sat_checker(), instances).ok);
  auto noisy = zoo::verify_proof_system(zoo::noisy_sat_checker(4), instances);
  EXPECT_TRUE(noisy.ok);
  for (std::size_t k = 0; k < instances.size(); ++k) {
    bool sat = testing::formula_suite()[k].satisfiable;
    EXPECT_EQ(noisy.best_acceptance[k], sat ? Rational(1) : make_rational(5, 16));
  }
}

TEST(NpProtocol, HonestPlay) {
  auto cps = zoo::perfect_sat_checker();
  ProtocolSpec spec = zoo::build_np_rip(cps);
  Input phi1 = formula_input("phi1.cnf");
  Input phi2 = formula_input("phi2.cnf");
  EXPECT_EQ(expected_payment(spec, phi1, zoo::honest_np_profile(cps, phi1)), 1);
  EXPECT_EQ(expected_payment(spec, phi2, zoo::honest_np_profile(cps, phi2)), make_rational(1, 2));
  EXPECT_EQ(spec.metadata.at("inner.soundness"), "0/1");
}

TEST(NpProtocol, PaymentSupport) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  std::set<Rational> all;
  for (const auto& f : testing::formula_suite()) {
    for (const auto& u : payment_support(spec, formula_input(f.file))) all.insert(u);
  }
  EXPECT_EQ(all, (std::set<Rational>{0, make_rational(1, 2), 1}));
}

TEST(NpProtocol, NoisyCheckerFalseAcceptBounded) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::noisy_sat_checker(4));
  for (const char* file : {"phi2.cnf", "unsat_full.cnf", "unsat_forced.cnf"}) {
    Input x = formula_input(file);
    auto report = analysis::optimal_profiles(spec, x);
    ASSERT_TRUE(report.best_opposing.has_value());
    EXPECT_LE(*report.best_opposing, make_rational(1, 3)) << file;
    EXPECT_GE(*report.utility_gap, make_rational(1, 6)) << file;
  }
}

class ParityProtocol : public ::testing::Test {
 protected:
  ProtocolSpec spec(std::size_t gamma) {
    return zoo::build_oracle_query_rip(zoo::parity_machine(gamma), cps_);
  }
  Input tuple(const std::vector<std::string>& files) {
    std::vector<zoo::Cnf> fs;
    for (const auto& f : files) fs.push_back(load_formula(f));
    return zoo::encode_formula_tuple(fs);
  }
  zoo::ClassicalProofSystem cps_ = zoo::perfect_sat_checker();
};

TEST_F(ParityProtocol, HonestPayment) {
  Input x = tuple({"phi1.cnf", "phi2.cnf"});
  auto honest = zoo::honest_oracle_profile(zoo::parity_machine(2), cps_, x);
  EXPECT_EQ(expected_payment(spec(2), x, honest), make_rational(3, 4));
  EXPECT_TRUE(honest.answer_bit());
}

TEST_F(ParityProtocol, WrongFinalBitPaysMinusOne) {
  Input x = tuple({"phi1.cnf", "phi2.cnf"});
  // c = 0 against honest blocks (1, 01) and (0, 0).
  Execution run = execute(spec(2), x, BitString{}, send("0" "101" "00"));
  EXPECT_EQ(run.payment, -1);
}

TEST_F(ParityProtocol, MisreportedQueryAnswer) {
  Input x = tuple({"phi1.cnf", "phi2.cnf"});
  // c*_2 = 1 on the unsatisfiable formula makes the parity even, so c = 0.
  EXPECT_EQ(execute(spec(2), x, BitString{}, send("0" "101" "11")).payment, make_rational(1, 2));
  EXPECT_EQ(execute(spec(2), x, BitString{}, send("0" "101" "10")).payment, make_rational(1, 2));
}

TEST_F(ParityProtocol, PaymentSupportOnGrid) {
  for (std::size_t gamma : {1, 2, 3}) {
    std::vector<std::string> files = {"phi1.cnf", "phi2.cnf", "sat_unit.cnf"};
    files.resize(gamma);
    for (const auto& u : payment_support(spec(gamma), tuple(files))) {
      if (u == -1) continue;
      Rational scaled = u * 2 * static_cast<long>(gamma);
      EXPECT_EQ(scaled.get_den(), 1) << to_fraction_string(u);
      EXPECT_GE(u, 0);
      EXPECT_LE(u, 1);
    }
  }
}

TEST_F(ParityProtocol, MachineRejectsWrongTupleSize) {
  Input x = tuple({"phi1.cnf"});
  EXPECT_THROW(execute(spec(2), x, BitString{}, send("0" "101" "00")), RipError);
  EXPECT_THROW(zoo::parity_machine(0), RipError);
}

TEST(CommunicationReduction, RejectsUnnormalizedBase) {
  ProtocolSpec raw = zoo::build_oracle_query_rip(zoo::parity_machine(1), zoo::perfect_sat_checker());
  try {
    zoo::build_communication_reduction(raw);
    FAIL();
  } catch (const RipError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kBaseNotNormalized);
  }
  EXPECT_NO_THROW(zoo::build_communication_reduction(normalize_payments(raw)));
}

TEST(CommunicationReduction, AuditShowsFiveRounds) {
  ProtocolSpec wrapped = zoo::build_communication_reduction(testing::wide_message());
  AuditReport audit = resource_audit(wrapped, Input::from_string("1"));
  EXPECT_TRUE(audit.ok());
  EXPECT_EQ(audit.max_rounds_used, 5u);
  EXPECT_EQ(audit.declared.message_bits.size(), 3u);
  // Round 3 replays at most the two bits the base verifier reads.
  EXPECT_EQ(audit.declared.message_bits[1][0], 2u);
}

TEST(CommunicationReduction, HonestPlayPaysScaledBasePayment) {
  // Base: threshold language on one bit. Its 2-bit message is always read in
  // full, so every sampled index is an accessed bit.
  zoo::WeightLanguage lang = zoo::threshold_language(1, 1);
  ProtocolSpec base = zoo::build_toy_constant_comm(lang);
  ProtocolSpec wrapped = zoo::build_communication_reduction(base);
  for (const char* bits : {"0", "1"}) {
    Input x = Input::from_string(bits);
    StrategyProfile base_profile = zoo::honest_weight_profile(lang, x);
    ProtocolShape shape = checked_shape(base, x);
    Rational sum = 0;
    for_each_tape(shape.randomness_bits, {},
                  [&](const RandomTape& r) { sum += execute(base, x, r, base_profile).payment; });
    Rational expected = sum / static_cast<long>(std::size_t{1} << shape.randomness_bits) /
                        (2 * static_cast<long>(shape.communication_budget));
    expected.canonicalize();
    StrategyProfile honest = zoo::honest_reduction_profile(base, x, base_profile);
    EXPECT_EQ(expected_payment(wrapped, x, honest), expected) << bits;
    EXPECT_EQ(expected, make_rational(1, 4));
  }
}

TEST(CommunicationReduction, UnreadIndexEndsRunWithZero) {
  auto cps = zoo::perfect_sat_checker();
  ProtocolSpec base = zoo::build_np_rip(cps);
  ProtocolSpec wrapped = zoo::build_communication_reduction(base);
  Input phi2 = formula_input("phi2.cnf");
  StrategyProfile honest = zoo::honest_reduction_profile(base, phi2, zoo::honest_np_profile(cps, phi2));
  // Base message c m has 2 bits; c = 0 means only bit 0 is read. k takes 1 coin.
  ASSERT_EQ(checked_shape(wrapped, phi2).randomness_bits, 1u);
  Execution read_bit = execute(wrapped, phi2, BitString{0}, honest);
  Execution unread_bit = execute(wrapped, phi2, BitString{1}, honest);
  EXPECT_EQ(read_bit.payment, make_rational(1, 2) / 4);
  EXPECT_EQ(read_bit.transcript.rounds_used(), 5u);
  EXPECT_EQ(unread_bit.payment, 0);
  EXPECT_EQ(unread_bit.transcript.rounds_used(), 3u);
}

TEST(CommunicationReduction, DisagreeingSecondProverIsPenalized) {
  zoo::WeightLanguage lang = zoo::threshold_language(1, 1);
  ProtocolSpec base = zoo::build_toy_constant_comm(lang);
  ProtocolSpec wrapped = zoo::build_communication_reduction(base);
  Input x = Input::from_string("1");
  StrategyProfile honest =
      zoo::honest_reduction_profile(base, x, zoo::honest_weight_profile(lang, x));
  StrategyProfile liar = honest;
  liar.set_rule(1, 2, [&honest](const History& h) {
    Message m = honest.message(1, 2, h);
    m.set(0, !m[0]);
    return m;
  });
  Rational u = expected_payment(wrapped, x, liar);
  Rational c = checked_shape(base, x).communication_budget;
  // Base payment R = 1 here; the bound is (1/C)(R/2 - 1).
  EXPECT_LE(u, (Rational(1) / 2 - 1) / c);
  EXPECT_LT(u, 0);
}

TEST(CommunicationReduction, FirstMessageMismatchPaysMinusOne) {
  zoo::WeightLanguage lang = zoo::threshold_language(1, 1);
  ProtocolSpec base = zoo::build_toy_constant_comm(lang);
  ProtocolSpec wrapped = zoo::build_communication_reduction(base);
  Input x = Input::from_string("1");
  StrategyProfile s = zoo::honest_reduction_profile(base, x, zoo::honest_weight_profile(lang, x));
  s.set(0, 0, {}, BitString::from_string("01"));
  EXPECT_EQ(expected_payment(wrapped, x, s), -1);
}

TEST(CommunicationReduction, AnswerPreservedOnSmallBase) {
  zoo::WeightLanguage lang = zoo::threshold_language(1, 1);
  ProtocolSpec base = zoo::build_toy_constant_comm(lang);
  ProtocolSpec wrapped = zoo::build_communication_reduction(base);
  for (const char* bits : {"0", "1"}) {
    Input x = Input::from_string(bits);
    EXPECT_EQ(analysis::rational_answer(wrapped, x), analysis::rational_answer(base, x)) << bits;
    EXPECT_EQ(analysis::rational_answer(wrapped, x), lang.member(x)) << bits;
  }
}

TEST(ToyConstantComm, MajorityOfThree) {
  zoo::WeightLanguage majority = zoo::threshold_language(3, 2);
  ProtocolSpec spec = zoo::build_toy_constant_comm(majority);
  EXPECT_TRUE(analysis::rational_answer(spec, Input::from_string("110")));
  EXPECT_FALSE(analysis::rational_answer(spec, Input::from_string("000")));
  for (std::uint64_t v = 0; v < 8; ++v) {
    Input x(BitString::from_uint(v, 3));
    bool member = x.bits().popcount() >= 2;
    EXPECT_EQ(majority.member(x), member);
    EXPECT_EQ(analysis::rational_answer(spec, x), member) << x.bits().to_string();
    auto report = analysis::optimal_profiles(spec, x);
    StrategyProfile honest = zoo::honest_weight_profile(majority, x);
    EXPECT_EQ(expected_payment(spec, x, honest), report.optimum);
    AuditReport audit = resource_audit(spec, x);
    EXPECT_TRUE(audit.ok());
    EXPECT_LE(audit.max_communication, 4u);
  }
}

TEST(ToyConstantComm, WrongLengthRejected) {
  ProtocolSpec spec = zoo::build_toy_constant_comm(zoo::threshold_language(3, 2));
  EXPECT_THROW(checked_shape(spec, Input::from_string("10")), RipError);
}

}  // namespace
}  // namespace ripsim
