#include <gtest/gtest.h>

#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"
#include "ripsim/zoo/protocols.hpp"
#include "toy_protocols.hpp"

namespace ripsim {
namespace {

using testing::constant_payment;
using testing::formula_input;

template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const RipError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a RipError";
  return ErrorKind::kConfigInvalid;
}

StrategyProfile send(const std::string& bits) {
  return StrategyProfile::constant(1, 1, {{BitString::from_string(bits)}});
}

TEST(BitString, BigEndianConversions) {
  BitString b = BitString::from_uint(5, 4);
  EXPECT_EQ(b.to_string(), "0101");
  EXPECT_EQ(b.to_uint(), 5u);
  EXPECT_EQ(b.to_uint(1, 2), 2u);
  EXPECT_EQ(b.popcount(), 2u);
  EXPECT_EQ(b.slice(2, 2).to_string(), "01");
  EXPECT_EQ(BitString::from_string("").size(), 0u);
  EXPECT_THROW(BitString::from_string("012"), RipError);
}

TEST(BitString, CeilLog2) {
  EXPECT_EQ(ceil_log2(0), 0u);
  EXPECT_EQ(ceil_log2(1), 0u);
  EXPECT_EQ(ceil_log2(2), 1u);
  EXPECT_EQ(ceil_log2(3), 2u);
  EXPECT_EQ(ceil_log2(4), 2u);
  EXPECT_EQ(ceil_log2(5), 3u);
}

TEST(RationalText, ParseAndFormat) {
  EXPECT_EQ(to_fraction_string(make_rational(2, 4)), "1/2");
  EXPECT_EQ(to_fraction_string(make_rational(3)), "3/1");
  EXPECT_EQ(parse_rational("6/8"), make_rational(3, 4));
  EXPECT_EQ(parse_rational("0.25"), make_rational(1, 4));
  EXPECT_EQ(parse_rational("-2"), make_rational(-2));
  EXPECT_THROW(parse_rational("1/0"), RipError);
  EXPECT_THROW(parse_rational("abc"), RipError);
  EXPECT_EQ(to_decimal_string(make_rational(1, 3), 5), "0.33333");
}

TEST(InputInvariant, RejectsEmpty) {
  EXPECT_EQ(error_kind([] { Input x(BitString{}); }), ErrorKind::kInvalidArgument);
  Input x = Input::from_string("101");
  EXPECT_EQ(x.n(), 3u);
}

TEST(Execute, CertificatePaysOneOnSatisfiableFormula) {
  // (x1 or x2) and (not x1): the only satisfying assignments have x1 = 0, x2 = 1.
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  Input phi1 = formula_input("phi1.cnf");
  Execution run = execute(spec, phi1, BitString{}, send("101"));
  EXPECT_EQ(run.payment, 1);
  EXPECT_TRUE(run.transcript.answer_bit);
  EXPECT_EQ(execute(spec, phi1, BitString{}, send("110")).payment, 0);
}

TEST(Execute, AnswerZeroPaysHalf) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  for (const auto& f : testing::formula_suite()) {
    Input x = formula_input(f.file);
    std::size_t bits = checked_shape(spec, x).message_bits[0][0];
    Message m = BitString::zeros(bits);
    Execution run = execute(spec, x, BitString{}, StrategyProfile::constant(1, 1, {{m}}));
    EXPECT_EQ(run.payment, make_rational(1, 2)) << f.file;
    // c = 0 ends the protocol after a single read.
    EXPECT_EQ(run.transcript.access_trace.size(), 1u);
  }
}

TEST(Execute, Deterministic) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::noisy_sat_checker(4));
  Input phi2 = formula_input("phi2.cnf");
  StrategyProfile zeros = send("00");
  RandomTape r = BitString::from_string("0110");
  Execution a = execute(spec, phi2, r, zeros);
  Execution b = execute(spec, phi2, r, zeros);
  EXPECT_EQ(a, b);
}

TEST(Execute, AccessTraceInReadOrderWithoutRepeats) {
  ProtocolSpec spec;
  spec.name = "rereader";
  spec.shape = [](const Input&) {
    return ProtocolShape{{{3}}, 0, 3, 3, 3};
  };
  spec.verifier = [](VerifierSession& s) {
    s.read({1, 0, 2});
    s.read({1, 0, 0});
    s.read({1, 0, 2});
    return Rational(0);
  };
  Execution run = execute(spec, Input::from_string("1"), BitString{}, send("001"));
  ASSERT_EQ(run.transcript.access_trace.size(), 2u);
  EXPECT_EQ(run.transcript.access_trace[0], (Position{1, 0, 2}));
  EXPECT_EQ(run.transcript.access_trace[1], (Position{1, 0, 0}));
}

TEST(Execute, ReadsOfFutureRoundsAreViolations) {
  ProtocolSpec spec = testing::three_round_echo();
  spec.verifier = [](VerifierSession& s) {
    s.read({3, 0, 0});
    return Rational(0);
  };
  StrategyProfile s(1, 2);
  s.set_rule(0, 0, [](const History&) { return BitString{1}; });
  s.set_rule(0, 1, [](const History&) { return BitString{1}; });
  EXPECT_EQ(error_kind([&] { execute(spec, Input::from_string("1"), BitString{0}, s); }),
            ErrorKind::kProtocolViolation);
}

TEST(Execute, MalformedStrategyOnReachableHistory) {
  ProtocolSpec spec = testing::three_round_echo();
  StrategyProfile s(1, 2);
  s.set(0, 0, {}, BitString{1});
  s.set(0, 1, {BitString{0}}, BitString{0});
  Input x = Input::from_string("1");
  EXPECT_EQ(execute(spec, x, BitString{0}, s).payment, 1);
  EXPECT_EQ(error_kind([&] { execute(spec, x, BitString{1}, s); }), ErrorKind::kMalformedStrategy);
}

TEST(Execute, WrongLengthMessageIsMalformed) {
  ProtocolSpec spec = constant_payment(0, 2);
  EXPECT_EQ(error_kind([&] { execute(spec, Input::from_string("1"), BitString{}, send("1")); }),
            ErrorKind::kMalformedStrategy);
}

TEST(Execute, CommunicationOverBudget) {
  ProtocolSpec spec = constant_payment(0, 3);
  auto inner = spec.shape;
  spec.shape = [inner](const Input& x) {
    ProtocolShape s = inner(x);
    s.communication_budget = 2;
    return s;
  };
  EXPECT_EQ(error_kind([&] { execute(spec, Input::from_string("1"), BitString{}, send("000")); }),
            ErrorKind::kBudgetExceeded);
}

TEST(Execute, TapeLengthMustMatch) {
  ProtocolSpec spec = constant_payment(0, 1, 2);
  EXPECT_EQ(error_kind([&] { execute(spec, Input::from_string("1"), BitString{1}, send("0")); }),
            ErrorKind::kInvalidArgument);
}

TEST(Execute, PaymentRangeEnforced) {
  EXPECT_EQ(error_kind([] {
              execute(constant_payment(2), Input::from_string("1"), BitString{}, send("0"));
            }),
            ErrorKind::kProtocolViolation);
  ProtocolSpec negative = constant_payment(-1);
  negative.normalized = true;
  EXPECT_EQ(error_kind([&] { execute(negative, Input::from_string("1"), BitString{}, send("0")); }),
            ErrorKind::kNotNormalized);
  ProtocolSpec half = constant_payment(make_rational(1, 2));
  half.zero_one = true;
  EXPECT_EQ(error_kind([&] { execute(half, Input::from_string("1"), BitString{}, send("0")); }),
            ErrorKind::kNonBinaryPayment);
}

TEST(ExpectedPayment, TapeIndependentPaymentEqualsSingleRun) {
  ProtocolSpec spec = constant_payment(make_rational(2, 7), 1, 3);
  Input x = Input::from_string("1");
  Rational single = execute(spec, x, BitString::from_string("101"), send("1")).payment;
  EXPECT_EQ(expected_payment(spec, x, send("1")), single);
}

TEST(ExpectedPayment, UnsatisfiableWithClaimOneIsZero) {
  // x1 and not x1 has no satisfying assignment, so both certificates fail.
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  Input phi2 = formula_input("phi2.cnf");
  EXPECT_EQ(expected_payment(spec, phi2, send("10")), 0);
  EXPECT_EQ(expected_payment(spec, phi2, send("11")), 0);
}

TEST(ExpectedPayment, SumOverTapesDividedByCount) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::noisy_sat_checker(4));
  Input phi2 = formula_input("phi2.cnf");
  StrategyProfile s = send("11");
  Rational sum = 0;
  for_each_tape(4, {}, [&](const RandomTape& r) { sum += execute(spec, phi2, r, s).payment; });
  Rational expected = sum / 16;
  expected.canonicalize();
  EXPECT_EQ(expected_payment(spec, phi2, s), expected);
  // floor(16/3) = 5 accepting noise values out of 16.
  EXPECT_EQ(expected, make_rational(5, 16));
  EXPECT_EQ(mpz_class(expected.get_den()) % 2, 0);
}

TEST(ExpectedPayment, RandomnessCap) {
  ProtocolSpec spec = constant_payment(0, 1, 12);
  EnumerationCaps caps{1 << 20, 1 << 10};
  EXPECT_EQ(error_kind([&] { expected_payment(spec, Input::from_string("1"), send("0"), caps); }),
            ErrorKind::kRandomnessCapExceeded);
}

TEST(Normalize, Endpoints) {
  Input x = Input::from_string("1");
  EXPECT_EQ(expected_payment(normalize_payments(constant_payment(-1)), x, send("0")), 0);
  EXPECT_EQ(expected_payment(normalize_payments(constant_payment(1)), x, send("0")), 1);
  ProtocolSpec n = normalize_payments(constant_payment(0));
  EXPECT_TRUE(n.normalized);
  EXPECT_EQ(n.metadata.at("normalize.affine"), "(R+1)/2");
}

TEST(Normalize, PreservesStrictOrder) {
  ProtocolSpec spec = zoo::build_oracle_query_rip(zoo::parity_machine(1), zoo::perfect_sat_checker());
  ProtocolSpec norm = normalize_payments(spec);
  Input x = zoo::encode_formula_tuple({testing::load_formula("phi1.cnf")});
  std::vector<std::string> messages = {"0000", "1000", "1101", "1110", "0101", "1011"};
  for (const auto& a : messages) {
    for (const auto& b : messages) {
      Rational ua = expected_payment(spec, x, send(a));
      Rational ub = expected_payment(spec, x, send(b));
      Rational na = expected_payment(norm, x, send(a));
      Rational nb = expected_payment(norm, x, send(b));
      EXPECT_EQ(ua < ub, na < nb);
      EXPECT_EQ(na, (ua + 1) / 2);
    }
  }
}

TEST(Audit, NpCommunicationIsOnePlusCertificate) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  AuditReport audit = resource_audit(spec, formula_input("sat_chain.cnf"));
  EXPECT_TRUE(audit.ok());
  EXPECT_EQ(audit.max_communication, 1u + 3u);
  EXPECT_EQ(audit.max_rounds_used, 1u);
  EXPECT_EQ(audit.runs, 16u);
}

TEST(Audit, FlagsUnderstatedBudget) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::noisy_sat_checker(4));
  auto inner = spec.shape;
  spec.shape = [inner](const Input& x) {
    ProtocolShape s = inner(x);
    s.communication_budget -= 1;
    s.randomness_bits += 1;
    return s;
  };
  AuditReport audit = resource_audit(spec, formula_input("phi2.cnf"));
  EXPECT_FALSE(audit.ok());
  ASSERT_EQ(audit.violations.size(), 1u);
  EXPECT_NE(audit.violations[0].find("communication"), std::string::npos);
}

TEST(Audit, FlagsReadsOverBound) {
  ProtocolSpec spec = constant_payment(0, 3);
  auto inner = spec.shape;
  spec.shape = [inner](const Input& x) {
    ProtocolShape s = inner(x);
    s.read_bound = 1;
    return s;
  };
  AuditReport audit = resource_audit(spec, Input::from_string("1"));
  EXPECT_FALSE(audit.ok());
  EXPECT_EQ(audit.max_reads, 3u);
}

TEST(ErrorText, KindPrefix) {
  RipError e(ErrorKind::kInvalidRip, "both bits");
  EXPECT_EQ(std::string(e.what()).rfind("InvalidRIP", 0), 0u);
  EXPECT_EQ(to_string(ErrorKind::kGapViolated), "GapViolated");
}

}  // namespace
}  // namespace ripsim
