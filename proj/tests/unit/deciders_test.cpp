#include <gtest/gtest.h>

#include <set>

#include "ripsim/analysis/payment_report.hpp"
#include "ripsim/core/error.hpp"
#include "ripsim/deciders/interval_decider.hpp"
#include "ripsim/zoo/protocols.hpp"
#include "toy_protocols.hpp"

namespace ripsim {
namespace {

using deciders::IntervalQuery;
using testing::formula_input;
using testing::load_formula;

// Interval index by exhaustive search over the N closed/half-open pieces.
std::size_t slow_interval(const Rational& u, std::size_t n) {
  for (std::size_t i = 1; i <= n; ++i) {
    Rational lo(static_cast<long>(i - 1), static_cast<long>(n));
    Rational hi(static_cast<long>(i), static_cast<long>(n));
    lo.canonicalize();
    hi.canonicalize();
    if (u >= lo && (u < hi || (i == n && u <= hi))) return i;
  }
  return 0;
}

std::vector<Input> tuples(std::size_t gamma) {
  const std::vector<std::vector<std::string>> pools = {
      {"phi1.cnf", "phi2.cnf", "sat_unit.cnf"},
      {"phi2.cnf", "phi2.cnf", "phi2.cnf"},
      {"sat_xor.cnf", "unsat_full.cnf", "sat_empty.cnf"},
      {"unsat_empty_clause.cnf", "sat_unit.cnf", "phi1.cnf"},
      {"sat_unit.cnf", "sat_unit.cnf", "unsat_empty_clause.cnf"},
  };
  std::vector<Input> out;
  for (const auto& pool : pools) {
    std::vector<zoo::Cnf> fs;
    for (std::size_t k = 0; k < gamma; ++k) fs.push_back(load_formula(pool[k]));
    out.push_back(zoo::encode_formula_tuple(fs));
  }
  return out;
}

TEST(Intervals, Partition) {
  EXPECT_EQ(deciders::interval_of(0, 4), 1u);
  EXPECT_EQ(deciders::interval_of(make_rational(1, 4), 4), 2u);
  EXPECT_EQ(deciders::interval_of(make_rational(1, 2), 4), 3u);
  EXPECT_EQ(deciders::interval_of(make_rational(3, 4), 4), 4u);
  EXPECT_EQ(deciders::interval_of(1, 4), 4u);
  EXPECT_EQ(deciders::interval_of(-1, 4), 0u);
  EXPECT_EQ(deciders::interval_of(make_rational(5, 4), 4), 0u);
  for (long num = 0; num <= 24; ++num) {
    Rational u = make_rational(num, 24);
    for (std::size_t n : {1, 2, 3, 4, 6, 7}) EXPECT_EQ(deciders::interval_of(u, n), slow_interval(u, n));
  }
}

TEST(StrategyOracle, NpExamples) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  Input phi1 = formula_input("phi1.cnf");
  Input phi2 = formula_input("phi2.cnf");
  EXPECT_TRUE(deciders::strategy_oracle(spec, phi1, {4, 0}, 4));
  EXPECT_TRUE(deciders::strategy_oracle(spec, phi1, {4, 1}, 4));
  // Nothing on phi2 pays more than 1/2.
  EXPECT_FALSE(deciders::strategy_oracle(spec, phi2, {4, 0}, 4));
  EXPECT_TRUE(deciders::strategy_oracle(spec, phi2, {3, 0}, 4));
  EXPECT_FALSE(deciders::strategy_oracle(spec, phi2, {3, 1}, 4));
  EXPECT_TRUE(deciders::strategy_oracle(spec, phi2, {1, 1}, 4));
}

TEST(StrategyOracle, RejectsBadQueries) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  Input phi1 = formula_input("phi1.cnf");
  EXPECT_THROW(deciders::strategy_oracle(spec, phi1, {0, 0}, 4), RipError);
  EXPECT_THROW(deciders::strategy_oracle(spec, phi1, {5, 0}, 4), RipError);
  EXPECT_THROW(deciders::strategy_oracle(spec, phi1, {1, 2}, 4), RipError);
}

TEST(IntervalDecider, NpExamples) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  EXPECT_TRUE(deciders::interval_decider(spec, formula_input("phi1.cnf"), 4));
  EXPECT_FALSE(deciders::interval_decider(spec, formula_input("phi2.cnf"), 4));
}

TEST(IntervalDecider, ParityExample) {
  ProtocolSpec spec = zoo::build_oracle_query_rip(zoo::parity_machine(2), zoo::perfect_sat_checker());
  Input x = zoo::encode_formula_tuple({load_formula("phi1.cnf"), load_formula("phi2.cnf")});
  deciders::IntervalOracle oracle(spec, x, 4);
  auto run = deciders::run_interval_decider(oracle);
  EXPECT_EQ(run.top_interval, 4u);
  EXPECT_TRUE(run.output);
  EXPECT_TRUE(run.homogeneous);
}

TEST(IntervalDecider, IssuesAllQueriesUpFront) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  deciders::IntervalOracle oracle(spec, formula_input("sat_chain.cnf"), 6);
  auto run = deciders::run_interval_decider(oracle);
  ASSERT_EQ(run.queries.size(), 12u);
  ASSERT_EQ(run.answers.size(), 12u);
  std::set<std::pair<std::size_t, int>> seen;
  for (std::size_t k = 0; k < run.queries.size(); ++k) {
    seen.insert({run.queries[k].index, run.queries[k].flavor});
    EXPECT_EQ(run.answers[k], oracle.answer(run.queries[k]));
  }
  EXPECT_EQ(seen.size(), 12u);
}

TEST(IntervalDecider, EmptyPartitionIsAnError) {
  analysis::PaymentReport report = analysis::summarize_payments({-1, -1}, {false, true});
  deciders::IntervalOracle oracle(report, 4);
  EXPECT_THROW(deciders::run_interval_decider(oracle), RipError);
}

// Checks the decider against the rational answer, and recomputes i* and its
// homogeneity straight from the payment table.
void expect_equivalent(const ProtocolSpec& spec, const Input& x, std::size_t n) {
  auto report = analysis::optimal_profiles(spec, x);
  ASSERT_FALSE(report.invalid_rip);
  deciders::IntervalOracle oracle(report, n);
  auto run = deciders::run_interval_decider(oracle);
  EXPECT_EQ(run.output, *report.answer_bit);

  std::size_t top = 0;
  for (const auto& u : report.payments) top = std::max(top, slow_interval(u, n));
  EXPECT_EQ(run.top_interval, top);
  std::set<bool> bits;
  for (std::size_t k = 0; k < report.payments.size(); ++k) {
    if (slow_interval(report.payments[k], n) == top) bits.insert(report.answer_bits[k]);
  }
  EXPECT_EQ(bits.size(), 1u);
  EXPECT_TRUE(run.homogeneous);
}

TEST(IntervalDecider, AgreesWithRationalAnswerOnNp) {
  ProtocolSpec spec = zoo::build_np_rip(zoo::perfect_sat_checker());
  for (const auto& f : testing::formula_suite()) {
    SCOPED_TRACE(f.file);
    expect_equivalent(spec, formula_input(f.file), 6);
  }
}

TEST(IntervalDecider, AgreesWithRationalAnswerOnParity) {
  for (std::size_t gamma : {1, 2, 3}) {
    ProtocolSpec spec =
        zoo::build_oracle_query_rip(zoo::parity_machine(gamma), zoo::perfect_sat_checker());
    for (const auto& x : tuples(gamma)) {
      SCOPED_TRACE(x.bits().to_string());
      expect_equivalent(spec, x, 4 * gamma);
    }
  }
}

}  // namespace
}  // namespace ripsim
