#include "ripsim/deciders/interval_decider.hpp"

#include <set>

#include "ripsim/core/error.hpp"

namespace ripsim::deciders {

std::size_t interval_of(const Rational& u, std::size_t intervals) {
  if (intervals == 0) throw RipError(ErrorKind::kInvalidArgument, "need at least one interval");
  if (u < 0 || u > 1) return 0;
  if (u == 1) return intervals;
  // floor(u * N) + 1, exact.
  Rational scaled = u * Rational(intervals);
  mpz_class index;
  mpz_fdiv_q(index.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return static_cast<std::size_t>(index.get_ui()) + 1;
}

IntervalOracle::IntervalOracle(const ProtocolSpec& spec, const Input& x, std::size_t intervals,
                               const EnumerationCaps& caps)
    : IntervalOracle(analysis::optimal_profiles(spec, x, caps), intervals) {}

IntervalOracle::IntervalOracle(analysis::PaymentReport report, std::size_t intervals)
    : report_(std::move(report)), intervals_(intervals) {
  if (intervals_ == 0) throw RipError(ErrorKind::kInvalidArgument, "need at least one interval");
}

bool IntervalOracle::answer(const IntervalQuery& q) const {
  if (q.index < 1 || q.index > intervals_ || (q.flavor != 0 && q.flavor != 1)) {
    throw RipError(ErrorKind::kInvalidArgument, "malformed interval query");
  }
  for (std::size_t k = 0; k < report_.payments.size(); ++k) {
    if (interval_of(report_.payments[k], intervals_) != q.index) continue;
    if (q.flavor == 0 || report_.answer_bits[k]) return true;
  }
  return false;
}

bool strategy_oracle(const ProtocolSpec& spec, const Input& x, const IntervalQuery& q,
                     std::size_t intervals, const EnumerationCaps& caps) {
  return IntervalOracle(spec, x, intervals, caps).answer(q);
}

DeciderRun run_interval_decider(const IntervalOracle& oracle) {
  DeciderRun run;
  const std::size_t n = oracle.intervals();
  for (std::size_t i = 1; i <= n; ++i) {
    run.queries.push_back({i, 0});
    run.queries.push_back({i, 1});
  }
  for (const auto& q : run.queries) run.answers.push_back(oracle.answer(q));

  for (std::size_t i = n; i >= 1; --i) {
    if (run.answers[2 * (i - 1)]) {
      run.top_interval = i;
      break;
    }
  }
  if (run.top_interval == 0) {
    throw RipError(ErrorKind::kInvalidArgument, "no profile payment lies in [0, 1]");
  }
  run.output = run.answers[2 * (run.top_interval - 1) + 1];

  const auto& report = oracle.report();
  std::set<bool> bits;
  for (std::size_t k = 0; k < report.payments.size(); ++k) {
    if (interval_of(report.payments[k], n) == run.top_interval) bits.insert(report.answer_bits[k]);
  }
  run.homogeneous = bits.size() == 1;
  return run;
}

bool interval_decider(const ProtocolSpec& spec, const Input& x, std::size_t intervals,
                      const EnumerationCaps& caps) {
  return run_interval_decider(IntervalOracle(spec, x, intervals, caps)).output;
}

}  // namespace ripsim::deciders
