#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "ripsim/analysis/payment_report.hpp"
#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim::deciders {

// Query (i, flavor): is some profile's expected payment in interval i, and,
// for flavor 1, does such a profile also answer 1?
struct IntervalQuery {
  std::size_t index = 1;  // 1..N
  int flavor = 0;         // 0 or 1

  bool operator==(const IntervalQuery&) const = default;
};

// I_i = [(i-1)/N, i/N) for i < N and I_N = [(N-1)/N, 1]. Returns 0 when u lies
// outside [0, 1].
std::size_t interval_of(const Rational& u, std::size_t intervals);

// Answers queries from a precomputed table of profile payments.
class IntervalOracle {
 public:
  IntervalOracle(const ProtocolSpec& spec, const Input& x, std::size_t intervals,
                 const EnumerationCaps& caps = {});
  IntervalOracle(analysis::PaymentReport report, std::size_t intervals);

  bool answer(const IntervalQuery& q) const;
  std::size_t intervals() const { return intervals_; }
  const analysis::PaymentReport& report() const { return report_; }

 private:
  analysis::PaymentReport report_;
  std::size_t intervals_;
};

bool strategy_oracle(const ProtocolSpec& spec, const Input& x, const IntervalQuery& q,
                     std::size_t intervals, const EnumerationCaps& caps = {});

struct DeciderRun {
  std::vector<IntervalQuery> queries;  // all 2N, in issue order
  std::vector<bool> answers;
  std::size_t top_interval = 0;  // i*
  bool output = false;
  // All profiles with payment in I_{i*} carry the same answer bit.
  bool homogeneous = false;
};

// Issues every query first, then picks the highest non-empty interval i* and
// outputs the answer to (i*, 1). Throws kInvalidArgument if every interval is
// empty.
DeciderRun run_interval_decider(const IntervalOracle& oracle);

bool interval_decider(const ProtocolSpec& spec, const Input& x, std::size_t intervals,
                      const EnumerationCaps& caps = {});

}  // namespace ripsim::deciders
