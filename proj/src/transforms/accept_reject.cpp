#include "ripsim/transforms/accept_reject.hpp"

#include "ripsim/analysis/payment_report.hpp"
#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"

namespace ripsim::transforms {

AcceptRejectProtocol to_accept_reject(const ProtocolSpec& spec) {
  if (!spec.zero_one) {
    throw RipError(ErrorKind::kNonBinaryPayment,
                   "'" + spec.name + "' is not a zero-one protocol; round its payments first");
  }
  return AcceptRejectProtocol{spec, std::nullopt, std::nullopt};
}

bool accepts(const AcceptRejectProtocol& arp, const Input& x, const RandomTape& r,
             const StrategyProfile& s) {
  return execute(arp.spec, x, r, s).payment == 1;
}

Rational acceptance_probability(const AcceptRejectProtocol& arp, const Input& x,
                                const StrategyProfile& s, const EnumerationCaps& caps) {
  std::size_t bits = checked_shape(arp.spec, x).randomness_bits;
  std::uint64_t accepted = 0;
  for_each_tape(bits, caps, [&](const RandomTape& r) {
    if (accepts(arp, x, r, s)) ++accepted;
  });
  Rational p(accepted, tape_count(bits, caps));
  p.canonicalize();
  return p;
}

GapConditionReport gap_condition_from_optima(const std::vector<Rational>& member_optima,
                                             const std::vector<Rational>& nonmember_optima,
                                             const Rational& gamma) {
  if (gamma <= 0) throw RipError(ErrorKind::kInvalidArgument, "gamma must be positive");
  GapConditionReport report;
  report.gamma = gamma;
  for (const auto& u : member_optima) {
    if (!report.min_member || u < *report.min_member) report.min_member = u;
  }
  for (const auto& u : nonmember_optima) {
    if (!report.max_nonmember || u > *report.max_nonmember) report.max_nonmember = u;
  }
  report.vacuous = member_optima.empty() || nonmember_optima.empty();
  report.holds = report.vacuous || *report.min_member > *report.max_nonmember + 1 / gamma;
  return report;
}

GapConditionReport check_gap_condition(const ProtocolSpec& spec, const std::vector<Input>& members,
                                       const std::vector<Input>& nonmembers, const Rational& gamma,
                                       const EnumerationCaps& caps) {
  auto optima = [&](const std::vector<Input>& inputs) {
    std::vector<Rational> out;
    for (const auto& x : inputs) out.push_back(analysis::optimal_profiles(spec, x, caps).optimum);
    return out;
  };
  return gap_condition_from_optima(optima(members), optima(nonmembers), gamma);
}

CompletenessSoundness extract_completeness_soundness(
    AcceptRejectProtocol& arp, const std::vector<Input>& members,
    const std::vector<Input>& nonmembers, const std::optional<Rational>& pre_rounding_gamma,
    const EnumerationCaps& caps) {
  if (members.empty() || nonmembers.empty()) {
    throw RipError(ErrorKind::kInvalidArgument,
                   "completeness and soundness need at least one member and one nonmember");
  }
  GapConditionReport optima = check_gap_condition(arp.spec, members, nonmembers, 1, caps);
  CompletenessSoundness cs{*optima.min_member, *optima.max_nonmember};
  arp.completeness = cs.completeness;
  arp.soundness = cs.soundness;
  if (cs.completeness <= cs.soundness) {
    throw RipError(ErrorKind::kGapViolated, "completeness " + to_fraction_string(cs.completeness) +
                                                " does not exceed soundness " +
                                                to_fraction_string(cs.soundness));
  }
  if (pre_rounding_gamma) {
    Rational margin = 1 / (2 * *pre_rounding_gamma);
    if (!(cs.completeness > cs.soundness + margin)) {
      throw RipError(ErrorKind::kGapViolated,
                     "completeness " + to_fraction_string(cs.completeness) + " is not above " +
                         to_fraction_string(cs.soundness) + " + " + to_fraction_string(margin));
    }
  }
  return cs;
}

}  // namespace ripsim::transforms
