#include "ripsim/analysis/payment_report.hpp"

#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"

namespace ripsim::analysis {

PaymentReport summarize_payments(std::vector<Rational> payments, std::vector<bool> answer_bits) {
  if (payments.empty() || payments.size() != answer_bits.size()) {
    throw RipError(ErrorKind::kInvalidArgument, "payment and answer-bit tables must be non-empty "
                                                "and of equal length");
  }
  PaymentReport report;
  report.payments = std::move(payments);
  report.answer_bits = std::move(answer_bits);

  report.optimum = report.payments.front();
  for (const auto& u : report.payments) {
    if (u > report.optimum) report.optimum = u;
  }
  bool seen[2] = {false, false};
  for (std::uint64_t k = 0; k < report.payments.size(); ++k) {
    if (report.payments[k] == report.optimum) {
      report.argmax.push_back(k);
      seen[report.answer_bits[k] ? 1 : 0] = true;
    }
  }
  report.invalid_rip = seen[0] && seen[1];
  if (report.invalid_rip) return report;

  bool bit = seen[1];
  report.answer_bit = bit;
  for (std::uint64_t k = 0; k < report.payments.size(); ++k) {
    if (report.answer_bits[k] == bit) continue;
    if (!report.best_opposing || report.payments[k] > *report.best_opposing) {
      report.best_opposing = report.payments[k];
    }
  }
  if (report.best_opposing) {
    Rational gap = report.optimum - *report.best_opposing;
    gap.canonicalize();
    report.utility_gap = gap;
  }
  return report;
}

std::vector<Rational> profile_payments(const ProtocolSpec& spec, const Input& x,
                                       const ProfileSpace& space, const EnumerationCaps& caps) {
  std::vector<Rational> payments;
  payments.reserve(space.size());
  for (std::uint64_t k = 0; k < space.size(); ++k) {
    payments.push_back(expected_payment(spec, x, space.profile(k), caps));
  }
  return payments;
}

PaymentReport optimal_profiles(const ProtocolSpec& spec, const Input& x,
                               const EnumerationCaps& caps) {
  ProfileSpace space = profile_space(spec, x, caps);
  std::vector<bool> bits;
  bits.reserve(space.size());
  for (std::uint64_t k = 0; k < space.size(); ++k) bits.push_back(space.profile(k).answer_bit());
  return summarize_payments(profile_payments(spec, x, space, caps), std::move(bits));
}

bool rational_answer(const ProtocolSpec& spec, const Input& x, const EnumerationCaps& caps) {
  PaymentReport report = optimal_profiles(spec, x, caps);
  if (report.invalid_rip) {
    throw RipError(ErrorKind::kInvalidRip, "optimal profiles of '" + spec.name + "' on input " +
                                               x.bits().to_string() +
                                               " carry both answer bits");
  }
  return *report.answer_bit;
}

std::optional<Rational> utility_gap(const ProtocolSpec& spec, const Input& x,
                                    const EnumerationCaps& caps) {
  PaymentReport report = optimal_profiles(spec, x, caps);
  if (report.invalid_rip) {
    throw RipError(ErrorKind::kInvalidRip, "optimal profiles of '" + spec.name + "' on input " +
                                               x.bits().to_string() +
                                               " carry both answer bits");
  }
  return report.utility_gap;
}

bool gap_exceeds(const std::optional<Rational>& gap, const Rational& gamma) {
  if (gamma <= 0) throw RipError(ErrorKind::kInvalidArgument, "gamma must be positive");
  return !gap || *gap > 1 / gamma;
}

GammaGapReport has_gamma_gap(const ProtocolSpec& spec, const std::vector<Input>& inputs,
                             const Rational& gamma, const EnumerationCaps& caps) {
  if (gamma <= 0) throw RipError(ErrorKind::kInvalidArgument, "gamma must be positive");
  GammaGapReport report{gamma, {}, true};
  for (const auto& x : inputs) {
    GapEntry entry{x, utility_gap(spec, x, caps), false};
    entry.passes = gap_exceeds(entry.gap, gamma);
    report.holds = report.holds && entry.passes;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace ripsim::analysis
