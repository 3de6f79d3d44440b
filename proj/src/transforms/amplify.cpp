#include "ripsim/transforms/amplify.hpp"

#include <mpfr.h>

#include <string>

#include "ripsim/core/error.hpp"
#include "ripsim/core/execution.hpp"

namespace ripsim::transforms {
namespace {

constexpr mpfr_prec_t kPrecision = 256;

void check_parameters(const Rational& c, const Rational& gamma_prime, std::uint64_t n) {
  if (gamma_prime <= 1) throw RipError(ErrorKind::kInvalidArgument, "gamma' must exceed 1");
  if (c <= 0 || c > 1) throw RipError(ErrorKind::kInvalidArgument, "c must lie in (0, 1]");
  if (n < 2) throw RipError(ErrorKind::kInvalidArgument, "n must be at least 2");
}

}  // namespace

std::uint64_t repetition_count(const Rational& c, const Rational& gamma_prime, std::uint64_t n) {
  check_parameters(c, gamma_prime, n);
  mpfr_t value;
  mpfr_t factor;
  mpfr_init2(value, kPrecision);
  mpfr_init2(factor, kPrecision);
  mpfr_set_ui(value, n, MPFR_RNDN);
  mpfr_log(value, value, MPFR_RNDN);
  Rational scale = 96 * gamma_prime * gamma_prime / c;
  mpfr_set_q(factor, scale.get_mpq_t(), MPFR_RNDN);
  mpfr_mul(value, value, factor, MPFR_RNDN);
  mpz_class rho;
  mpfr_get_z(rho.get_mpz_t(), value, MPFR_RNDU);
  mpfr_clear(value);
  mpfr_clear(factor);
  if (!rho.fits_ulong_p()) throw RipError(ErrorKind::kInvalidArgument, "repetition count overflows");
  return rho.get_ui();
}

Rational repetition_threshold(std::uint64_t rho, const Rational& c, const Rational& gamma_prime) {
  Rational tau = Rational(rho) * c * (1 - 1 / (4 * gamma_prime));
  tau.canonicalize();
  return tau;
}

AmplifiedProtocol amplify(const AcceptRejectProtocol& arp, const Rational& c,
                          const Rational& gamma_prime, std::uint64_t n) {
  check_parameters(c, gamma_prime, n);
  if (!arp.soundness) {
    throw RipError(ErrorKind::kInvalidArgument, "soundness must be extracted before amplifying");
  }
  const Rational& s = *arp.soundness;
  if (!(c > s + 1 / gamma_prime)) {
    throw RipError(ErrorKind::kGapViolated, "c = " + to_fraction_string(c) + " is not above s + 1/gamma' = " +
                                                to_fraction_string(s + 1 / gamma_prime));
  }
  AmplifiedProtocol amp;
  amp.base = arp;
  amp.rho = repetition_count(c, gamma_prime, n);
  amp.tau = repetition_threshold(amp.rho, c, gamma_prime);
  amp.completeness = c;
  amp.soundness = s;
  amp.gamma_prime = gamma_prime;
  amp.n = n;
  amp.base.spec.metadata["amplify.rho"] = std::to_string(amp.rho);
  amp.base.spec.metadata["amplify.tau"] = to_fraction_string(amp.tau);
  amp.base.spec.metadata["amplify.gamma_prime"] = to_fraction_string(gamma_prime);
  return amp;
}

AmplifiedProtocol make_amplified(const AcceptRejectProtocol& arp, std::uint64_t rho,
                                 const Rational& tau) {
  if (rho < 1 || tau <= 0 || tau >= Rational(rho)) {
    throw RipError(ErrorKind::kInvalidArgument, "need rho >= 1 and 0 < tau < rho");
  }
  AmplifiedProtocol amp;
  amp.base = arp;
  amp.rho = rho;
  amp.tau = tau;
  if (arp.completeness) amp.completeness = *arp.completeness;
  if (arp.soundness) amp.soundness = *arp.soundness;
  return amp;
}

Rational threshold_acceptance_prob(const Rational& probability, std::uint64_t rho,
                                   const Rational& tau) {
  Rational p = probability;
  p.canonicalize();
  if (p < 0 || p > 1) throw RipError(ErrorKind::kInvalidArgument, "p must lie in [0, 1]");
  mpz_class floor_tau;
  mpz_fdiv_q(floor_tau.get_mpz_t(), tau.get_num_mpz_t(), tau.get_den_mpz_t());
  mpz_class first = floor_tau + 1;
  if (first < 0) first = 0;
  if (first > mpz_class(rho)) return 0;
  const std::uint64_t k_min = first.get_ui();
  if (p == 0) return k_min == 0 ? 1 : 0;
  if (p == 1) return 1;

  const mpz_class a = p.get_num();
  const mpz_class b = p.get_den();
  const mpz_class rest = b - a;
  // term = C(rho, k) a^k (b - a)^(rho - k); the tail is their sum over b^rho.
  mpz_class term;
  mpz_bin_uiui(term.get_mpz_t(), rho, k_min);
  mpz_class power;
  mpz_pow_ui(power.get_mpz_t(), a.get_mpz_t(), k_min);
  term *= power;
  mpz_pow_ui(power.get_mpz_t(), rest.get_mpz_t(), rho - k_min);
  term *= power;
  mpz_class sum = term;
  for (std::uint64_t k = k_min; k < rho; ++k) {
    term *= a * (rho - k);
    mpz_class divisor = rest * (k + 1);
    mpz_divexact(term.get_mpz_t(), term.get_mpz_t(), divisor.get_mpz_t());
    sum += term;
  }
  mpz_class denominator;
  mpz_pow_ui(denominator.get_mpz_t(), b.get_mpz_t(), rho);
  Rational tail(sum, denominator);
  tail.canonicalize();
  return tail;
}

bool run_amplified(const AmplifiedProtocol& amp, const Input& x, const RandomTape& tape,
                   const StrategyProfile& s) {
  const std::size_t segment = checked_shape(amp.base.spec, x).randomness_bits;
  if (tape.size() != segment * amp.rho) {
    throw RipError(ErrorKind::kInvalidArgument, "amplified tape must hold rho segments");
  }
  std::uint64_t accepted = 0;
  for (std::uint64_t t = 0; t < amp.rho; ++t) {
    if (accepts(amp.base, x, tape.slice(t * segment, segment), s)) ++accepted;
  }
  return Rational(accepted) > amp.tau;
}

Rational executed_acceptance_probability(const AmplifiedProtocol& amp, const Input& x,
                                         const StrategyProfile& s, const EnumerationCaps& caps) {
  const std::size_t bits = checked_shape(amp.base.spec, x).randomness_bits * amp.rho;
  std::uint64_t accepted = 0;
  for_each_tape(bits, caps, [&](const RandomTape& tape) {
    if (run_amplified(amp, x, tape, s)) ++accepted;
  });
  Rational p(accepted, tape_count(bits, caps));
  p.canonicalize();
  return p;
}

AmplificationCertificate certify(const AmplifiedProtocol& amp) {
  AmplificationCertificate cert;
  cert.rho = amp.rho;
  cert.tau = amp.tau;
  cert.n = amp.n;
  cert.completeness_tail = threshold_acceptance_prob(amp.completeness, amp.rho, amp.tau);
  cert.soundness_tail = threshold_acceptance_prob(amp.soundness, amp.rho, amp.tau);
  Rational inverse_n(1, amp.n == 0 ? 1 : amp.n);
  inverse_n.canonicalize();
  cert.completeness_ok = amp.n >= 1 && cert.completeness_tail >= 1 - inverse_n;
  cert.soundness_ok = amp.n >= 1 && cert.soundness_tail <= inverse_n;
  return cert;
}

}  // namespace ripsim::transforms
