#pragma once

#include <cstddef>
#include <cstdint>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"
#include "ripsim/transforms/accept_reject.hpp"

namespace ripsim::transforms {

// rho independent repetitions on fresh tape segments; accept iff more than tau
// of them accept.
struct AmplifiedProtocol {
  AcceptRejectProtocol base;
  std::uint64_t rho = 1;
  Rational tau;
  Rational completeness;
  Rational soundness;
  Rational gamma_prime;
  std::uint64_t n = 0;
};

// ceil(96 * ln(n) * gamma'^2 / c), evaluated with 256-bit MPFR.
std::uint64_t repetition_count(const Rational& c, const Rational& gamma_prime, std::uint64_t n);

// rho * c * (1 - 1/(4 gamma')), exact.
Rational repetition_threshold(std::uint64_t rho, const Rational& c, const Rational& gamma_prime);

// Requires gamma' > 1, c > 0, n >= 2 (kInvalidArgument) and c > s + 1/gamma'
// with s = arp.soundness (kGapViolated).
AmplifiedProtocol amplify(const AcceptRejectProtocol& arp, const Rational& c,
                          const Rational& gamma_prime, std::uint64_t n);

// Explicit (rho, tau) for execution spot checks. Requires 0 < tau < rho.
AmplifiedProtocol make_amplified(const AcceptRejectProtocol& arp, std::uint64_t rho,
                                 const Rational& tau);

// Pr(Binomial(rho, p) > tau), exact.
Rational threshold_acceptance_prob(const Rational& p, std::uint64_t rho, const Rational& tau);

// Runs the rho repetitions on consecutive segments of `tape`.
bool run_amplified(const AmplifiedProtocol& amp, const Input& x, const RandomTape& tape,
                   const StrategyProfile& s);

// Enumerates all rho * l_r tape bits. Spot checks only.
Rational executed_acceptance_probability(const AmplifiedProtocol& amp, const Input& x,
                                         const StrategyProfile& s,
                                         const EnumerationCaps& caps = {});

struct AmplificationCertificate {
  std::uint64_t rho = 0;
  Rational tau;
  std::uint64_t n = 0;
  Rational completeness_tail;  // Pr(X > tau), p = c
  Rational soundness_tail;     // Pr(X > tau), p = s
  bool completeness_ok = false;  // completeness_tail >= 1 - 1/n
  bool soundness_ok = false;     // soundness_tail <= 1/n
};

AmplificationCertificate certify(const AmplifiedProtocol& amp);

}  // namespace ripsim::transforms
