#include "ripsim/transforms/zero_one.hpp"

#include <string>

#include "ripsim/core/error.hpp"

namespace ripsim::transforms {

std::size_t rounding_bits(const Rational& gamma) {
  if (gamma <= 0) throw RipError(ErrorKind::kInvalidArgument, "gamma must be positive");
  // ceil(log2 gamma) is the least integer t with 2^t >= gamma.
  long t = 0;
  Rational power = 1;
  if (gamma > 1) {
    while (power < gamma) {
      power *= 2;
      ++t;
    }
  } else {
    while (power / 2 >= gamma) {
      power /= 2;
      --t;
    }
  }
  long e = 1 + t;
  return e > 0 ? static_cast<std::size_t>(e) : 0;
}

ProtocolSpec round_payments_zero_one(const ProtocolSpec& spec, const Rational& gamma) {
  validate_spec(spec);
  if (!spec.normalized) {
    throw RipError(ErrorKind::kNotNormalized,
                   "zero-one rounding needs payments in [0, 1]; '" + spec.name + "' is not normalized");
  }
  const std::size_t extra = rounding_bits(gamma);
  const std::uint64_t grid = std::uint64_t{1} << extra;

  ProtocolSpec out = spec;
  out.name = spec.name + "+zero-one";
  out.normalized = true;
  out.zero_one = true;
  out.metadata["zero_one.gamma"] = to_fraction_string(gamma);
  out.metadata["zero_one.G"] = std::to_string(grid);
  out.metadata["zero_one.extra_bits"] = std::to_string(extra);
  out.metadata["zero_one.rule"] = "pay 1 iff r' <= ceil(G*R), r' = extra bits + 1";
  out.shape = [inner = spec.shape, extra](const Input& x) {
    ProtocolShape shape = inner(x);
    shape.randomness_bits += extra;
    return shape;
  };
  out.verifier = [base = spec, extra, grid](VerifierSession& session) {
    Rational raw = base.verifier(session);
    if (raw < 0 || raw > 1) {
      throw RipError(ErrorKind::kNotNormalized,
                     "base paid " + to_fraction_string(raw) + " outside [0, 1]");
    }
    const std::size_t base_bits = base.shape(session.input()).randomness_bits;
    while (session.coins_consumed() < base_bits) session.coin();
    std::uint64_t r_prime = session.coins(extra) + 1;
    Rational scaled = raw * Rational(grid);
    mpz_class ceiling;
    mpz_cdiv_q(ceiling.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    return Rational(mpz_class(r_prime) <= ceiling ? 1 : 0);
  };
  return out;
}

}  // namespace ripsim::transforms
