#include "ripsim/core/rational.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <vector>

#include "ripsim/core/error.hpp"

namespace ripsim {

Rational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw RipError(ErrorKind::kInvalidArgument, "zero denominator");
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw RipError(ErrorKind::kInvalidArgument, "empty rational literal");
  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw RipError(ErrorKind::kInvalidArgument, "bad rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t scale = s.size() - dot - 1;
    mpz_class num;
    if (digits.empty() || digits == "-" || num.set_str(digits, 10) != 0) {
      throw RipError(ErrorKind::kInvalidArgument, "bad rational: " + s);
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (q.set_str(s, 10) != 0) throw RipError(ErrorKind::kInvalidArgument, "bad rational: " + s);
  if (q.get_den() == 0) throw RipError(ErrorKind::kInvalidArgument, "zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_decimal_string(const Rational& value, int significant_digits) {
  mpfr_t x;
  mpfr_init2(x, 256);
  mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
  int n = mpfr_snprintf(nullptr, 0, "%.*Rg", significant_digits, x);
  std::vector<char> buf(static_cast<std::size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", significant_digits, x);
  mpfr_clear(x);
  return std::string(buf.data());
}

}  // namespace ripsim
