#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ripsim {

// Exact rational number. All payments and expectations use this type.
using Rational = mpq_class;

Rational make_rational(long numerator, long denominator = 1);

// Canonical "p/q" form (q >= 1, always present).
std::string to_fraction_string(const Rational& value);

// Accepts "p/q", "p", or a finite decimal such as "0.25".
Rational parse_rational(std::string_view text);

// Scientific rendering with the given number of significant digits.
std::string to_decimal_string(const Rational& value, int significant_digits = 12);

}  // namespace ripsim
