#pragma once

#include <cstddef>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim::transforms {

// Number of extra tape bits, 1 + ceil(log2 gamma), clamped at 0.
std::size_t rounding_bits(const Rational& gamma);

// Pays 1 iff r' <= ceil(G * R), r' uniform on {1..G} read from the extra tape
// bits (plus one) after the base coins; G = 2^rounding_bits(gamma). For every
// profile u <= u' <= u + 1/(2 gamma).
ProtocolSpec round_payments_zero_one(const ProtocolSpec& spec, const Rational& gamma);

}  // namespace ripsim::transforms
