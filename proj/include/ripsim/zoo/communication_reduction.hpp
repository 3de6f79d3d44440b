#pragma once

#include <cstddef>

#include "ripsim/core/protocol.hpp"

namespace ripsim::zoo {

// Two-prover, five-round wrapper around a normalized base protocol.
//
//   round 1  P1' sends the base first-round message m1 of prover 0.
//   round 2  V' sends its base tape r to P1'.
//   round 3  P1' sends the bits the base verifier reads on r, in read order,
//            padded to the base read bound.
//   round 4  V' samples (j, i, k) and sends it to P2' together with the base
//            verifier's messages to prover i before prover round j.
//   round 5  P2' answers with one bit b.
//
// Payment: -1 when the replayed reads disagree with m1 or b disagrees with the
// recorded bit; R / (2 C) on agreement, R the base payment and C the base
// communication budget; 0 when (j, i, k) names a bit the base verifier never
// read (the run then ends after round 3).
ProtocolSpec build_communication_reduction(const ProtocolSpec& base);

// P1' and P2' answer as the base profile would: m1 and replayed reads from the
// base run on r, b from the base prover's message at the queried history.
StrategyProfile honest_reduction_profile(const ProtocolSpec& base, const Input& x,
                                         const StrategyProfile& base_profile);

}  // namespace ripsim::zoo
