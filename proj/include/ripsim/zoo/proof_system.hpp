#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim::zoo {

// A one-round accept/reject proof system used as the inner checker of the
// rational protocols. Only its completeness/soundness pair enters the
// analysis.
struct ClassicalProofSystem {
  std::string name;
  std::function<bool(const Input&)> member;
  std::function<std::size_t(const Input&)> message_bits;
  std::function<std::size_t(const Input&)> randomness_bits;
  // Decides on `instance` with the prover message starting at `message_start`
  // in the session's transcript. Coins come from the session tape.
  std::function<bool(VerifierSession&, const Input& instance, const Position& message_start)>
      accepts;
  Rational completeness;
  Rational soundness;
};

// Certificate = satisfying assignment; no randomness. (c0, s0) = (1, 0).
ClassicalProofSystem perfect_sat_checker();

// Accepts satisfying assignments always, and any other assignment when the
// next `noise_bits` coins encode a value below floor(2^noise_bits / 3).
// Declared (c0, s0) = (1, 1/3); the actual false-accept rate is
// floor(2^b / 3) / 2^b, e.g. 5/16 for b = 4.
ClassicalProofSystem noisy_sat_checker(std::size_t noise_bits = 4);

struct ProofSystemCheck {
  // For members: best acceptance probability over messages (must be >= c0).
  // For nonmembers: worst case over messages (must be <= s0).
  std::vector<Rational> best_acceptance;
  bool ok = true;
};

// Verifies the declared parameters by enumerating messages and tapes.
ProofSystemCheck verify_proof_system(const ClassicalProofSystem& cps,
                                     const std::vector<Input>& instances);

// Exact acceptance probability of one message.
Rational acceptance_probability(const ClassicalProofSystem& cps, const Input& instance,
                                const Message& message);

}  // namespace ripsim::zoo
