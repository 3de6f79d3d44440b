#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ripsim/analysis/profiles.hpp"
#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim::analysis {

// Exact payoff landscape of one (spec, input) pair over deterministic
// profiles. Mixed strategies are not considered.
struct PaymentReport {
  std::vector<Rational> payments;  // indexed by canonical profile index
  std::vector<bool> answer_bits;
  Rational optimum;                  // u*
  std::vector<std::uint64_t> argmax;  // ascending
  bool invalid_rip = false;           // argmax profiles disagree on the answer bit
  std::optional<bool> answer_bit;     // set iff !invalid_rip
  // Best payment among profiles whose answer bit differs from the argmax's.
  std::optional<Rational> best_opposing;
  // u* - best_opposing; unset when no opposing profile exists or invalid_rip.
  std::optional<Rational> utility_gap;

  std::uint64_t profile_count() const { return payments.size(); }
};

// Builds the report from per-profile payments: MAX over profiles, with ties
// kept as a set.
PaymentReport summarize_payments(std::vector<Rational> payments, std::vector<bool> answer_bits);

// Expected payment of every profile in canonical order (SUM over tapes each).
std::vector<Rational> profile_payments(const ProtocolSpec& spec, const Input& x,
                                       const ProfileSpace& space, const EnumerationCaps& caps = {});

PaymentReport optimal_profiles(const ProtocolSpec& spec, const Input& x,
                               const EnumerationCaps& caps = {});

// Common answer bit of all optimal profiles. Throws kInvalidRip.
bool rational_answer(const ProtocolSpec& spec, const Input& x, const EnumerationCaps& caps = {});

// Unset means undefined: no profile carries the opposite bit. Throws kInvalidRip.
std::optional<Rational> utility_gap(const ProtocolSpec& spec, const Input& x,
                                    const EnumerationCaps& caps = {});

struct GapEntry {
  Input input;
  std::optional<Rational> gap;
  bool passes = false;
};

struct GammaGapReport {
  Rational gamma;
  std::vector<GapEntry> entries;
  bool holds = true;
};

// gap > 1/gamma strictly, or gap undefined.
bool gap_exceeds(const std::optional<Rational>& gap, const Rational& gamma);

// True iff every input has gap > 1/gamma (strictly) or an undefined gap.
GammaGapReport has_gamma_gap(const ProtocolSpec& spec, const std::vector<Input>& inputs,
                             const Rational& gamma, const EnumerationCaps& caps = {});

}  // namespace ripsim::analysis
