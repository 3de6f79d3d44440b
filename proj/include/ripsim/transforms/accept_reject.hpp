#pragma once

#include <optional>
#include <vector>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim::transforms {

// Accept/reject view of a zero-one protocol: accept iff the payment is 1. The
// answer bit is ignored.
struct AcceptRejectProtocol {
  ProtocolSpec spec;
  std::optional<Rational> completeness;
  std::optional<Rational> soundness;
};

// Throws kNonBinaryPayment unless the spec is flagged zero-one.
AcceptRejectProtocol to_accept_reject(const ProtocolSpec& spec);

bool accepts(const AcceptRejectProtocol& arp, const Input& x, const RandomTape& r,
             const StrategyProfile& s);

// Fraction of tapes on which the run accepts, counted directly.
Rational acceptance_probability(const AcceptRejectProtocol& arp, const Input& x,
                                const StrategyProfile& s, const EnumerationCaps& caps = {});

struct GapConditionReport {
  Rational gamma;
  std::optional<Rational> min_member;     // min over members of u*
  std::optional<Rational> max_nonmember;  // max over nonmembers of u*
  bool holds = false;
  bool vacuous = false;  // one of the sets was empty
};

// min_member > max_nonmember + 1/gamma, strictly. Vacuously true when either
// set is empty.
GapConditionReport check_gap_condition(const ProtocolSpec& spec, const std::vector<Input>& members,
                                       const std::vector<Input>& nonmembers, const Rational& gamma,
                                       const EnumerationCaps& caps = {});

// Same test from precomputed optima.
GapConditionReport gap_condition_from_optima(const std::vector<Rational>& member_optima,
                                             const std::vector<Rational>& nonmember_optima,
                                             const Rational& gamma);

struct CompletenessSoundness {
  Rational completeness;
  Rational soundness;
};

// c = min over members of the optimal acceptance probability, s = max over
// nonmembers and all profiles. Throws kGapViolated when c <= s, or when
// `pre_rounding_gamma` is given and c <= s + 1/(2 gamma). Both sets must be
// non-empty. Stores the pair in `arp`.
CompletenessSoundness extract_completeness_soundness(
    AcceptRejectProtocol& arp, const std::vector<Input>& members,
    const std::vector<Input>& nonmembers,
    const std::optional<Rational>& pre_rounding_gamma = std::nullopt,
    const EnumerationCaps& caps = {});

}  // namespace ripsim::transforms
