#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ripsim/core/rational.hpp"
#include "ripsim/harness/config.hpp"

namespace ripsim::harness {

inline constexpr const char* kToolVersion = "0.1.0";

struct AuditRow {
  std::string input;
  bool ok = true;
  std::uint64_t runs = 0;
  std::uint64_t max_communication = 0;
  std::uint64_t communication_budget = 0;
  std::uint64_t max_rounds_used = 0;
  std::uint64_t round_count = 0;
  std::uint64_t max_random_bits = 0;
  std::uint64_t randomness_bits = 0;
  std::uint64_t max_reads = 0;
  std::vector<std::string> violations;

  bool operator==(const AuditRow&) const = default;
};

struct InputSummary {
  std::string input;
  bool member = false;
  std::string bits;
  std::uint64_t profiles = 0;
  Rational optimum;
  std::uint64_t argmax_count = 0;
  bool invalid_rip = false;
  std::optional<bool> answer_bit;
  std::optional<Rational> best_opposing;
  std::optional<Rational> utility_gap;  // unset: undefined

  bool operator==(const InputSummary&) const = default;
};

struct GapRow {
  std::string input;
  std::optional<Rational> utility_gap;
  bool passes = false;

  bool operator==(const GapRow&) const = default;
};

struct GapTable {
  Rational gamma;
  bool holds = false;
  std::vector<GapRow> rows;
  std::optional<Rational> min_member;
  std::optional<Rational> max_nonmember;
  bool condition_holds = false;
  bool condition_vacuous = false;

  bool operator==(const GapTable&) const = default;
};

struct DeciderRow {
  std::string input;
  std::uint64_t top_interval = 0;
  bool output = false;
  std::optional<bool> rational_answer;  // unset on INVALID-RIP
  bool agrees = false;
  bool homogeneous = false;

  bool operator==(const DeciderRow&) const = default;
};

struct DeciderTable {
  std::uint64_t intervals = 0;
  bool all_agree = true;
  std::vector<DeciderRow> rows;

  bool operator==(const DeciderTable&) const = default;
};

struct TransformSummary {
  Rational gamma;
  std::map<std::string, std::string> provenance;
  Rational completeness;
  Rational soundness;
  Rational rounding_margin;  // 1/(2 gamma)
  bool margin_holds = false;  // c > s + 1/(2 gamma)

  bool operator==(const TransformSummary&) const = default;
};

struct AmplificationSummary {
  Rational completeness;
  Rational soundness;
  Rational gamma_prime;
  std::uint64_t n = 0;
  std::uint64_t rho = 0;
  Rational tau;
  Rational completeness_tail;
  Rational soundness_tail;
  bool completeness_ok = false;
  bool soundness_ok = false;

  bool operator==(const AmplificationSummary&) const = default;
};

struct ValidationFailure {
  std::string input;
  std::string reason;

  bool operator==(const ValidationFailure&) const = default;
};

struct ValidationSummary {
  bool pass = true;
  bool vacuous = false;
  std::vector<ValidationFailure> failures;

  bool operator==(const ValidationSummary&) const = default;
};

struct Report {
  std::string tool_version = kToolVersion;
  std::string generated_at;
  nlohmann::json config;
  std::string protocol;
  std::map<std::string, std::string> metadata;
  std::string strategy_note = "deterministic profiles only";
  std::vector<AuditRow> audit;
  bool audit_ok = true;
  std::vector<InputSummary> inputs;
  std::optional<GapTable> gap;
  std::optional<DeciderTable> decide;
  std::optional<TransformSummary> transform;
  std::optional<AmplificationSummary> amplify;
  std::optional<ValidationSummary> validation;
  std::optional<std::string> error;

  bool operator==(const Report&) const = default;
};

nlohmann::json rational_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Report& report);
Report report_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const ExperimentConfig& config);

// input,label,optimum,best_opposing,utility_gap,passes
std::string gap_csv(const Report& report);

}  // namespace ripsim::harness
