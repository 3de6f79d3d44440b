#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim::harness {

struct ProtocolConfig {
  std::string kind = "np";  // np | oracle-parity | toy-threshold | communication-reduction
  std::string checker = "perfect";  // perfect | noisy
  std::size_t noise_bits = 4;
  std::size_t queries = 1;  // oracle-parity
  std::size_t length = 3;   // toy-threshold
  std::size_t threshold = 2;
  bool normalize = false;
  std::vector<ProtocolConfig> base;  // communication-reduction: exactly one entry

  bool operator==(const ProtocolConfig&) const = default;
};

struct InputConfig {
  std::string name;
  bool member = false;
  std::string formula;                // DIMACS path
  std::vector<std::string> formulas;  // DIMACS paths, tuple input
  std::string bits;                   // literal input bits

  bool operator==(const InputConfig&) const = default;
};

struct AmplifyConfig {
  std::optional<Rational> gamma_prime;
  std::optional<std::uint64_t> n;
  std::optional<Rational> completeness;  // overrides the extracted pair
  std::optional<Rational> soundness;

  bool operator==(const AmplifyConfig&) const = default;
};

struct ExperimentConfig {
  ProtocolConfig protocol;
  std::vector<InputConfig> inputs;
  std::vector<std::string> analyses;  // subset of gap, decide, transform, amplify
  std::optional<Rational> gap_gamma;
  std::optional<std::size_t> decide_intervals;
  std::optional<Rational> transform_gamma;
  AmplifyConfig amplify;
  EnumerationCaps caps;
  std::string output;
  std::uint64_t seed = 0;
  std::filesystem::path base_dir;  // relative paths resolve against this

  bool wants(const std::string& analysis) const;
};

// Throws RipError(kConfigInvalid) on any structural problem or missing file.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

// Documented defaults and keys, printed by --help.
std::string config_reference();

}  // namespace ripsim::harness
