#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ripsim/core/error.hpp"
#include "ripsim/core/protocol.hpp"
#include "ripsim/harness/config.hpp"
#include "ripsim/harness/report.hpp"

namespace ripsim::harness {

struct LabeledInput {
  std::string name;
  Input input;
  bool member = false;
};

ProtocolSpec build_protocol(const ProtocolConfig& config);
std::vector<LabeledInput> load_inputs(const ExperimentConfig& config);

// Pass iff rational_answer matches every label and no input is INVALID-RIP.
ValidationSummary validate_rip(const ProtocolSpec& spec, const std::vector<LabeledInput>& inputs,
                               const EnumerationCaps& caps = {});
ValidationSummary validate_rip(const ExperimentConfig& config);

enum class Command { kRun, kGap, kDecide, kTransform, kAmplify, kValidate };

// build -> audit -> gap -> decide -> transform -> amplify; stops after the
// audit if it flags a violation. Writes the report when config.output is set
// (JSON, or the gap table when `csv`).
Report run_experiment(const ExperimentConfig& config, Command command = Command::kRun,
                      bool csv = false);

// True when the report records an analysis failure (exit code 1).
bool report_failed(const Report& report);

// 2 for config errors, 3 for cap overruns, 1 otherwise.
int exit_code(ErrorKind kind);

std::string exit_code_reference();

}  // namespace ripsim::harness
