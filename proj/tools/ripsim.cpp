// ripsim: configuration-driven experiments on rational interactive proofs.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "ripsim/core/error.hpp"
#include "ripsim/harness/config.hpp"
#include "ripsim/harness/experiment.hpp"

namespace {

using ripsim::harness::Command;

void print_summary(const ripsim::harness::Report& report) {
  std::cout << "protocol " << report.protocol << '\n';
  std::cout << "audit " << (report.audit_ok ? "ok" : "FAILED") << '\n';
  for (const auto& s : report.inputs) {
    std::cout << "  " << s.input << ": u* = " << ripsim::to_fraction_string(s.optimum);
    if (s.invalid_rip) {
      std::cout << "  INVALID-RIP";
    } else {
      std::cout << "  answer " << (*s.answer_bit ? 1 : 0) << "  gap "
                << (s.utility_gap ? ripsim::to_fraction_string(*s.utility_gap) : "undefined");
    }
    std::cout << '\n';
  }
  if (report.gap) {
    std::cout << "gamma-gap (gamma " << ripsim::to_fraction_string(report.gap->gamma) << "): "
              << (report.gap->holds ? "holds" : "fails") << "; gap condition "
              << (report.gap->condition_holds ? "holds" : "fails")
              << (report.gap->condition_vacuous ? " (vacuous)" : "") << '\n';
  }
  if (report.decide) {
    std::cout << "decider (N = " << report.decide->intervals << "): "
              << (report.decide->all_agree ? "agrees" : "DISAGREES") << '\n';
  }
  if (report.transform) {
    std::cout << "zero-one: c = " << ripsim::to_fraction_string(report.transform->completeness)
              << ", s = " << ripsim::to_fraction_string(report.transform->soundness) << '\n';
  }
  if (report.amplify) {
    std::cout << "amplify: rho = " << report.amplify->rho
              << ", tau = " << ripsim::to_fraction_string(report.amplify->tau)
              << ", completeness " << (report.amplify->completeness_ok ? "ok" : "FAILS")
              << ", soundness " << (report.amplify->soundness_ok ? "ok" : "FAILS") << '\n';
  }
  if (report.validation) {
    std::cout << "validate: " << (report.validation->pass ? "pass" : "FAIL")
              << (report.validation->vacuous ? " (vacuous)" : "") << '\n';
    for (const auto& f : report.validation->failures) {
      std::cout << "  " << f.input << ": " << f.reason << '\n';
    }
  }
  if (report.error) std::cout << "error: " << *report.error << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulation of rational interactive proofs"};
  app.footer(ripsim::harness::config_reference() + "\n" + ripsim::harness::exit_code_reference());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::uint64_t caps = 0;
  std::uint64_t seed = 0;
  std::string format = "json";

  const std::map<std::string, Command> commands = {
      {"run", Command::kRun},           {"gap", Command::kGap},
      {"decide", Command::kDecide},     {"transform", Command::kTransform},
      {"amplify", Command::kAmplify},   {"validate", Command::kValidate}};
  const std::map<std::string, std::string> help = {
      {"run", "run every analysis listed in the config"},
      {"gap", "utility gap per input and the member/nonmember gap condition"},
      {"decide", "interval decider versus rational answer"},
      {"transform", "zero-one rounding and completeness/soundness extraction"},
      {"amplify", "threshold repetition parameters and binomial-tail certificate"},
      {"validate", "check rational answers against member/nonmember labels"}};

  for (const auto& [name, command] : commands) {
    CLI::App* sub = app.add_subcommand(name, help.at(name));
    sub->add_option("--config", config_path, "experiment config (YAML)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "report path (overrides config output)");
    sub->add_option("--caps", caps, "cap for both profiles and tapes (default 1048576)");
    sub->add_option("--seed", seed, "seed recorded in the report (default 0)");
    sub->add_option("--format", format, "report format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Command command = Command::kRun;
  for (const auto& [name, c] : commands) {
    if (app.got_subcommand(name)) command = c;
  }

  try {
    ripsim::harness::ExperimentConfig config = ripsim::harness::load_config(config_path);
    if (!out_path.empty()) config.output = out_path;
    if (caps > 0) config.caps = {caps, caps};
    if (app.get_subcommands().front()->count("--seed") > 0) config.seed = seed;
    ripsim::harness::Report report =
        ripsim::harness::run_experiment(config, command, format == "csv");
    print_summary(report);
    return ripsim::harness::report_failed(report) ? 1 : 0;
  } catch (const ripsim::RipError& e) {
    std::cerr << "ripsim: " << e.what() << '\n';
    return ripsim::harness::exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "ripsim: " << e.what() << '\n';
    return 1;
  }
}
