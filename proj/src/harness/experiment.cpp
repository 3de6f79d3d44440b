#include "ripsim/harness/experiment.hpp"

#include <ctime>
#include <fstream>
#include <map>

#include "ripsim/analysis/payment_report.hpp"
#include "ripsim/core/execution.hpp"
#include "ripsim/deciders/interval_decider.hpp"
#include "ripsim/transforms/accept_reject.hpp"
#include "ripsim/transforms/amplify.hpp"
#include "ripsim/transforms/zero_one.hpp"
#include "ripsim/zoo/cnf.hpp"
#include "ripsim/zoo/communication_reduction.hpp"
#include "ripsim/zoo/protocols.hpp"

namespace ripsim::harness {
namespace {

zoo::ClassicalProofSystem checker_for(const ProtocolConfig& p) {
  return p.checker == "noisy" ? zoo::noisy_sat_checker(p.noise_bits) : zoo::perfect_sat_checker();
}

const ProtocolConfig& innermost(const ProtocolConfig& p) {
  return p.base.empty() ? p : innermost(p.base.front());
}

std::filesystem::path resolve(const ExperimentConfig& config, const std::string& file) {
  std::filesystem::path path(file);
  return path.is_relative() ? config.base_dir / path : path;
}

std::string timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

std::vector<Input> select(const std::vector<LabeledInput>& inputs, bool member) {
  std::vector<Input> out;
  for (const auto& in : inputs) {
    if (in.member == member) out.push_back(in.input);
  }
  return out;
}

Rational ceil_rational(const Rational& value) {
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(c);
}

void write_output(const ExperimentConfig& config, const Report& report, bool csv) {
  if (config.output.empty()) return;
  std::ofstream out(config.output);
  if (!out) throw RipError(ErrorKind::kConfigInvalid, "cannot write " + config.output);
  if (csv) {
    out << gap_csv(report);
  } else {
    out << to_json(report).dump(2) << '\n';
  }
}

void check_label(ValidationSummary& summary, const LabeledInput& in,
                 const analysis::PaymentReport& report) {
  if (report.invalid_rip) {
    summary.failures.push_back({in.name, "INVALID-RIP: optimal profiles carry both answer bits"});
  } else if (*report.answer_bit != in.member) {
    summary.failures.push_back(
        {in.name, std::string("rational answer ") + (*report.answer_bit ? "1" : "0") +
                      " contradicts label " + (in.member ? "member" : "nonmember")});
  }
}

}  // namespace

ProtocolSpec build_protocol(const ProtocolConfig& p) {
  ProtocolSpec spec;
  if (p.kind == "np") {
    spec = zoo::build_np_rip(checker_for(p));
  } else if (p.kind == "oracle-parity") {
    spec = zoo::build_oracle_query_rip(zoo::parity_machine(p.queries), checker_for(p));
  } else if (p.kind == "toy-threshold") {
    spec = zoo::build_toy_constant_comm(zoo::threshold_language(p.length, p.threshold));
  } else if (p.kind == "communication-reduction") {
    if (p.base.size() != 1) {
      throw RipError(ErrorKind::kConfigInvalid, "communication-reduction needs one base");
    }
    spec = zoo::build_communication_reduction(build_protocol(p.base.front()));
  } else {
    throw RipError(ErrorKind::kConfigInvalid, "unknown protocol kind '" + p.kind + "'");
  }
  return p.normalize ? normalize_payments(spec) : spec;
}

std::vector<LabeledInput> load_inputs(const ExperimentConfig& config) {
  const ProtocolConfig& leaf = innermost(config.protocol);
  std::vector<LabeledInput> out;
  for (const auto& in : config.inputs) {
    if (!in.bits.empty()) {
      out.push_back({in.name, Input::from_string(in.bits), in.member});
    } else if (!in.formula.empty()) {
      out.push_back({in.name, zoo::encode_formula(zoo::load_dimacs(resolve(config, in.formula))),
                     in.member});
    } else {
      std::vector<zoo::Cnf> formulas;
      for (const auto& f : in.formulas) formulas.push_back(zoo::load_dimacs(resolve(config, f)));
      if (leaf.kind == "oracle-parity" && formulas.size() != leaf.queries) {
        throw RipError(ErrorKind::kConfigInvalid,
                       in.name + " holds " + std::to_string(formulas.size()) +
                           " formulas; protocol.queries is " + std::to_string(leaf.queries));
      }
      out.push_back({in.name, zoo::encode_formula_tuple(formulas), in.member});
    }
  }
  return out;
}

ValidationSummary validate_rip(const ProtocolSpec& spec, const std::vector<LabeledInput>& inputs,
                               const EnumerationCaps& caps) {
  ValidationSummary summary;
  summary.vacuous = inputs.empty();
  for (const auto& in : inputs) {
    check_label(summary, in, analysis::optimal_profiles(spec, in.input, caps));
  }
  summary.pass = summary.failures.empty();
  return summary;
}

ValidationSummary validate_rip(const ExperimentConfig& config) {
  return validate_rip(build_protocol(config.protocol), load_inputs(config), config.caps);
}

Report run_experiment(const ExperimentConfig& config, Command command, bool csv) {
  auto enabled = [&](const std::string& stage) {
    switch (command) {
      case Command::kRun: return config.wants(stage);
      case Command::kGap: return stage == "gap";
      case Command::kDecide: return stage == "decide";
      case Command::kTransform: return stage == "transform";
      case Command::kAmplify: return stage == "amplify";
      case Command::kValidate: return false;
    }
    return false;
  };

  Report report;
  report.generated_at = timestamp();
  report.config = config_to_json(config);

  // build
  ProtocolSpec spec = build_protocol(config.protocol);
  std::vector<LabeledInput> inputs = load_inputs(config);
  report.protocol = spec.name;
  report.metadata = spec.metadata;

  // audit
  for (const auto& in : inputs) {
    AuditReport audit = resource_audit(spec, in.input, config.caps);
    AuditRow row{in.name,
                 audit.ok(),
                 audit.runs,
                 audit.max_communication,
                 audit.declared.communication_budget,
                 audit.max_rounds_used,
                 audit.declared_rounds,
                 audit.max_random_bits,
                 audit.declared.randomness_bits,
                 audit.max_reads,
                 audit.violations};
    report.audit_ok = report.audit_ok && row.ok;
    report.audit.push_back(std::move(row));
  }
  if (!report.audit_ok) {
    report.error = "resource audit flagged a budget violation; later stages skipped";
    write_output(config, report, csv);
    return report;
  }

  std::map<std::string, analysis::PaymentReport> optima;
  for (const auto& in : inputs) {
    analysis::PaymentReport pr = analysis::optimal_profiles(spec, in.input, config.caps);
    report.inputs.push_back({in.name, in.member, in.input.bits().to_string(), pr.profile_count(),
                             pr.optimum, pr.argmax.size(), pr.invalid_rip, pr.answer_bit,
                             pr.best_opposing, pr.utility_gap});
    optima.emplace(in.name, std::move(pr));
  }
  auto optima_of = [&](bool member) {
    std::vector<Rational> out;
    for (const auto& in : inputs) {
      if (in.member == member) out.push_back(optima.at(in.name).optimum);
    }
    return out;
  };

  if (command == Command::kValidate) {
    ValidationSummary v;
    v.vacuous = inputs.empty();
    for (const auto& in : inputs) check_label(v, in, optima.at(in.name));
    v.pass = v.failures.empty();
    report.validation = v;
  }

  // gap
  if (enabled("gap")) {
    if (!config.gap_gamma) throw RipError(ErrorKind::kConfigInvalid, "gap analysis needs gap.gamma");
    GapTable table;
    table.gamma = *config.gap_gamma;
    table.holds = true;
    for (const auto& in : inputs) {
      const auto& pr = optima.at(in.name);
      if (pr.invalid_rip) {
        throw RipError(ErrorKind::kInvalidRip, in.name + ": optimal profiles carry both answer bits");
      }
      GapRow row{in.name, pr.utility_gap, analysis::gap_exceeds(pr.utility_gap, table.gamma)};
      table.holds = table.holds && row.passes;
      table.rows.push_back(std::move(row));
    }
    transforms::GapConditionReport condition =
        transforms::gap_condition_from_optima(optima_of(true), optima_of(false), table.gamma);
    table.min_member = condition.min_member;
    table.max_nonmember = condition.max_nonmember;
    table.condition_holds = condition.holds;
    table.condition_vacuous = condition.vacuous;
    report.gap = std::move(table);
  }

  // decide
  if (enabled("decide")) {
    std::size_t intervals = 0;
    if (config.decide_intervals) {
      intervals = *config.decide_intervals;
    } else if (config.gap_gamma) {
      intervals = ceil_rational(2 * *config.gap_gamma).get_num().get_ui();
    } else {
      throw RipError(ErrorKind::kConfigInvalid, "decide needs decide.intervals or gap.gamma");
    }
    DeciderTable table;
    table.intervals = intervals;
    for (const auto& in : inputs) {
      const auto& pr = optima.at(in.name);
      deciders::DeciderRun run = deciders::run_interval_decider(deciders::IntervalOracle(pr, intervals));
      DeciderRow row{in.name, run.top_interval, run.output, pr.answer_bit, false, run.homogeneous};
      row.agrees = row.rational_answer && *row.rational_answer == row.output;
      table.all_agree = table.all_agree && row.agrees && row.homogeneous;
      table.rows.push_back(std::move(row));
    }
    report.decide = std::move(table);
  }

  // transform
  std::optional<transforms::AcceptRejectProtocol> arp;
  Rational transform_gamma;
  if (enabled("transform") || enabled("amplify")) {
    if (config.transform_gamma) {
      transform_gamma = *config.transform_gamma;
    } else if (config.gap_gamma) {
      transform_gamma = *config.gap_gamma;
    } else {
      throw RipError(ErrorKind::kConfigInvalid, "transform needs transform.gamma or gap.gamma");
    }
  }
  bool have_override = config.amplify.completeness.has_value();
  if (enabled("transform") || (enabled("amplify") && !have_override)) {
    ProtocolSpec rounded = transforms::round_payments_zero_one(spec, transform_gamma);
    arp = transforms::to_accept_reject(rounded);
    bool pre_condition =
        transforms::gap_condition_from_optima(optima_of(true), optima_of(false), transform_gamma)
            .holds;
    std::optional<Rational> pre_gamma;
    if (pre_condition) pre_gamma = transform_gamma;
    transforms::CompletenessSoundness cs = transforms::extract_completeness_soundness(
        *arp, select(inputs, true), select(inputs, false), pre_gamma, config.caps);
    TransformSummary t;
    t.gamma = transform_gamma;
    for (const auto& [key, value] : rounded.metadata) {
      if (key.starts_with("zero_one.") || key.starts_with("normalize.")) t.provenance[key] = value;
    }
    t.completeness = cs.completeness;
    t.soundness = cs.soundness;
    t.rounding_margin = 1 / (2 * transform_gamma);
    t.margin_holds = cs.completeness > cs.soundness + t.rounding_margin;
    report.transform = std::move(t);
  }

  // amplify
  if (enabled("amplify")) {
    Rational c = have_override ? *config.amplify.completeness : arp->completeness.value();
    Rational s = have_override ? *config.amplify.soundness : arp->soundness.value();
    Rational gamma_prime =
        config.amplify.gamma_prime ? *config.amplify.gamma_prime : 2 * transform_gamma;
    std::uint64_t n = 0;
    if (config.amplify.n) {
      n = *config.amplify.n;
    } else {
      for (const auto& in : inputs) n = std::max<std::uint64_t>(n, in.input.n());
    }
    transforms::AcceptRejectProtocol base = arp ? *arp : transforms::AcceptRejectProtocol{};
    base.completeness = c;
    base.soundness = s;
    transforms::AmplifiedProtocol amp = transforms::amplify(base, c, gamma_prime, n);
    transforms::AmplificationCertificate cert = transforms::certify(amp);
    report.amplify = AmplificationSummary{c,
                                          s,
                                          gamma_prime,
                                          n,
                                          cert.rho,
                                          cert.tau,
                                          cert.completeness_tail,
                                          cert.soundness_tail,
                                          cert.completeness_ok,
                                          cert.soundness_ok};
  }

  write_output(config, report, csv);
  return report;
}

bool report_failed(const Report& report) {
  if (!report.audit_ok) return true;
  for (const auto& s : report.inputs) {
    if (s.invalid_rip) return true;
  }
  if (report.validation && !report.validation->pass) return true;
  if (report.decide && !report.decide->all_agree) return true;
  if (report.amplify && !(report.amplify->completeness_ok && report.amplify->soundness_ok)) {
    return true;
  }
  return false;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kConfigInvalid:
    case ErrorKind::kInvalidArgument:
      return 2;
    case ErrorKind::kStrategyCapExceeded:
    case ErrorKind::kRandomnessCapExceeded:
      return 3;
    default:
      return 1;
  }
}

std::string exit_code_reference() {
  return R"(Exit codes:
  0  success
  1  analysis failure (INVALID-RIP, failed validation, audit violation, decider
     disagreement, GapViolated, NotNormalized, other protocol errors)
  2  config error (ConfigInvalid, InvalidArgument, missing formula file)
  3  enumeration cap exceeded (StrategyCapExceeded, RandomnessCapExceeded)
)";
}

}  // namespace ripsim::harness
