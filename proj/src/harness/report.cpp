#include "ripsim/harness/report.hpp"

#include <sstream>

#include "ripsim/core/error.hpp"

namespace ripsim::harness {

using nlohmann::json;

namespace {

template <typename T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

json optional_rational(const std::optional<Rational>& value) {
  return value ? rational_json(*value) : json(nullptr);
}

std::optional<Rational> read_optional_rational(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rational_from_json(j);
}

template <typename T>
std::optional<T> read_optional(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

json audit_json(const AuditRow& a) {
  return {{"input", a.input},
          {"ok", a.ok},
          {"runs", a.runs},
          {"max_communication", a.max_communication},
          {"communication_budget", a.communication_budget},
          {"max_rounds_used", a.max_rounds_used},
          {"round_count", a.round_count},
          {"max_random_bits", a.max_random_bits},
          {"randomness_bits", a.randomness_bits},
          {"max_reads", a.max_reads},
          {"violations", a.violations}};
}

AuditRow audit_from(const json& j) {
  AuditRow a;
  a.input = j.at("input");
  a.ok = j.at("ok");
  a.runs = j.at("runs");
  a.max_communication = j.at("max_communication");
  a.communication_budget = j.at("communication_budget");
  a.max_rounds_used = j.at("max_rounds_used");
  a.round_count = j.at("round_count");
  a.max_random_bits = j.at("max_random_bits");
  a.randomness_bits = j.at("randomness_bits");
  a.max_reads = j.at("max_reads");
  a.violations = j.at("violations").get<std::vector<std::string>>();
  return a;
}

json input_json(const InputSummary& s) {
  return {{"input", s.input},
          {"label", s.member ? "member" : "nonmember"},
          {"bits", s.bits},
          {"profiles", s.profiles},
          {"optimum", rational_json(s.optimum)},
          {"argmax_count", s.argmax_count},
          {"invalid_rip", s.invalid_rip},
          {"answer_bit", optional_json(s.answer_bit)},
          {"best_opposing", optional_rational(s.best_opposing)},
          {"utility_gap", optional_rational(s.utility_gap)}};
}

InputSummary input_from(const json& j) {
  InputSummary s;
  s.input = j.at("input");
  s.member = j.at("label") == "member";
  s.bits = j.at("bits");
  s.profiles = j.at("profiles");
  s.optimum = rational_from_json(j.at("optimum"));
  s.argmax_count = j.at("argmax_count");
  s.invalid_rip = j.at("invalid_rip");
  s.answer_bit = read_optional<bool>(j.at("answer_bit"));
  s.best_opposing = read_optional_rational(j.at("best_opposing"));
  s.utility_gap = read_optional_rational(j.at("utility_gap"));
  return s;
}

json gap_json(const GapTable& g) {
  json rows = json::array();
  for (const auto& r : g.rows) {
    rows.push_back({{"input", r.input},
                    {"utility_gap", optional_rational(r.utility_gap)},
                    {"passes", r.passes}});
  }
  return {{"gamma", rational_json(g.gamma)},
          {"holds", g.holds},
          {"rows", rows},
          {"min_member", optional_rational(g.min_member)},
          {"max_nonmember", optional_rational(g.max_nonmember)},
          {"condition_holds", g.condition_holds},
          {"condition_vacuous", g.condition_vacuous}};
}

GapTable gap_from(const json& j) {
  GapTable g;
  g.gamma = rational_from_json(j.at("gamma"));
  g.holds = j.at("holds");
  for (const auto& r : j.at("rows")) {
    g.rows.push_back({r.at("input"), read_optional_rational(r.at("utility_gap")), r.at("passes")});
  }
  g.min_member = read_optional_rational(j.at("min_member"));
  g.max_nonmember = read_optional_rational(j.at("max_nonmember"));
  g.condition_holds = j.at("condition_holds");
  g.condition_vacuous = j.at("condition_vacuous");
  return g;
}

json decide_json(const DeciderTable& d) {
  json rows = json::array();
  for (const auto& r : d.rows) {
    rows.push_back({{"input", r.input},
                    {"top_interval", r.top_interval},
                    {"output", r.output},
                    {"rational_answer", optional_json(r.rational_answer)},
                    {"agrees", r.agrees},
                    {"homogeneous", r.homogeneous}});
  }
  return {{"intervals", d.intervals}, {"all_agree", d.all_agree}, {"rows", rows}};
}

DeciderTable decide_from(const json& j) {
  DeciderTable d;
  d.intervals = j.at("intervals");
  d.all_agree = j.at("all_agree");
  for (const auto& r : j.at("rows")) {
    d.rows.push_back({r.at("input"), r.at("top_interval"), r.at("output"),
                      read_optional<bool>(r.at("rational_answer")), r.at("agrees"),
                      r.at("homogeneous")});
  }
  return d;
}

json transform_json(const TransformSummary& t) {
  return {{"gamma", rational_json(t.gamma)},
          {"provenance", t.provenance},
          {"completeness", rational_json(t.completeness)},
          {"soundness", rational_json(t.soundness)},
          {"rounding_margin", rational_json(t.rounding_margin)},
          {"margin_holds", t.margin_holds}};
}

TransformSummary transform_from(const json& j) {
  TransformSummary t;
  t.gamma = rational_from_json(j.at("gamma"));
  t.provenance = j.at("provenance").get<std::map<std::string, std::string>>();
  t.completeness = rational_from_json(j.at("completeness"));
  t.soundness = rational_from_json(j.at("soundness"));
  t.rounding_margin = rational_from_json(j.at("rounding_margin"));
  t.margin_holds = j.at("margin_holds");
  return t;
}

json amplify_json(const AmplificationSummary& a) {
  return {{"completeness", rational_json(a.completeness)},
          {"soundness", rational_json(a.soundness)},
          {"gamma_prime", rational_json(a.gamma_prime)},
          {"n", a.n},
          {"rho", a.rho},
          {"tau", rational_json(a.tau)},
          {"completeness_tail", rational_json(a.completeness_tail)},
          {"soundness_tail", rational_json(a.soundness_tail)},
          {"completeness_ok", a.completeness_ok},
          {"soundness_ok", a.soundness_ok}};
}

AmplificationSummary amplify_from(const json& j) {
  AmplificationSummary a;
  a.completeness = rational_from_json(j.at("completeness"));
  a.soundness = rational_from_json(j.at("soundness"));
  a.gamma_prime = rational_from_json(j.at("gamma_prime"));
  a.n = j.at("n");
  a.rho = j.at("rho");
  a.tau = rational_from_json(j.at("tau"));
  a.completeness_tail = rational_from_json(j.at("completeness_tail"));
  a.soundness_tail = rational_from_json(j.at("soundness_tail"));
  a.completeness_ok = j.at("completeness_ok");
  a.soundness_ok = j.at("soundness_ok");
  return a;
}

json validation_json(const ValidationSummary& v) {
  json failures = json::array();
  for (const auto& f : v.failures) failures.push_back({{"input", f.input}, {"reason", f.reason}});
  return {{"pass", v.pass}, {"vacuous", v.vacuous}, {"failures", failures}};
}

ValidationSummary validation_from(const json& j) {
  ValidationSummary v;
  v.pass = j.at("pass");
  v.vacuous = j.at("vacuous");
  for (const auto& f : j.at("failures")) v.failures.push_back({f.at("input"), f.at("reason")});
  return v;
}

json protocol_config_json(const ProtocolConfig& p) {
  json j = {{"kind", p.kind},
            {"checker", p.checker},
            {"noise_bits", p.noise_bits},
            {"queries", p.queries},
            {"length", p.length},
            {"threshold", p.threshold},
            {"normalize", p.normalize}};
  if (!p.base.empty()) j["base"] = protocol_config_json(p.base.front());
  return j;
}

std::string csv_rational(const std::optional<Rational>& value) {
  return value ? to_fraction_string(*value) : "undefined";
}

}  // namespace

json rational_json(const Rational& value) {
  return {{"exact", to_fraction_string(value)}, {"decimal", to_decimal_string(value)}};
}

Rational rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("exact") || !j.at("exact").is_string()) {
    throw RipError(ErrorKind::kInvalidArgument, "rational field lacks an exact form");
  }
  return parse_rational(j.at("exact").get<std::string>());
}

json to_json(const Report& r) {
  json audit = json::array();
  for (const auto& a : r.audit) audit.push_back(audit_json(a));
  json inputs = json::array();
  for (const auto& s : r.inputs) inputs.push_back(input_json(s));
  return {{"tool_version", r.tool_version},
          {"generated_at", r.generated_at},
          {"config", r.config},
          {"protocol", r.protocol},
          {"metadata", r.metadata},
          {"strategy_note", r.strategy_note},
          {"audit", audit},
          {"audit_ok", r.audit_ok},
          {"inputs", inputs},
          {"gap", r.gap ? gap_json(*r.gap) : json(nullptr)},
          {"decide", r.decide ? decide_json(*r.decide) : json(nullptr)},
          {"transform", r.transform ? transform_json(*r.transform) : json(nullptr)},
          {"amplify", r.amplify ? amplify_json(*r.amplify) : json(nullptr)},
          {"validation", r.validation ? validation_json(*r.validation) : json(nullptr)},
          {"error", optional_json(r.error)}};
}

Report report_from_json(const json& j) {
  Report r;
  r.tool_version = j.at("tool_version");
  r.generated_at = j.at("generated_at");
  r.config = j.at("config");
  r.protocol = j.at("protocol");
  r.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
  r.strategy_note = j.at("strategy_note");
  for (const auto& a : j.at("audit")) r.audit.push_back(audit_from(a));
  r.audit_ok = j.at("audit_ok");
  for (const auto& s : j.at("inputs")) r.inputs.push_back(input_from(s));
  if (!j.at("gap").is_null()) r.gap = gap_from(j.at("gap"));
  if (!j.at("decide").is_null()) r.decide = decide_from(j.at("decide"));
  if (!j.at("transform").is_null()) r.transform = transform_from(j.at("transform"));
  if (!j.at("amplify").is_null()) r.amplify = amplify_from(j.at("amplify"));
  if (!j.at("validation").is_null()) r.validation = validation_from(j.at("validation"));
  r.error = read_optional<std::string>(j.at("error"));
  return r;
}

json config_to_json(const ExperimentConfig& c) {
  json inputs = json::array();
  for (const auto& in : c.inputs) {
    json e = {{"name", in.name}, {"label", in.member ? "member" : "nonmember"}};
    if (!in.formula.empty()) e["formula"] = in.formula;
    if (!in.formulas.empty()) e["formulas"] = in.formulas;
    if (!in.bits.empty()) e["bits"] = in.bits;
    inputs.push_back(e);
  }
  json amplify = json::object();
  if (c.amplify.gamma_prime) amplify["gamma_prime"] = to_fraction_string(*c.amplify.gamma_prime);
  if (c.amplify.n) amplify["n"] = *c.amplify.n;
  if (c.amplify.completeness) amplify["completeness"] = to_fraction_string(*c.amplify.completeness);
  if (c.amplify.soundness) amplify["soundness"] = to_fraction_string(*c.amplify.soundness);
  return {{"protocol", protocol_config_json(c.protocol)},
          {"inputs", inputs},
          {"analyses", c.analyses},
          {"gap_gamma", c.gap_gamma ? json(to_fraction_string(*c.gap_gamma)) : json(nullptr)},
          {"decide_intervals", optional_json(c.decide_intervals)},
          {"transform_gamma",
           c.transform_gamma ? json(to_fraction_string(*c.transform_gamma)) : json(nullptr)},
          {"amplify", amplify},
          {"caps", {{"profiles", c.caps.profiles}, {"tapes", c.caps.tapes}}},
          {"output", c.output},
          {"seed", c.seed}};
}

std::string gap_csv(const Report& report) {
  std::map<std::string, const GapRow*> rows;
  if (report.gap) {
    for (const auto& r : report.gap->rows) rows[r.input] = &r;
  }
  std::ostringstream out;
  out << "input,label,optimum,best_opposing,utility_gap,passes\n";
  for (const auto& s : report.inputs) {
    auto it = rows.find(s.input);
    out << s.input << ',' << (s.member ? "member" : "nonmember") << ','
        << to_fraction_string(s.optimum) << ',' << csv_rational(s.best_opposing) << ','
        << csv_rational(s.utility_gap) << ','
        << (it == rows.end() ? "" : (it->second->passes ? "true" : "false")) << '\n';
  }
  return out.str();
}

}  // namespace ripsim::harness
