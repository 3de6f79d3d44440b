#include "ripsim/harness/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "ripsim/core/error.hpp"

namespace ripsim::harness {
namespace {

RipError invalid(const std::string& what) { return RipError(ErrorKind::kConfigInvalid, what); }

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw invalid("key '" + key + "' has the wrong type");
  }
}

Rational rational_value(const YAML::Node& node, const std::string& key) {
  std::string text = scalar<std::string>(node, key);
  try {
    return parse_rational(text);
  } catch (const RipError&) {
    throw invalid("key '" + key + "' is not a rational number: " + text);
  }
}

void reject_unknown(const YAML::Node& node, const std::set<std::string>& known,
                    const std::string& where) {
  for (const auto& entry : node) {
    std::string key = entry.first.as<std::string>();
    if (!known.contains(key)) throw invalid("unknown key '" + key + "' in " + where);
  }
}

ProtocolConfig parse_protocol(const YAML::Node& node, const std::string& where) {
  if (!node.IsMap()) throw invalid(where + " must be a mapping");
  reject_unknown(node,
                 {"kind", "checker", "noise_bits", "queries", "length", "threshold", "normalize",
                  "base"},
                 where);
  ProtocolConfig p;
  if (node["kind"]) p.kind = scalar<std::string>(node["kind"], where + ".kind");
  if (node["checker"]) p.checker = scalar<std::string>(node["checker"], where + ".checker");
  if (node["noise_bits"]) p.noise_bits = scalar<std::size_t>(node["noise_bits"], where + ".noise_bits");
  if (node["queries"]) p.queries = scalar<std::size_t>(node["queries"], where + ".queries");
  if (node["length"]) p.length = scalar<std::size_t>(node["length"], where + ".length");
  if (node["threshold"]) p.threshold = scalar<std::size_t>(node["threshold"], where + ".threshold");
  if (node["normalize"]) p.normalize = scalar<bool>(node["normalize"], where + ".normalize");

  static const std::set<std::string> kinds = {"np", "oracle-parity", "toy-threshold",
                                              "communication-reduction"};
  if (!kinds.contains(p.kind)) throw invalid("unknown protocol kind '" + p.kind + "'");
  if (p.checker != "perfect" && p.checker != "noisy") {
    throw invalid("checker must be 'perfect' or 'noisy'");
  }
  if (p.kind == "communication-reduction") {
    if (!node["base"]) throw invalid(where + ": communication-reduction needs a base protocol");
    p.base.push_back(parse_protocol(node["base"], where + ".base"));
  } else if (node["base"]) {
    throw invalid(where + ": only communication-reduction takes a base");
  }
  return p;
}

std::string resolve(const std::filesystem::path& base_dir, const std::string& file) {
  std::filesystem::path path(file);
  if (path.is_relative()) path = base_dir / path;
  if (!std::filesystem::is_regular_file(path)) throw invalid("formula file not found: " + file);
  return file;
}

const ProtocolConfig& innermost(const ProtocolConfig& p) {
  return p.base.empty() ? p : innermost(p.base.front());
}

InputConfig parse_input(const YAML::Node& node, std::size_t index,
                        const std::filesystem::path& base_dir) {
  std::string where = "inputs[" + std::to_string(index) + "]";
  if (!node.IsMap()) throw invalid(where + " must be a mapping");
  reject_unknown(node, {"name", "label", "formula", "formulas", "bits"}, where);
  InputConfig in;
  in.name = node["name"] ? scalar<std::string>(node["name"], where + ".name") : where;
  if (!node["label"]) throw invalid(where + " has no member/nonmember label");
  std::string label = scalar<std::string>(node["label"], where + ".label");
  if (label != "member" && label != "nonmember") {
    throw invalid(where + ".label must be 'member' or 'nonmember'");
  }
  in.member = label == "member";
  int sources = 0;
  if (node["formula"]) {
    in.formula = resolve(base_dir, scalar<std::string>(node["formula"], where + ".formula"));
    ++sources;
  }
  if (node["formulas"]) {
    if (!node["formulas"].IsSequence()) throw invalid(where + ".formulas must be a list");
    for (const auto& f : node["formulas"]) {
      in.formulas.push_back(resolve(base_dir, scalar<std::string>(f, where + ".formulas")));
    }
    ++sources;
  }
  if (node["bits"]) {
    in.bits = scalar<std::string>(node["bits"], where + ".bits");
    if (in.bits.empty() || in.bits.find_first_not_of("01") != std::string::npos) {
      throw invalid(where + ".bits must be a non-empty 0/1 string");
    }
    ++sources;
  }
  if (sources != 1) throw invalid(where + " needs exactly one of formula, formulas, bits");
  return in;
}

}  // namespace

bool ExperimentConfig::wants(const std::string& analysis) const {
  return std::find(analyses.begin(), analyses.end(), analysis) != analyses.end();
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw invalid(std::string("config is not valid YAML: ") + e.what());
  }
  if (!root.IsMap()) throw invalid("config must be a mapping");
  reject_unknown(root,
                 {"protocol", "inputs", "analyses", "gap", "decide", "transform", "amplify",
                  "caps", "output", "seed"},
                 "config");

  ExperimentConfig cfg;
  cfg.base_dir = base_dir;
  if (!root["protocol"]) throw invalid("config has no protocol section");
  cfg.protocol = parse_protocol(root["protocol"], "protocol");

  if (root["inputs"]) {
    if (!root["inputs"].IsSequence()) throw invalid("inputs must be a list");
    std::size_t k = 0;
    std::set<std::string> names;
    for (const auto& node : root["inputs"]) {
      cfg.inputs.push_back(parse_input(node, k++, base_dir));
      if (!names.insert(cfg.inputs.back().name).second) {
        throw invalid("duplicate input name '" + cfg.inputs.back().name + "'");
      }
    }
  }
  const ProtocolConfig& leaf = innermost(cfg.protocol);
  for (const auto& in : cfg.inputs) {
    bool tuple = leaf.kind == "oracle-parity";
    bool cnf = leaf.kind == "np" || tuple;
    if (tuple && !in.formula.empty()) throw invalid(in.name + ": oracle-parity inputs use formulas");
    if (!tuple && !in.formulas.empty()) throw invalid(in.name + ": formulas is for oracle-parity");
    if (!cnf && in.bits.empty()) throw invalid(in.name + ": toy-threshold inputs use bits");
  }

  if (root["analyses"]) {
    if (!root["analyses"].IsSequence()) throw invalid("analyses must be a list");
    for (const auto& a : root["analyses"]) {
      std::string name = scalar<std::string>(a, "analyses");
      if (name != "gap" && name != "decide" && name != "transform" && name != "amplify") {
        throw invalid("unknown analysis '" + name + "'");
      }
      cfg.analyses.push_back(name);
    }
  }
  if (const auto& gap = root["gap"]) {
    reject_unknown(gap, {"gamma"}, "gap");
    if (gap["gamma"]) cfg.gap_gamma = rational_value(gap["gamma"], "gap.gamma");
  }
  if (const auto& decide = root["decide"]) {
    reject_unknown(decide, {"intervals"}, "decide");
    if (decide["intervals"]) {
      cfg.decide_intervals = scalar<std::size_t>(decide["intervals"], "decide.intervals");
    }
  }
  if (const auto& transform = root["transform"]) {
    reject_unknown(transform, {"gamma"}, "transform");
    if (transform["gamma"]) cfg.transform_gamma = rational_value(transform["gamma"], "transform.gamma");
  }
  if (const auto& amp = root["amplify"]) {
    reject_unknown(amp, {"gamma_prime", "n", "completeness", "soundness"}, "amplify");
    if (amp["gamma_prime"]) cfg.amplify.gamma_prime = rational_value(amp["gamma_prime"], "amplify.gamma_prime");
    if (amp["n"]) cfg.amplify.n = scalar<std::uint64_t>(amp["n"], "amplify.n");
    if (amp["completeness"]) cfg.amplify.completeness = rational_value(amp["completeness"], "amplify.completeness");
    if (amp["soundness"]) cfg.amplify.soundness = rational_value(amp["soundness"], "amplify.soundness");
    if (cfg.amplify.completeness.has_value() != cfg.amplify.soundness.has_value()) {
      throw invalid("amplify.completeness and amplify.soundness must be given together");
    }
  }
  if (const auto& caps = root["caps"]) {
    reject_unknown(caps, {"profiles", "tapes"}, "caps");
    if (caps["profiles"]) cfg.caps.profiles = scalar<std::uint64_t>(caps["profiles"], "caps.profiles");
    if (caps["tapes"]) cfg.caps.tapes = scalar<std::uint64_t>(caps["tapes"], "caps.tapes");
    if (cfg.caps.profiles == 0 || cfg.caps.tapes == 0) throw invalid("caps must be positive");
  }
  if (root["output"]) cfg.output = scalar<std::string>(root["output"], "output");
  if (root["seed"]) cfg.seed = scalar<std::uint64_t>(root["seed"], "seed");
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw invalid("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), path.parent_path());
}

std::string config_reference() {
  return R"(Config file (YAML):
  protocol:
    kind: np | oracle-parity | toy-threshold | communication-reduction   (default np)
    checker: perfect | noisy        inner SAT checker (default perfect)
    noise_bits: N                   tape bits of the noisy checker (default 4)
    queries: N                      oracle-parity query count gamma (default 1)
    length: N, threshold: T         toy-threshold language (default 3, 2)
    normalize: true|false           apply the (R+1)/2 payment map (default false)
    base: { ... }                   communication-reduction only; a normalized protocol
  inputs:                           each with label member|nonmember and one of
    - {name: phi1, label: member, formula: phi1.cnf}
    - {name: t1, label: member, formulas: [a.cnf, b.cnf]}
    - {name: x, label: nonmember, bits: "000"}
  analyses: [gap, decide, transform, amplify]   (default none; audit always runs)
  gap: {gamma: 3}                   utility-gap and gap-condition threshold
  decide: {intervals: N}            default ceil(2 * gap.gamma)
  transform: {gamma: 3}             zero-one rounding gamma (default gap.gamma)
  amplify: {gamma_prime: 6, n: 16, completeness: 3/5, soundness: 2/5}
                                    gamma_prime default 2 * transform gamma; n default
                                    the longest input; (c, s) default the extracted pair
  caps: {profiles: 1048576, tapes: 1048576}
  output: report.json               relative to the working directory
  seed: 0                           recorded in the report
)";
}

}  // namespace ripsim::harness
