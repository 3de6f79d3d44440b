#include "ripsim/zoo/cnf.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ripsim/core/error.hpp"

namespace ripsim::zoo {
namespace {

RipError bad_formula(const std::string& what) {
  return RipError(ErrorKind::kInvalidArgument, "formula: " + what);
}

}  // namespace

bool Cnf::satisfied_by(const BitString& assignment) const {
  if (assignment.size() != variables) throw bad_formula("assignment length mismatch");
  for (const auto& clause : clauses) {
    bool sat = false;
    for (int lit : clause) {
      bool value = assignment[static_cast<std::size_t>(std::abs(lit)) - 1];
      if ((lit > 0) == value) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

bool Cnf::satisfiable() const {
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << variables); ++a) {
    if (satisfied_by(BitString::from_uint(a, variables))) return true;
  }
  return false;
}

void check_toy_limits(const Cnf& formula) {
  if (formula.variables > kMaxVariables) throw bad_formula("more than 3 variables");
  if (formula.clauses.size() > kMaxClauses) throw bad_formula("more than 4 clauses");
  for (const auto& clause : formula.clauses) {
    for (int lit : clause) {
      if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > formula.variables) {
        throw bad_formula("literal " + std::to_string(lit) + " out of range");
      }
    }
  }
}

BitString encode_formula_bits(const Cnf& formula) {
  check_toy_limits(formula);
  BitString out = BitString::from_uint(formula.variables, 2);
  out.append(BitString::from_uint(formula.clauses.size(), 3));
  for (const auto& clause : formula.clauses) {
    std::vector<unsigned> codes(formula.variables, 0);
    for (int lit : clause) codes[static_cast<std::size_t>(std::abs(lit)) - 1] |= lit > 0 ? 1U : 2U;
    for (unsigned code : codes) out.append(BitString::from_uint(code, 2));
  }
  return out;
}

Input encode_formula(const Cnf& formula) { return Input(encode_formula_bits(formula)); }

Cnf decode_formula(const BitString& bits, std::size_t& offset) {
  if (offset + 5 > bits.size()) throw bad_formula("truncated header");
  Cnf f;
  f.variables = bits.to_uint(offset, 2);
  std::size_t clause_count = bits.to_uint(offset + 2, 3);
  offset += 5;
  if (clause_count > kMaxClauses) throw bad_formula("more than 4 clauses");
  for (std::size_t c = 0; c < clause_count; ++c) {
    if (offset + 2 * f.variables > bits.size()) throw bad_formula("truncated clause");
    std::vector<int> clause;
    for (std::size_t v = 0; v < f.variables; ++v) {
      auto code = bits.to_uint(offset + 2 * v, 2);
      int var = static_cast<int>(v) + 1;
      if (code & 1U) clause.push_back(var);
      if (code & 2U) clause.push_back(-var);
    }
    offset += 2 * f.variables;
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

Cnf decode_formula(const Input& x) {
  std::size_t offset = 0;
  Cnf f = decode_formula(x.bits(), offset);
  if (offset != x.n()) throw bad_formula("trailing bits after formula");
  return f;
}

Input encode_formula_tuple(const std::vector<Cnf>& formulas) {
  if (formulas.empty() || formulas.size() > kMaxTupleSize) {
    throw bad_formula("tuple must hold 1 to 7 formulas");
  }
  BitString out = BitString::from_uint(formulas.size(), 3);
  for (const auto& f : formulas) out.append(encode_formula_bits(f));
  return Input(out);
}

std::vector<Cnf> decode_formula_tuple(const Input& x) {
  const BitString& bits = x.bits();
  if (bits.size() < 3) throw bad_formula("truncated tuple header");
  std::size_t count = bits.to_uint(0, 3);
  if (count == 0) throw bad_formula("empty tuple");
  std::size_t offset = 3;
  std::vector<Cnf> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(decode_formula(bits, offset));
  if (offset != bits.size()) throw bad_formula("trailing bits after tuple");
  return out;
}

Cnf parse_dimacs(std::istream& in) {
  Cnf f;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "p") {
      std::string fmt;
      long vars = -1;
      long clauses = -1;
      if (header || !(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0) {
        throw bad_formula("malformed DIMACS header: " + line);
      }
      header = true;
      f.variables = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      continue;
    }
    if (!header) throw bad_formula("clause before DIMACS header");
    std::istringstream cs(line);
    long lit = 0;
    while (cs >> lit) {
      if (lit == 0) {
        f.clauses.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(static_cast<int>(lit));
      }
    }
    if (!cs.eof()) throw bad_formula("non-integer token in clause line: " + line);
  }
  if (!header) throw bad_formula("missing DIMACS header");
  if (!current.empty()) throw bad_formula("last clause not terminated by 0");
  if (f.clauses.size() != declared_clauses) {
    throw bad_formula("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(f.clauses.size()));
  }
  check_toy_limits(f);
  return f;
}

Cnf load_dimacs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RipError(ErrorKind::kConfigInvalid, "cannot open formula file " + path.string());
  return parse_dimacs(in);
}

}  // namespace ripsim::zoo
