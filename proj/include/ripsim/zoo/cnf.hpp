#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <vector>

#include "ripsim/core/protocol.hpp"

namespace ripsim::zoo {

// Toy CNF formula. Literals are DIMACS-style: +v or -v for variable v >= 1.
struct Cnf {
  std::size_t variables = 0;
  std::vector<std::vector<int>> clauses;

  // Bit v-1 of `assignment` (big-endian order of the certificate) holds x_v.
  bool satisfied_by(const BitString& assignment) const;
  bool satisfiable() const;

  bool operator==(const Cnf&) const = default;
};

inline constexpr std::size_t kMaxVariables = 3;
inline constexpr std::size_t kMaxClauses = 4;
inline constexpr std::size_t kMaxTupleSize = 7;

// Throws RipError(kInvalidArgument) when the formula exceeds toy limits.
void check_toy_limits(const Cnf& formula);

// Encoding: 2 bits variable count, 3 bits clause count, then per clause and
// per variable 2 bits (00 absent, 01 positive, 10 negative, 11 both).
BitString encode_formula_bits(const Cnf& formula);
Input encode_formula(const Cnf& formula);
Cnf decode_formula(const BitString& bits, std::size_t& offset);
Cnf decode_formula(const Input& x);

// Tuple encoding: 3 bits count, then the formulas back to back.
Input encode_formula_tuple(const std::vector<Cnf>& formulas);
std::vector<Cnf> decode_formula_tuple(const Input& x);

// DIMACS subset: optional "c" comment lines, one "p cnf V C" header, then
// clauses as whitespace-separated nonzero integers each terminated by 0.
Cnf parse_dimacs(std::istream& in);
Cnf load_dimacs(const std::filesystem::path& path);

}  // namespace ripsim::zoo
