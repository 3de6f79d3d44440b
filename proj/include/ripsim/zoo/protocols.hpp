#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "ripsim/core/protocol.hpp"
#include "ripsim/zoo/proof_system.hpp"

namespace ripsim::zoo {

// One prover, one round. The message is the answer bit c followed by the
// inner proof m. c = 0 pays 1/2; otherwise the inner checker runs on m and
// the payment is 1 on acceptance, 0 on rejection.
ProtocolSpec build_np_rip(const ClassicalProofSystem& cps);

// Honest profile: c = membership, m = first message of best acceptance.
StrategyProfile honest_np_profile(const ClassicalProofSystem& cps, const Input& x);

// A machine making exactly `gamma` nonadaptive queries to the inner language.
struct OracleMachine {
  std::string name;
  std::size_t gamma = 1;
  std::function<std::vector<Input>(const Input&)> queries;
  std::function<bool(const Input&, const std::vector<bool>& answers)> finish;
};

// Parity of the number of satisfiable formulas in a tuple of `gamma` formulas.
OracleMachine parity_machine(std::size_t gamma);

// Membership of x in the language decided by `machine` with a true oracle.
bool oracle_language_member(const OracleMachine& machine, const ClassicalProofSystem& cps,
                            const Input& x);

// One prover, one round. Message: c, (c_1, m_1), ..., (c_gamma, m_gamma). Each
// block is scored with the build_np_rip rule into R_n; the c_i answer the
// machine's queries. Pays -1 when c differs from the machine's output, else
// R_n / gamma.
ProtocolSpec build_oracle_query_rip(const OracleMachine& machine, const ClassicalProofSystem& cps);

StrategyProfile honest_oracle_profile(const OracleMachine& machine,
                                      const ClassicalProofSystem& cps, const Input& x);

// A language over fixed-length inputs determined by the Hamming weight.
struct WeightLanguage {
  std::string name;
  std::size_t length = 1;
  std::function<bool(std::size_t weight)> accepts_weight;

  bool member(const Input& x) const;
};

// Inputs of `length` bits with weight >= threshold. Majority-of-3 is (3, 2).
WeightLanguage threshold_language(std::size_t length, std::size_t threshold);

// Constant-communication protocol: the prover sends c and a claimed weight w.
// The verifier pays 0 when w > n or c disagrees with the language at w;
// otherwise it probes one tape-selected input position and pays the quadratic
// score 1 - (w/n - x_pos)^2. Padded positions (pos >= n) pay 1/2.
ProtocolSpec build_toy_constant_comm(const WeightLanguage& language);

StrategyProfile honest_weight_profile(const WeightLanguage& language, const Input& x);

}  // namespace ripsim::zoo
