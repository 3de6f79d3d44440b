#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"

namespace ripsim {

// Supplies prover messages during a run.
class MessageSource {
 public:
  virtual ~MessageSource() = default;
  virtual Message message(std::size_t prover, std::size_t prover_round, const History& history,
                          std::size_t length) = 0;
};

struct RunOptions {
  // When false, communication/read budgets are measured but not enforced.
  bool enforce_budgets = true;
};

struct Execution {
  Transcript transcript;
  Rational payment;
  std::size_t coins_consumed = 0;

  bool operator==(const Execution&) const = default;
};

// Low-level run with an arbitrary message source.
Execution simulate(const ProtocolSpec& spec, const ProtocolShape& shape, const Input& x,
                   const RandomTape& r, MessageSource& source, const RunOptions& options = {});

// One run of (V, P)(x, r, s). Deterministic.
Execution execute(const ProtocolSpec& spec, const Input& x, const RandomTape& r,
                  const StrategyProfile& s);

// Number of tapes of the given length; throws kRandomnessCapExceeded over cap.
std::uint64_t tape_count(std::size_t randomness_bits, const EnumerationCaps& caps);
void for_each_tape(std::size_t randomness_bits, const EnumerationCaps& caps,
                   const std::function<void(const RandomTape&)>& visit);

// Exact average payment over every random tape.
Rational expected_payment(const ProtocolSpec& spec, const Input& x, const StrategyProfile& s,
                          const EnumerationCaps& caps = {});

// Payment becomes (R + 1) / 2. The map is recorded under "normalize.affine".
ProtocolSpec normalize_payments(const ProtocolSpec& spec);

// Visits every run reachable under some strategy profile: all tapes, and all
// prover messages at every reachable history. At most caps.profiles runs per tape.
void explore_runs(const ProtocolSpec& spec, const Input& x, const EnumerationCaps& caps,
                  const std::function<void(const RandomTape&, const Execution&)>& visit,
                  const RunOptions& options = {});

struct AuditReport {
  ProtocolShape declared;
  std::size_t declared_rounds = 0;
  std::uint64_t runs = 0;
  std::size_t max_communication = 0;
  std::size_t max_rounds_used = 0;
  std::size_t max_random_bits = 0;
  std::size_t max_message_bits = 0;
  std::size_t max_reads = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Measures resource use over all (r, s) and flags any budget violation.
AuditReport resource_audit(const ProtocolSpec& spec, const Input& x,
                           const EnumerationCaps& caps = {});

}  // namespace ripsim
