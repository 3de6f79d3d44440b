#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ripsim/core/protocol.hpp"
#include "ripsim/core/rational.hpp"
#include "ripsim/zoo/cnf.hpp"
#include "ripsim/zoo/proof_system.hpp"

namespace ripsim::testing {

std::filesystem::path data_dir();
zoo::Cnf load_formula(const std::string& name);
Input formula_input(const std::string& name);

// Hand-checked labels for every file under tests/data.
struct LabeledFormula {
  std::string file;
  bool satisfiable;
};
const std::vector<LabeledFormula>& formula_suite();

// Brute-force SAT written against the clause lists only.
bool brute_force_sat(const zoo::Cnf& f);

// One prover, one round, `message_bits` bits; pays `value` whatever happens.
// Reads the whole message and consumes every coin.
ProtocolSpec constant_payment(const Rational& value, std::size_t message_bits = 1,
                              std::size_t tape_bits = 0);

// Input bit x_0 decides membership; pays 1 iff c = 1 and x_0 = 1. Zero-one.
ProtocolSpec membership_zero_one();

// Zero-one; pays the single coin when c = 1, else 0.
ProtocolSpec coin_payment();

// Two provers, three rounds. P1 sends c; V sends a coin v to P2; P2 answers a.
// Pays 0 if c != x_0, else 1 if a = v and 1/2 otherwise.
ProtocolSpec two_prover_echo();

// One prover, three rounds: c, then a coin v, then a. Pays 0 if c != x_0,
// else 1 if a = v and 1/2 otherwise. Normalized; reads c then a.
ProtocolSpec three_round_echo();

// One prover, one round, 8-bit message of which only bits 0 and 1 are read.
// Pays 0 if c != x_0, else 1 if bit 1 is set and 1/2 otherwise. C = 8.
ProtocolSpec wide_message();

// The NP protocol with payments 1 and 0 exchanged.
ProtocolSpec swapped_np(const zoo::ClassicalProofSystem& cps);

// Pr(Binomial(rho, p) <= tau) summed upward from k = 0, exact.
Rational lower_binomial_tail(const Rational& p, std::uint64_t rho, const Rational& tau);

}  // namespace ripsim::testing
