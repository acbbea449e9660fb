#pragma once

// Brute-force oracles: exhaustive enumerations kept deliberately independent
// of the production algorithms they check.

#include <array>
#include <vector>

#include "rcq/brickwork.hpp"
#include "rcq/rng.hpp"
#include "rcq/spin_model.hpp"

namespace rcq::test {

/// All 2^r elements of the group generated by independent commuting Paulis.
std::vector<PauliOperator> enumerate_group(const std::vector<PauliOperator>& gens);

/// Depolarizing probability of a Pauli error with per-qubit rate p.
long double error_probability(const PauliOperator& e, double p);

/// ln of the exhaustive Gibbs sum over all 2^num_spins configurations.
double brute_force_log_partition(const SpinModel& model, double beta_j);

struct BruteGround {
  double energy = 0.0;
  std::vector<int> config;
};
/// Exhaustive minimum of -H over all configurations (ties keep the first,
/// which in our enumeration order is the all-+1-preferring one).
BruteGround brute_force_ground(const SpinModel& model);

/// Exhaustive minimum weight over the coset {S_a L C_s}.
std::size_t brute_force_min_coset_weight(const CircuitCode& code, const BitVec& s);

/// Exhaustive marginal class probabilities of logical j given syndrome s.
std::array<long double, 4> brute_force_marginal(const CircuitCode& code,
                                                const BitVec& s, double p,
                                                std::size_t j);

/// Uniformly random n-qubit Pauli (sign +).
PauliOperator random_pauli(std::size_t n, Rng& rng);

/// Random depolarizing error with rate p.
PauliOperator random_depolarizing(std::size_t n, double p, Rng& rng);

}  // namespace rcq::test
