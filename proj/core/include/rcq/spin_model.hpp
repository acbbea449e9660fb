#pragma once

#include <cstdint>
#include <vector>

#include "rcq/brickwork.hpp"

namespace rcq {

/// Nishimori inverse temperature for depolarizing rate p (X, Y, Z each p/3):
/// beta*J = -(1/4) ln(3(1-p)/p), natural log. Negative for p < 3/4 and
/// divergent as p -> 0. Throws outside (0, 1).
double nishimori_beta(double p);

enum class SpinModelMode : std::uint8_t {
  stabilizers_only,   // one spin per stabilizer generator
  exclude_logical,    // stabilizers plus both logicals of every qubit but one
  all_generators,     // stabilizers plus every logical X and Z
};

/// One Hamiltonian term per single-weight Pauli sigma: coefficient
/// J*[[E, sigma]] times the product of the spins whose generator anticommutes
/// with sigma.
struct SpinTerm {
  std::int8_t sign;          // [[E, sigma]] in {+1, -1}
  std::uint32_t qubit;
  std::uint8_t pauli;        // 0 = X, 1 = Y, 2 = Z
  std::vector<std::uint32_t> spins;
};

/// Classical Ising model of a code/error pair. H(s) = sum_u J*sign_u*prod of
/// incident spins; flipping spin i multiplies the error by generator i.
struct SpinModel {
  std::size_t num_spins = 0;
  double coupling = 1.0;  // J; only beta*J is physical
  std::vector<SpinTerm> terms;            // exactly 3n, qubit-major, X/Y/Z
  std::vector<PauliOperator> generators;  // spin i <-> generators[i]
};

/// Builds the spin model for error e against the code's generators in the
/// given mode. In exclude_logical mode, `excluded_logical` names the logical
/// qubit whose two generators are left out.
SpinModel build_spin_model(const CircuitCode& code, const PauliOperator& e,
                           SpinModelMode mode, std::size_t excluded_logical = 0);

/// Energy of a spin configuration (+1/-1 per spin), for oracles and tests.
double spin_model_energy(const SpinModel& model, const std::vector<int>& config);

}  // namespace rcq
