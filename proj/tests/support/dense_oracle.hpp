#pragma once

// Dense density-matrix oracle for small systems (n <= 5). Entirely
// independent of the stabilizer-rank formulas it cross-checks: states are
// built as explicit 2^n x 2^n matrices and entropies come from a Jacobi
// eigensolver.

#include <complex>
#include <vector>

#include "rcq/pauli.hpp"
#include "rcq/stabilizer_state.hpp"

namespace rcq::test {

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;

Matrix identity_matrix(std::size_t dim);
Matrix pauli_matrix(const PauliOperator& p);

/// rho = (prod_i (I + G_i)) normalized to unit trace; qubit 0 is the most
/// significant basis bit.
Matrix density_matrix(const MixedStabilizerState& state);

Matrix partial_trace(const Matrix& rho, std::size_t n,
                     const std::vector<std::size_t>& keep);

/// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.
std::vector<double> hermitian_eigenvalues(Matrix a);

/// -Tr(rho log2 rho) from the eigenvalue spectrum.
double von_neumann_entropy_bits(const Matrix& rho);

/// Tr[(I + P)/2 rho], the Born probability of the +1 outcome.
double born_probability_plus(const Matrix& rho, const PauliOperator& p);

}  // namespace rcq::test
