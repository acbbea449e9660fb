#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "rcq/brickwork.hpp"
#include "rcq/tensor_network.hpp"

namespace rcq {

/// Logical single-qubit class labels, indexed 0..3.
enum class LogicalClass : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Representative of class c on logical j: I, Lx, Lx*Lz, or Lz, sign-normalized.
PauliOperator logical_representative(const CircuitCode& code, std::size_t j,
                                     LogicalClass c);

struct MarginalDecodeResult {
  std::vector<LogicalClass> classes;                // argmax class per logical
  std::vector<std::array<double, 4>> log_weights;   // ln Z per class per logical
};

/// Marginal maximum-likelihood decoding: for each logical qubit j and class
/// sigma, contracts the partition function of the model that sums over all
/// stabilizers and all other logicals, at the Nishimori temperature for p,
/// and picks the class with the largest weight (ties to the lower class
/// index).
MarginalDecodeResult marginal_decode(const CircuitCode& code, const BitVec& s,
                                     double p);

struct MinWeightDecodeResult {
  PauliOperator correction;
  double ground_energy = 0.0;
  std::vector<std::int8_t> spin_values;
};

/// Minimum-weight decoding via tropical contraction with every stabilizer
/// and logical generator as a spin: the returned correction has syndrome s
/// and minimal weight over the whole coset.
MinWeightDecodeResult minimum_weight_decode(const CircuitCode& code, const BitVec& s);

}  // namespace rcq
