#pragma once

#include <cstdint>
#include <vector>

#include "rcq/spin_model.hpp"

namespace rcq {

enum class Semiring : std::uint8_t { real_log_domain, tropical };

/// 2D-lattice tensor network of a spin model, laid out for column-by-column
/// contraction. Terms are the columns, ordered qubit-major; each spin becomes
/// a horizontal chain of equality tensors spanning from its first to its last
/// incident column, and the chains stacked over a column feed their product
/// leg into that column's boundary tensor, which emits the Gibbs weight
/// (energy, in the tropical semiring) of the term.
///
/// The per-column plan below is the walk of that lattice: a chain starting at
/// a column pushes a frontier slot, the boundary tensor couples the incident
/// slots, and a chain ending at a column is marginalized out of the frontier.
struct LatticeTensorNetwork {
  struct Retirement {
    std::uint16_t slot;
    std::uint32_t spin;
  };
  struct Column {
    double sign;                            // [[E, sigma]] of the term
    std::uint16_t activations;              // chains starting here
    std::vector<std::uint32_t> activation_spins;
    std::uint64_t incident_mask;            // frontier slots of incident chains
    std::vector<Retirement> retirements;    // applied after the column, by
                                            // descending slot
  };

  Semiring semiring = Semiring::real_log_domain;
  std::size_t num_spins = 0;
  std::size_t height = 0;        // max simultaneous chains (frontier width)
  std::size_t free_spins = 0;    // spins incident to no term
  std::vector<Column> columns;
};

/// Lays out the model's 2D lattice. Frontier width is bounded by the number
/// of generators whose support window covers any one qubit, which for
/// depth-d brickwork codes is O(d). Throws if the width would exceed 64.
LatticeTensorNetwork build_tensor_network(const SpinModel& model,
                                          Semiring semiring = Semiring::real_log_domain);

/// Contracts in the real semiring, entirely in the log domain with
/// per-column rescaling. Returns ln Z at the given beta*J (natural log).
/// Throws if the running values stop being finite.
double contract_partition(const LatticeTensorNetwork& network, double beta_j);

struct TropicalResult {
  double energy = 0.0;
  std::vector<std::int8_t> spin_values;  // +1 / -1 per spin; +1 for free spins
};

/// Contracts in the (min, +) tropical semiring, which evaluates the
/// zero-temperature limit taken along the Nishimori ray (beta*J -> -infinity):
/// the ground energy of -H together with a configuration attaining it,
/// recovered from argmin tables stored while contracting. Ties prefer the
/// unflipped (+1) branch.
TropicalResult contract_tropical(const LatticeTensorNetwork& network);

}  // namespace rcq
