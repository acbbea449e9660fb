#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rcq/pauli.hpp"
#include "rcq/rng.hpp"

namespace rcq {

/// Brings a list of mutually commuting, real-phased Paulis to a canonical
/// independent generating set of the same group: reduced row echelon over
/// GF(2) with pivot columns taken through the x block left to right and then
/// the z block, phases carried through every row operation. Dependent rows
/// reducing to +identity are dropped; a row reducing to -identity (the group
/// would contain -I) or anticommuting inputs throw.
std::vector<PauliOperator> canonicalize(std::vector<PauliOperator> gens);

/// Membership of p (up to sign) in the group generated by independent,
/// commuting gens. When found, *sign_out is 0 if +p is in the group and 1 if
/// -p is.
bool in_group(std::span<const PauliOperator> gens, const PauliOperator& p,
              bool* sign_out = nullptr);

struct MeasurementResult {
  int outcome = 0;  // +1 or -1
  bool was_deterministic = false;
};

/// Mixed stabilizer state on n qubits: r <= n independent, mutually
/// commuting, Hermitian-signed Pauli generators. rho is the uniform mixture
/// over the +1 eigenspace of the group, so the von Neumann entropy in qubit
/// units is n - r.
class MixedStabilizerState {
public:
  MixedStabilizerState() = default;

  /// Fully mixed state: no generators.
  static MixedStabilizerState maximally_mixed(std::size_t n);

  /// Product state from a role string per qubit: '0' -> |0>, '+' -> |+>,
  /// 'm' -> maximally mixed qubit.
  static MixedStabilizerState product(const std::string& roles);

  static MixedStabilizerState from_generators(std::size_t n,
                                              std::vector<PauliOperator> gens);

  std::size_t num_qubits() const { return n_; }
  std::size_t rank() const { return gens_.size(); }
  const std::vector<PauliOperator>& generators() const { return gens_; }

  /// S(rho) = n - r in qubit units (log base 2).
  std::size_t entropy() const { return n_ - gens_.size(); }

  /// S(rho_A) = |A| - dim of the subgroup supported entirely on A.
  std::size_t reduced_entropy(std::span<const std::size_t> subset) const;

  /// Replaces each qubit in `subset` by a fresh maximally mixed qubit:
  /// generators are Gaussian-eliminated on the erased columns and the pivots
  /// dropped, leaving the subgroup with no support there.
  void erase_qubits(std::span<const std::size_t> subset);

  /// Standard stabilizer measurement of a Hermitian Pauli. Deterministic if
  /// +-P is in the group; otherwise a fair coin, with the state updated by
  /// the usual replacement rule (anticommuting case) or by appending the
  /// outcome-signed P as a new generator (mixed case).
  MeasurementResult measure_pauli(const PauliOperator& p, Rng& rng);

  /// Conjugates the state by a Pauli: flips the sign of every anticommuting
  /// generator.
  void apply_pauli(const PauliOperator& p);

  /// Applies gate `gate_id` (global two-qubit table) to qubits (a, b).
  void apply_gate(std::uint16_t gate_id, std::size_t a, std::size_t b);

  /// Transversal CNOT between two equal-length qubit ranges.
  void apply_transversal_cnot(std::size_t control_start, std::size_t target_start,
                              std::size_t count);

  /// Tensor product: appends `other`'s qubits after this state's.
  void tensor(const MixedStabilizerState& other);

  /// Removes qubits in `subset` (which must carry no X support in any
  /// generator, as after a full Z-basis readout, or be freshly erased),
  /// renumbering the survivors. Generators still supported there are
  /// eliminated first.
  void drop_qubits(std::span<const std::size_t> subset);

  /// Canonicalizes the generator list in place (useful before comparing
  /// states or dumping them).
  void canonicalize_in_place();

private:
  void eliminate_support(std::span<const std::size_t> subset);

  std::size_t n_ = 0;
  std::vector<PauliOperator> gens_;
};

}  // namespace rcq
