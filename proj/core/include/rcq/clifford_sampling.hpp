#pragma once

#include <cstdint>
#include <vector>

#include "rcq/rng.hpp"
#include "rcq/tableau.hpp"

namespace rcq {

/// Enumeration table of the full two-qubit Clifford group modulo global
/// phase: 11520 distinct (symplectic, sign) pairs, generated once by BFS
/// closure over {H, S, CNOT} and sorted into a canonical order. Sampling a
/// uniform gate is a single bounded draw into this table.
class TwoQubitGateTable {
public:
  static const TwoQubitGateTable& instance();

  std::size_t size() const { return gates_.size(); }
  const CliffordTableau& tableau(std::uint16_t id) const { return gates_[id]; }
  std::uint16_t inverse_id(std::uint16_t id) const { return inverse_[id]; }

  /// Conjugation lookup for the 16 two-qubit X^x Z^z factors: input bit
  /// layout x_a | z_a<<1 | x_b<<2 | z_b<<3; output has the image bits in the
  /// same layout plus the phase exponent of i in bits 4-5.
  std::uint8_t conj_entry(std::uint16_t id, std::uint8_t xz4) const {
    return lut_[(static_cast<std::size_t>(id) << 4) | xz4];
  }

  /// Ids of the six CSS-preserving gates (X-type -> X-type, Z-type -> Z-type
  /// with trivial signs), in a fixed order.
  const std::vector<std::uint16_t>& css_ids() const { return css_ids_; }

  /// Index of a two-qubit tableau in the table; throws if absent.
  std::uint16_t id_of(const CliffordTableau& t) const;

private:
  TwoQubitGateTable();
  std::vector<CliffordTableau> gates_;
  std::vector<std::uint16_t> inverse_;
  std::vector<std::uint8_t> lut_;
  std::vector<std::uint16_t> css_ids_;
};

/// Uniform sample over the 11520-element two-qubit Clifford group.
CliffordTableau sample_two_qubit_clifford(Rng& rng);
std::uint16_t sample_two_qubit_clifford_id(Rng& rng);

/// Uniform sample over the six two-qubit gates whose conjugation action maps
/// X-type Paulis to X-type and Z-type to Z-type (I, both CNOTs, SWAP and the
/// two 3-cycles); Pauli factors are omitted as they act trivially on type.
CliffordTableau sample_css_two_qubit_gate(Rng& rng);
std::uint16_t sample_css_two_qubit_gate_id(Rng& rng);

/// Applies gate `id` from the global table to qubits (a, b) of p, replacing
/// p with U p U^dag. Phase is tracked exactly.
void conjugate_inplace_2q(PauliOperator& p, std::uint16_t id, std::size_t a,
                          std::size_t b);

}  // namespace rcq
