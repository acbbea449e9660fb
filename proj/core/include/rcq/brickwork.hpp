#pragma once

#include <cstdint>
#include <vector>

#include "rcq/pauli.hpp"
#include "rcq/rng.hpp"
#include "rcq/tableau.hpp"

namespace rcq {

enum class Boundary : std::uint8_t { open, periodic };

enum class Role : std::uint8_t { z_stabilizer, x_stabilizer, logical };

struct GatePlacement {
  std::uint16_t gate_id;  // index into TwoQubitGateTable
  std::uint32_t a;
  std::uint32_t b;
};

/// Low-depth brickwork circuit: d layers of two-qubit gates on neighboring
/// qubits with staggered brick offsets. For even n the offset alternates
/// between 0 and 1; periodic odd-n rings instead advance the offset by one
/// qubit per layer so that the seam is eventually crossed (an alternating
/// offset would leave one pair of neighbors permanently gateless).
struct BrickworkCircuit {
  std::size_t n = 0;
  std::size_t depth = 0;
  Boundary boundary = Boundary::open;
  bool css = false;
  std::vector<std::vector<GatePlacement>> layers;

  /// Conjugates p through the whole circuit: p -> U p U^dag.
  void conjugate_through(PauliOperator& p) const;
};

/// Input-qubit role assignment. Roles cover every circuit input including
/// boundary padding; k logical inputs are spread evenly over the core region.
struct InputLayout {
  std::vector<Role> roles;
  std::size_t k = 0;
  std::size_t padding = 0;  // stabilizer-only inputs per side (open boundary)

  std::size_t total_qubits() const { return roles.size(); }
};

/// Stabilizer code obtained by conjugating the single-qubit stabilizers of
/// the input product state through the encoding circuit.
struct CircuitCode {
  BrickworkCircuit circuit;
  InputLayout layout;
  std::vector<PauliOperator> stabilizers;
  std::vector<std::uint8_t> stabilizer_is_x;  // CSS type tag per stabilizer
  std::vector<PauliOperator> logical_x;
  std::vector<PauliOperator> logical_z;

  std::size_t num_qubits() const { return circuit.n; }
  std::size_t num_logicals() const { return logical_x.size(); }

  /// Anticommuting partner of each stabilizer generator (destabilizer-style),
  /// computed once by Gaussian elimination; canonical_error is a product of
  /// these.
  std::vector<PauliOperator> syndrome_partners;
};

/// Builds a depth-d brickwork circuit on n qubits with randomly sampled
/// two-qubit gates (CSS-preserving ones when css is set). Layer l places
/// gates on pairs (i, i+1) with parity offset l mod 2; the open boundary
/// skips the wrap pair. Throws when n < 2 or d < 1.
BrickworkCircuit build_brickwork_circuit(std::size_t n, std::size_t depth,
                                         Boundary boundary, bool css, Rng& rng);

/// Role assignment for n core qubits at encoding rate k/n (k rounded from
/// n*rate, spread by centered even spacing). Open boundaries gain exactly 2d
/// stabilizer-only roles per side so no logical input sits within 2d qubits
/// of an edge. CSS layouts alternate the non-logical roles between X- and
/// Z-type stabilizers; plain layouts use Z-type everywhere.
InputLayout assign_inputs(std::size_t n, double rate, std::size_t depth,
                          Boundary boundary, bool css);

/// Conjugates the input-product-state stabilizers through the circuit and
/// collects stabilizer and logical generators, plus syndrome partners.
CircuitCode derive_code(const BrickworkCircuit& circuit, const InputLayout& layout);

/// Syndrome bits of an error: bit i is set iff stabilizer i anticommutes
/// with e.
BitVec syndrome(const CircuitCode& code, const PauliOperator& e);

/// Deterministic coset representative with the given syndrome: the product of
/// stored partners over the set bits of s.
PauliOperator canonical_error(const CircuitCode& code, const BitVec& s);

/// Logical class bits of a zero-syndrome Pauli: per logical j, first =
/// X-component (anticommutes with logical Z), second = Z-component
/// (anticommutes with logical X). (first, second) reads as I/X/Z/Y =
/// (0,0)/(1,0)/(0,1)/(1,1).
std::vector<std::pair<bool, bool>> logical_class_bits(const CircuitCode& code,
                                                      const PauliOperator& q);

struct CodeParams {
  std::size_t n_core = 0;
  double rate = 0.0;
  std::size_t depth = 0;
  Boundary boundary = Boundary::open;
  bool css = false;
};

/// Samples a full circuit code from parameters and a dedicated RNG stream.
CircuitCode sample_circuit_code(const CodeParams& params, Rng& rng);

}  // namespace rcq
