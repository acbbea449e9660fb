#pragma once

#include <cstdint>
#include <vector>

#include "rcq/brickwork.hpp"
#include "rcq/erasure_protocol.hpp"
#include "rcq/records.hpp"
#include "rcq/stabilizer_state.hpp"

namespace rcq {

/// Circuit location: the slot of qubit `qubit` at time step `slice` + 0.5,
/// i.e. after level `slice` - 1 and before level `slice` (levels are
/// 0-based). A circuit with L levels has n(L+1) locations, slices 0..L.
struct Location {
  std::uint32_t slice = 0;
  std::uint32_t qubit = 0;
  friend bool operator==(const Location& a, const Location& b) {
    return a.slice == b.slice && a.qubit == b.qubit;
  }
};

struct MeasurementEvent {
  std::uint32_t qubit = 0;
  std::uint8_t basis = 0;  // 0 = Z readout, 1 = X readout
  std::uint32_t bit_index = 0;
};

/// One circuit level: either a layer of two-qubit gates or a layer of
/// destructive single-qubit readouts.
struct CircuitLevel {
  std::vector<GatePlacement> gates;
  std::vector<MeasurementEvent> measurements;
};

struct LocatedCircuit {
  std::size_t n = 0;
  std::vector<CircuitLevel> levels;

  std::size_t num_levels() const { return levels.size(); }
  std::size_t num_locations() const { return n * (levels.size() + 1); }
};

/// Pauli assignment over circuit locations: one n-qubit slice per time step.
struct FaultOperator {
  std::vector<PauliOperator> slices;

  static FaultOperator identity(const LocatedCircuit& circuit);
  std::size_t weight() const;
  FaultOperator& operator*=(const FaultOperator& other);
};

/// Total scalar commutator of two fault operators: the product of slice
/// commutators.
bool fault_anticommutes(const FaultOperator& a, const FaultOperator& b);

/// Forward propagation: slice l of the cumulant collects every earlier slice
/// conjugated up to level l, times the slice at l.
FaultOperator cumulant(const LocatedCircuit& circuit, const FaultOperator& f);

/// Backward propagation: slice l collects every later slice conjugated back
/// down to level l.
FaultOperator back_cumulant(const LocatedCircuit& circuit, const FaultOperator& f);

/// Block-wise readout with its outcome-code checks: a destructive readout of
/// one code block, whose deterministic parities are the Z-type (X-type)
/// elements stabilizing the block's ideal state at measurement time.
struct ReadoutGroup {
  std::size_t level = 0;
  std::uint8_t basis = 0;         // 0 = Z readout, 1 = X readout
  std::uint32_t first_qubit = 0;  // block offset; qubits ascending
  std::size_t first_bit = 0;
  std::size_t check_offset = 0;
  std::vector<BitVec> patterns;   // one parity check per pattern, over block bits
};

/// The compiled distillation + Steane protocol as a located circuit, with
/// every readout's outcome-code checks and the final perfect stabilizer
/// measurement of the data block.
struct SpacetimeProtocol {
  LocatedCircuit circuit;
  CircuitCode code;        // per-block code; data block sits at offset 0
  std::size_t n_block = 0;
  std::size_t q = 0;
  std::size_t ec_rounds = 0;
  std::vector<std::vector<std::uint32_t>> exposed;  // per level: erasure slots
  std::vector<ReadoutGroup> readouts;
  std::size_t num_measurement_bits = 0;
  std::vector<PauliOperator> final_checks;   // embedded data stabilizers
  std::vector<PauliOperator> data_logicals;  // embedded: all Lx, then all Lz
  /// (offset, basis, pre_encoded) per block; data block is pre-encoded
  /// noise-free before level 0.
  struct BlockInit {
    std::uint32_t offset = 0;
    PrepBasis basis = PrepBasis::zero;
    bool pre_encoded = false;
  };
  std::vector<BlockInit> blocks;

  std::size_t num_checks() const;
  std::vector<Location> exposure_list() const;
};

/// Compiles the full protocol circuit: per EC round, two 2^q-block
/// distillations (plus- and zero-basis trees in parallel), then the Steane
/// gadget on the data block; the data block is exposed to erasures only
/// during gadget levels.
SpacetimeProtocol build_steane_protocol(const CircuitCode& code, std::size_t q,
                                        std::size_t ec_rounds);

/// Outcome code: rows over the concatenated measurement record (block
/// readout bits, then one bit per final stabilizer measurement). A * m is
/// deterministic in noiseless runs.
struct OutcomeCode {
  std::vector<BitVec> rows;
  std::size_t bit_count = 0;
};
OutcomeCode build_outcome_code(const SpacetimeProtocol& proto);

/// The spacetime stabilizers: each check's measurement-supported Pauli,
/// anchored at the slice read by its measurement (the final slice for the
/// perfect stabilizer checks), back-propagated through the circuit.
std::vector<FaultOperator> spacetime_stabilizers(const SpacetimeProtocol& proto);

struct SampledFault {
  std::vector<Location> locations;
  std::vector<std::uint8_t> xz;  // bit 0 = X part, bit 1 = Z part
};

/// Detector-column engine: for any location it forward-propagates a single X
/// or Z and reads off which checks flip and which data logicals the
/// propagated fault anticommutes with. Built once per protocol instance and
/// shared read-only across decodes.
class SpacetimeDecoder {
public:
  explicit SpacetimeDecoder(const SpacetimeProtocol& proto);

  const SpacetimeProtocol& protocol() const { return *proto_; }

  struct Column {
    BitVec checks;
    std::uint64_t logicals = 0;
  };
  /// Column of a single X (is_x = true) or Z at a location.
  Column location_column(const Location& loc, bool is_x) const;

  /// Syndrome of a sampled fault, summed from its location columns.
  BitVec syndrome_of(const SampledFault& fault) const;

  /// Logical flips of a fault: bits [0,k) = anticommutes with logical X_j,
  /// bits [k,2k) = anticommutes with logical Z_j, evaluated on the forward
  /// cumulant at the final slice restricted to the data block.
  std::uint64_t logical_flips_of(const SampledFault& fault) const;

private:
  const SpacetimeProtocol* proto_;
  std::vector<std::vector<std::int32_t>> gate_at_;    // per level: qubit -> gate idx
  std::vector<std::vector<std::int32_t>> readout_at_; // per level: qubit -> group
  std::vector<std::vector<std::uint64_t>> group_bit_masks_;  // per group: per
                                                             // position: checks
  std::vector<std::uint64_t> final_x_mask_;  // per qubit: final checks hit by X
  std::vector<std::uint64_t> final_z_mask_;  //              ... hit by Z
  std::vector<std::uint64_t> logical_x_mask_;  // per qubit: logicals hit by X
  std::vector<std::uint64_t> logical_z_mask_;
  std::size_t final_check_offset_ = 0;
};

struct ErasureDecodeResult {
  bool ok = false;
  SampledFault fault;  // solution supported on the erased locations
};

/// Optimal erasure decoding: GF(2) solve for any fault supported on the
/// erased locations whose spacetime syndrome matches s; free variables are
/// set to zero. FAIL (ok = false) only on an inconsistent system, which
/// cannot happen for true erasure noise.
ErasureDecodeResult erasure_decode(const SpacetimeDecoder& decoder, const BitVec& s,
                                   std::span<const Location> erased);

/// Stepwise stabilizer-simulation of the protocol with Pauli faults injected
/// at their locations; returns the full measurement record (readout bits then
/// final stabilizer bits). The deterministic parities A*m of noiseless runs
/// serve as syndrome offsets.
std::vector<std::uint8_t> simulate_protocol(const SpacetimeProtocol& proto,
                                            const SampledFault& injections, Rng& rng);

struct SpacetimeExperimentConfig {
  std::size_t n = 51;
  double rate = 1.0 / 3.0;
  std::vector<std::size_t> depths;
  std::vector<std::size_t> qs;  // empty: q = d
  std::size_t ec_rounds = 3;
  std::vector<double> p_grid;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t batch_count = 50;
  unsigned workers = 0;
};

/// Failure-rate sweep: erasures realized as uniform X/Y/Z Paulis at recorded
/// locations, decoded by the spacetime erasure decoder; a trial fails when
/// the residual fault acts nontrivially on any data logical. Points are
/// keyed (p, d).
ExperimentRecord decode_experiment(const SpacetimeExperimentConfig& config);

}  // namespace rcq
