#pragma once

#include <cstdint>
#include <vector>

#include "rcq/brickwork.hpp"
#include "rcq/records.hpp"
#include "rcq/stabilizer_state.hpp"

namespace rcq {

/// One erasure event at a (time step, qubit) slot. Times are half-integer
/// level indices: an event at l + 0.5 strikes before level l + 1 executes,
/// so it propagates through that level's gates and corrupts that level's
/// readout.
struct ErasureEvent {
  double time = 0.0;
  std::uint32_t qubit = 0;
};

struct ErasureRecord {
  double rate = 0.0;
  std::vector<ErasureEvent> events;
};

enum class PrepBasis : std::uint8_t { zero, plus };

/// Encodes a noisy |0..0> or |+..+> logical state: input roles initialized
/// per the layout, then each encoding layer runs with an erasure sampling
/// pass (probability p per qubit) at the start of the level. Only CSS codes
/// are accepted.
std::pair<MixedStabilizerState, ErasureRecord> prepare_noisy_encoded_state(
    const CircuitCode& code, PrepBasis basis, double p, Rng& rng);

/// Result of one pairwise check: the surviving block, the destructive
/// readout of the measured block, and the sampled erasures (joint-state
/// coordinates: keep block at [0, n), measured block at [n, 2n)).
struct CheckResult {
  MixedStabilizerState keep;
  std::vector<std::uint8_t> bits;
  ErasureRecord erasures;
};

/// Bit-flip check: transversal CNOT from the kept block onto the measured
/// block, then a qubit-wise Z readout of the measured block. Erasures are
/// sampled at the CNOT level and the pre-measurement level on both blocks
/// (idle qubits included).
CheckResult bit_flip_check(const MixedStabilizerState& keep,
                           const MixedStabilizerState& measure, double p, Rng& rng);

/// Phase-flip check: mirror image (CNOT from the measured block onto the
/// kept one, Hadamard-basis readout); detects Z errors.
CheckResult phase_flip_check(const MixedStabilizerState& keep,
                             const MixedStabilizerState& measure, double p, Rng& rng);

struct CheckTranscript {
  std::size_t round = 0;
  bool bit_check = true;
  std::vector<std::vector<std::uint8_t>> pair_bits;
};

struct ProtocolState {
  std::vector<MixedStabilizerState> blocks;  // surviving blocks (one after a
                                             // full distillation)
  std::vector<PauliOperator> frames;         // Pauli frame per surviving block
  std::vector<CheckTranscript> transcript;
  std::vector<std::size_t> survivor_entropy_after_round;
};

struct DistillResult {
  MixedStabilizerState survivor;
  ProtocolState protocol;
};

/// Distillation: prepares 2^q noisy encoded blocks and runs q rounds of
/// pairwise checks, bit-flip checks on odd rounds and phase-flip on even,
/// keeping the even-index survivor of each adjacent pair.
DistillResult distill(const CircuitCode& code, PrepBasis basis, std::size_t q,
                      double p, Rng& rng);

struct SteaneTranscript {
  std::vector<std::uint8_t> plus_bits;
  std::vector<std::uint8_t> zero_bits;
  ErasureRecord erasures;  // gadget-local: slots over the three blocks
};

/// One Steane error-correction round on the n-qubit data block starting at
/// data_start inside `state`. Both encoded ancillas are produced internally
/// by q-round distillations; the gadget runs transversal CNOT data->plus,
/// transversal CNOT zero->data, then destructive readout of both ancillas
/// (plus in Z, zero in the Hadamard basis), with erasures sampled at each of
/// the three levels across data and both ancillas.
SteaneTranscript steane_ec_round(MixedStabilizerState& state, std::size_t data_start,
                                 const CircuitCode& code, std::size_t q, double p,
                                 Rng& rng);

struct EntropyExperimentConfig {
  std::size_t n = 51;
  double rate = 1.0 / 3.0;
  std::size_t d = 6;
  std::size_t q_max = 6;
  std::vector<double> p_grid;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t batch_count = 50;
  unsigned workers = 0;
};

/// Entropy-density sweep: per trial a fresh CSS code is distilled to q_max
/// rounds and the survivor entropy density S/n is recorded after every two
/// rounds. Points are keyed (p, q).
ExperimentRecord entropy_density_experiment(const EntropyExperimentConfig& config);

struct MutualInfoConfig {
  std::size_t n = 51;
  double rate = 1.0 / 3.0;
  std::vector<std::size_t> depths;
  std::vector<std::size_t> qs;  // empty: q = d
  std::size_t rounds = 10;
  std::vector<double> p_grid;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t batch_count = 50;
  unsigned workers = 0;
};

/// Entanglement test of the Steane gadget: k encoded EPR pairs across two
/// blocks (prepared noise-free), `rounds` noisy error-correction rounds on
/// block A, a perfect stabilizer measurement of both blocks, then
/// I(A:B)/k from stabilizer ranks. Points are keyed (p, d).
ExperimentRecord mutual_info_experiment(const MutualInfoConfig& config);

}  // namespace rcq
