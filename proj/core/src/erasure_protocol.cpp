#include "rcq/erasure_protocol.hpp"

#include <stdexcept>

#include "rcq/parallel.hpp"

namespace rcq {

namespace {

// One erasure sampling pass at the given time over `qubits` (ascending).
void erasure_pass(MixedStabilizerState& state, std::span<const std::size_t> qubits,
                  double time, double p, Rng& rng, ErasureRecord& record) {
  std::vector<std::size_t> hit;
  for (auto q : qubits) {
    if (rng.bernoulli(p)) {
      hit.push_back(q);
      record.events.push_back({time, static_cast<std::uint32_t>(q)});
    }
  }
  if (!hit.empty()) {
    state.erase_qubits(hit);
  }
}

std::vector<std::size_t> iota_range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = first + i;
  }
  return v;
}

std::string roles_string(const CircuitCode& code, PrepBasis basis) {
  std::string roles;
  roles.reserve(code.num_qubits());
  for (auto r : code.layout.roles) {
    switch (r) {
      case Role::x_stabilizer:
        roles += '+';
        break;
      case Role::z_stabilizer:
        roles += '0';
        break;
      case Role::logical:
        roles += basis == PrepBasis::zero ? '0' : '+';
        break;
    }
  }
  return roles;
}

CheckResult run_check(const MixedStabilizerState& keep,
                      const MixedStabilizerState& measure, bool bit_check, double p,
                      Rng& rng) {
  const std::size_t n = keep.num_qubits();
  if (measure.num_qubits() != n) {
    throw std::invalid_argument("check blocks must match in size");
  }
  CheckResult result;
  result.erasures.rate = p;
  MixedStabilizerState joint = keep;
  joint.tensor(measure);
  const auto all = iota_range(0, 2 * n);

  erasure_pass(joint, all, 0.5, p, rng, result.erasures);
  if (bit_check) {
    joint.apply_transversal_cnot(0, n, n);
  } else {
    joint.apply_transversal_cnot(n, 0, n);
  }
  erasure_pass(joint, all, 1.5, p, rng, result.erasures);

  result.bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PauliOperator obs =
        PauliOperator::single(2 * n, n + i, bit_check ? 'Z' : 'X');
    result.bits[i] = joint.measure_pauli(obs, rng).outcome < 0 ? 1 : 0;
  }
  joint.drop_qubits(iota_range(n, n));
  result.keep = std::move(joint);
  return result;
}

}  // namespace

std::pair<MixedStabilizerState, ErasureRecord> prepare_noisy_encoded_state(
    const CircuitCode& code, PrepBasis basis, double p, Rng& rng) {
  if (!code.circuit.css) {
    throw std::invalid_argument("encoded-state preparation needs a CSS code");
  }
  MixedStabilizerState state = MixedStabilizerState::product(roles_string(code, basis));
  ErasureRecord record;
  record.rate = p;
  const auto all = iota_range(0, code.num_qubits());
  for (std::size_t layer = 0; layer < code.circuit.depth; ++layer) {
    erasure_pass(state, all, static_cast<double>(layer) + 0.5, p, rng, record);
    for (const auto& g : code.circuit.layers[layer]) {
      state.apply_gate(g.gate_id, g.a, g.b);
    }
  }
  return {std::move(state), std::move(record)};
}

CheckResult bit_flip_check(const MixedStabilizerState& keep,
                           const MixedStabilizerState& measure, double p, Rng& rng) {
  return run_check(keep, measure, true, p, rng);
}

CheckResult phase_flip_check(const MixedStabilizerState& keep,
                             const MixedStabilizerState& measure, double p, Rng& rng) {
  return run_check(keep, measure, false, p, rng);
}

DistillResult distill(const CircuitCode& code, PrepBasis basis, std::size_t q,
                      double p, Rng& rng) {
  if (q < 1) {
    throw std::invalid_argument("distillation needs q >= 1");
  }
  const std::size_t block_count = std::size_t{1} << q;
  std::vector<MixedStabilizerState> blocks;
  blocks.reserve(block_count);
  for (std::size_t b = 0; b < block_count; ++b) {
    blocks.push_back(prepare_noisy_encoded_state(code, basis, p, rng).first);
  }
  DistillResult result;
  std::vector<std::size_t> survivors = iota_range(0, block_count);
  for (std::size_t round = 1; round <= q; ++round) {
    const bool bit_check = (round % 2) == 1;
    CheckTranscript transcript;
    transcript.round = round;
    transcript.bit_check = bit_check;
    std::vector<std::size_t> next;
    for (std::size_t m = 0; m + 1 < survivors.size(); m += 2) {
      const std::size_t keep_idx = survivors[m];
      const std::size_t partner_idx = survivors[m + 1];
      CheckResult check = bit_check
                              ? bit_flip_check(blocks[keep_idx], blocks[partner_idx], p, rng)
                              : phase_flip_check(blocks[keep_idx], blocks[partner_idx], p, rng);
      blocks[keep_idx] = std::move(check.keep);
      transcript.pair_bits.push_back(std::move(check.bits));
      next.push_back(keep_idx);
    }
    survivors = std::move(next);
    result.protocol.transcript.push_back(std::move(transcript));
    result.protocol.survivor_entropy_after_round.push_back(
        blocks[survivors[0]].entropy());
  }
  result.survivor = std::move(blocks[survivors[0]]);
  result.protocol.blocks.push_back(result.survivor);
  result.protocol.frames.emplace_back(code.num_qubits());
  return result;
}

SteaneTranscript steane_ec_round(MixedStabilizerState& state, std::size_t data_start,
                                 const CircuitCode& code, std::size_t q, double p,
                                 Rng& rng) {
  const std::size_t n = code.num_qubits();
  DistillResult plus = distill(code, PrepBasis::plus, q, p, rng);
  DistillResult zero = distill(code, PrepBasis::zero, q, p, rng);
  const std::size_t base = state.num_qubits();
  state.tensor(plus.survivor);
  state.tensor(zero.survivor);
  const std::size_t plus_start = base;
  const std::size_t zero_start = base + n;

  std::vector<std::size_t> gadget = iota_range(data_start, n);
  for (auto qubit : iota_range(plus_start, 2 * n)) {
    gadget.push_back(qubit);
  }

  SteaneTranscript transcript;
  transcript.erasures.rate = p;
  erasure_pass(state, gadget, 0.5, p, rng, transcript.erasures);
  state.apply_transversal_cnot(data_start, plus_start, n);
  erasure_pass(state, gadget, 1.5, p, rng, transcript.erasures);
  state.apply_transversal_cnot(zero_start, data_start, n);
  erasure_pass(state, gadget, 2.5, p, rng, transcript.erasures);

  transcript.plus_bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PauliOperator obs =
        PauliOperator::single(state.num_qubits(), plus_start + i, 'Z');
    transcript.plus_bits[i] = state.measure_pauli(obs, rng).outcome < 0 ? 1 : 0;
  }
  transcript.zero_bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PauliOperator obs =
        PauliOperator::single(state.num_qubits(), zero_start + i, 'X');
    transcript.zero_bits[i] = state.measure_pauli(obs, rng).outcome < 0 ? 1 : 0;
  }
  state.drop_qubits(iota_range(base, 2 * n));
  return transcript;
}

ExperimentRecord entropy_density_experiment(const EntropyExperimentConfig& config) {
  if (config.q_max < 2 || config.q_max % 2 != 0) {
    throw std::invalid_argument("entropy experiment needs an even q_max >= 2");
  }
  const CodeParams params{config.n, config.rate, config.d, Boundary::periodic, true};
  const std::size_t checkpoints = config.q_max / 2;
  // values[p_idx][checkpoint][trial]
  std::vector<std::vector<std::vector<double>>> values(
      config.p_grid.size(),
      std::vector<std::vector<double>>(checkpoints,
                                       std::vector<double>(config.trials, 0.0)));
  const std::size_t total = config.p_grid.size() * config.trials;
  run_trials(total, config.workers, [&](std::size_t idx) {
    const std::size_t p_idx = idx / config.trials;
    const std::size_t t = idx % config.trials;
    Rng rng(config.seed, idx);
    CircuitCode code = sample_circuit_code(params, rng);
    DistillResult result =
        distill(code, PrepBasis::zero, config.q_max, config.p_grid[p_idx], rng);
    for (std::size_t c = 0; c < checkpoints; ++c) {
      const std::size_t rounds = 2 * (c + 1);
      values[p_idx][c][t] =
          static_cast<double>(
              result.protocol.survivor_entropy_after_round[rounds - 1]) /
          static_cast<double>(code.num_qubits());
    }
  });
  ExperimentRecord record;
  record.kind = "entropy";
  record.seed = config.seed;
  record.batch_count = config.batch_count;
  record.config = nlohmann::json{
      {"n", config.n},         {"rate", config.rate},   {"d", config.d},
      {"q_max", config.q_max}, {"p_grid", config.p_grid}, {"trials", config.trials},
      {"seed", config.seed},   {"batch_count", config.batch_count},
  };
  record.config_hash = config_hash(record.config);
  for (std::size_t p_idx = 0; p_idx < config.p_grid.size(); ++p_idx) {
    for (std::size_t c = 0; c < checkpoints; ++c) {
      record.points.push_back(make_point(config.p_grid[p_idx],
                                         static_cast<double>(2 * (c + 1)),
                                         values[p_idx][c], config.batch_count));
    }
  }
  return record;
}

ExperimentRecord mutual_info_experiment(const MutualInfoConfig& config) {
  std::vector<std::size_t> qs = config.qs;
  if (qs.empty()) {
    qs = config.depths;
  }
  if (qs.size() != config.depths.size()) {
    throw std::invalid_argument("depths and qs must align");
  }
  const std::size_t points = config.depths.size() * config.p_grid.size();
  std::vector<std::vector<double>> values(points,
                                          std::vector<double>(config.trials, 0.0));
  run_trials(points * config.trials, config.workers, [&](std::size_t idx) {
    const std::size_t point = idx / config.trials;
    const std::size_t t = idx % config.trials;
    const std::size_t d_idx = point / config.p_grid.size();
    const double p = config.p_grid[point % config.p_grid.size()];
    Rng rng(config.seed, idx);
    const CodeParams params{config.n, config.rate, config.depths[d_idx],
                            Boundary::periodic, true};
    CircuitCode code = sample_circuit_code(params, rng);
    const std::size_t n = code.num_qubits();
    const std::size_t k = code.num_logicals();

    // Noise-free preparation of k encoded EPR pairs across blocks A and B.
    std::vector<PauliOperator> gens;
    for (std::size_t i = 0; i < n; ++i) {
      switch (code.layout.roles[i]) {
        case Role::x_stabilizer:
          gens.push_back(PauliOperator::single(2 * n, i, 'X'));
          gens.push_back(PauliOperator::single(2 * n, n + i, 'X'));
          break;
        case Role::z_stabilizer:
          gens.push_back(PauliOperator::single(2 * n, i, 'Z'));
          gens.push_back(PauliOperator::single(2 * n, n + i, 'Z'));
          break;
        case Role::logical: {
          PauliOperator xx = PauliOperator::single(2 * n, i, 'X');
          xx *= PauliOperator::single(2 * n, n + i, 'X');
          PauliOperator zz = PauliOperator::single(2 * n, i, 'Z');
          zz *= PauliOperator::single(2 * n, n + i, 'Z');
          gens.push_back(std::move(xx));
          gens.push_back(std::move(zz));
          break;
        }
      }
    }
    MixedStabilizerState state = MixedStabilizerState::from_generators(2 * n, gens);
    for (const auto& layer : code.circuit.layers) {
      for (const auto& g : layer) {
        state.apply_gate(g.gate_id, g.a, g.b);
        state.apply_gate(g.gate_id, n + g.a, n + g.b);
      }
    }

    for (std::size_t round = 0; round < config.rounds; ++round) {
      steane_ec_round(state, 0, code, qs[d_idx], p, rng);
    }

    // Perfect stabilizer measurement on each block, then I(A:B).
    for (const auto& s : code.stabilizers) {
      state.measure_pauli(embed(s, 2 * n, 0), rng);
    }
    for (const auto& s : code.stabilizers) {
      state.measure_pauli(embed(s, 2 * n, n), rng);
    }
    const auto block_a = iota_range(0, n);
    const auto block_b = iota_range(n, n);
    const double info =
        static_cast<double>(state.reduced_entropy(block_a)) +
        static_cast<double>(state.reduced_entropy(block_b)) -
        static_cast<double>(state.entropy());
    values[point][t] = info / static_cast<double>(k);
  });
  ExperimentRecord record;
  record.kind = "mutual-info";
  record.seed = config.seed;
  record.batch_count = config.batch_count;
  record.config = nlohmann::json{
      {"n", config.n},           {"rate", config.rate}, {"depths", config.depths},
      {"qs", qs},                {"rounds", config.rounds},
      {"p_grid", config.p_grid}, {"trials", config.trials},
      {"seed", config.seed},     {"batch_count", config.batch_count},
  };
  record.config_hash = config_hash(record.config);
  for (std::size_t d_idx = 0; d_idx < config.depths.size(); ++d_idx) {
    for (std::size_t p_idx = 0; p_idx < config.p_grid.size(); ++p_idx) {
      record.points.push_back(
          make_point(config.p_grid[p_idx], static_cast<double>(config.depths[d_idx]),
                     values[d_idx * config.p_grid.size() + p_idx],
                     config.batch_count));
    }
  }
  return record;
}

}  // namespace rcq
