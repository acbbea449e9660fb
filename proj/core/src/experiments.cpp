#include "rcq/experiments.hpp"

#include <filesystem>
#include <set>
#include <stdexcept>

#include "rcq/decoders.hpp"
#include "rcq/erasure_protocol.hpp"
#include "rcq/parallel.hpp"
#include "rcq/scaling_fit.hpp"
#include "rcq/spacetime.hpp"

namespace rcq {

namespace {

PauliOperator sample_depolarizing(std::size_t n, double p, Rng& rng) {
  PauliOperator e(n);
  for (std::size_t q = 0; q < n; ++q) {
    if (!rng.bernoulli(p)) {
      continue;
    }
    switch (rng.bounded(3)) {
      case 0:
        e.set_x(q, true);
        break;
      case 1:
        e.set_x(q, true);
        e.set_z(q, true);
        break;
      default:
        e.set_z(q, true);
        break;
    }
  }
  e.set_sign_bit(false);
  return e;
}

}  // namespace

ExperimentRecord code_capacity_experiment(const CodeCapacityConfig& config) {
  if (config.decoder != "minweight" && config.decoder != "marginal") {
    throw std::invalid_argument("decoder must be minweight or marginal");
  }
  const bool marginal = config.decoder == "marginal";
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
                            Boundary::open, false};
    CircuitCode code = sample_circuit_code(params, rng);
    const std::size_t k = code.num_logicals();
    const PauliOperator error = sample_depolarizing(code.num_qubits(), p, rng);
    const BitVec s = syndrome(code, error);

    std::size_t failures = 0;
    if (marginal) {
      const MarginalDecodeResult decoded = marginal_decode(code, s, p);
      // True class of each logical relative to the same canonical error.
      PauliOperator residual_base = error * canonical_error(code, s);
      const auto true_bits = logical_class_bits(code, residual_base);
      for (std::size_t j = 0; j < k; ++j) {
        const auto cls = static_cast<std::uint8_t>(decoded.classes[j]);
        const bool x_bit = cls == 1 || cls == 2;
        const bool z_bit = cls == 3 || cls == 2;
        if (x_bit != true_bits[j].first || z_bit != true_bits[j].second) {
          ++failures;
        }
      }
    } else {
      const MinWeightDecodeResult decoded = minimum_weight_decode(code, s);
      PauliOperator residual = error * decoded.correction;
      const auto bits = logical_class_bits(code, residual);
      for (const auto& [x_bit, z_bit] : bits) {
        if (x_bit || z_bit) {
          ++failures;
        }
      }
    }
    values[point][t] = static_cast<double>(failures) / static_cast<double>(k);
  });
  ExperimentRecord record;
  record.kind = marginal ? "code-capacity-marginal" : "code-capacity-minweight";
  record.seed = config.seed;
  record.batch_count = config.batch_count;
  record.config = nlohmann::json{
      {"n", config.n},           {"rate", config.rate},
      {"depths", config.depths}, {"p_grid", config.p_grid},
      {"trials", config.trials}, {"decoder", config.decoder},
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

namespace {

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  if (j.contains(key)) {
    return j.at(key).get<T>();
  }
  return fallback;
}

ExperimentRecord dispatch(const nlohmann::json& config) {
  const std::string kind = config.at("kind").get<std::string>();
  if (kind == "code-capacity") {
    CodeCapacityConfig c;
    c.n = config.at("n").get<std::size_t>();
    c.rate = config.at("rate").get<double>();
    c.depths = config.at("depths").get<std::vector<std::size_t>>();
    c.p_grid = config.at("p_grid").get<std::vector<double>>();
    c.trials = config.at("trials").get<std::size_t>();
    c.decoder = get_or<std::string>(config, "decoder", "minweight");
    c.seed = config.at("seed").get<std::uint64_t>();
    c.batch_count = get_or<std::size_t>(config, "batch_count", 50);
    return code_capacity_experiment(c);
  }
  if (kind == "entropy") {
    EntropyExperimentConfig c;
    c.n = config.at("n").get<std::size_t>();
    c.rate = config.at("rate").get<double>();
    c.d = config.at("d").get<std::size_t>();
    c.q_max = config.at("q_max").get<std::size_t>();
    c.p_grid = config.at("p_grid").get<std::vector<double>>();
    c.trials = config.at("trials").get<std::size_t>();
    c.seed = config.at("seed").get<std::uint64_t>();
    c.batch_count = get_or<std::size_t>(config, "batch_count", 50);
    return entropy_density_experiment(c);
  }
  if (kind == "mutual-info") {
    MutualInfoConfig c;
    c.n = config.at("n").get<std::size_t>();
    c.rate = config.at("rate").get<double>();
    c.depths = config.at("depths").get<std::vector<std::size_t>>();
    c.qs = get_or<std::vector<std::size_t>>(config, "qs", {});
    c.rounds = config.at("rounds").get<std::size_t>();
    c.p_grid = config.at("p_grid").get<std::vector<double>>();
    c.trials = config.at("trials").get<std::size_t>();
    c.seed = config.at("seed").get<std::uint64_t>();
    c.batch_count = get_or<std::size_t>(config, "batch_count", 50);
    return mutual_info_experiment(c);
  }
  if (kind == "spacetime") {
    SpacetimeExperimentConfig c;
    c.n = config.at("n").get<std::size_t>();
    c.rate = config.at("rate").get<double>();
    c.depths = config.at("depths").get<std::vector<std::size_t>>();
    c.qs = get_or<std::vector<std::size_t>>(config, "qs", {});
    c.ec_rounds = config.at("ec_rounds").get<std::size_t>();
    c.p_grid = config.at("p_grid").get<std::vector<double>>();
    c.trials = config.at("trials").get<std::size_t>();
    c.seed = config.at("seed").get<std::uint64_t>();
    c.batch_count = get_or<std::size_t>(config, "batch_count", 50);
    return decode_experiment(c);
  }
  throw std::invalid_argument("unknown experiment kind: " + kind);
}

nlohmann::json spacetime_diagnostics(const nlohmann::json& config) {
  Rng rng(config.at("seed").get<std::uint64_t>(), 0);
  CodeParams params{config.at("n").get<std::size_t>(),
                    config.at("rate").get<double>(),
                    config.at("depths").get<std::vector<std::size_t>>().front(),
                    Boundary::periodic, true};
  CircuitCode code = sample_circuit_code(params, rng);
  auto qs = get_or<std::vector<std::size_t>>(config, "qs", {});
  const std::size_t q = qs.empty()
                            ? config.at("depths").get<std::vector<std::size_t>>().front()
                            : qs.front();
  SpacetimeProtocol proto =
      build_steane_protocol(code, q, config.at("ec_rounds").get<std::size_t>());
  const OutcomeCode oc = build_outcome_code(proto);
  std::size_t exposures = 0;
  for (const auto& level : proto.exposed) {
    exposures += level.size();
  }
  return nlohmann::json{
      {"qubits", proto.circuit.n},
      {"levels", proto.circuit.num_levels()},
      {"locations", proto.circuit.num_locations()},
      {"exposed_locations", exposures},
      {"measurement_bits", proto.num_measurement_bits},
      {"outcome_bits", oc.bit_count},
      {"checks", proto.num_checks()},
      {"spacetime_stabilizers", proto.num_checks()},
      {"data_logicals", proto.data_logicals.size()},
  };
}

}  // namespace

RunOutputs run_experiment_config(const nlohmann::json& config,
                                 const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  RunOutputs outputs;
  outputs.record_csv = (fs::path(out_dir) / "record.csv").string();
  outputs.manifest_json = (fs::path(out_dir) / "manifest.json").string();
  std::vector<std::string> written;
  try {
    ExperimentRecord record = dispatch(config);
    write_record_csv(record, outputs.record_csv);
    written.push_back(outputs.record_csv);
    write_manifest(record, outputs.manifest_json);
    written.push_back(outputs.manifest_json);

    // Fit when the record has enough structure.
    std::set<double> scales, ps;
    for (const auto& pt : record.points) {
      scales.insert(pt.scale);
      ps.insert(pt.p);
    }
    if (scales.size() >= 2 && ps.size() >= 4) {
      FitOptions options;
      options.window_lo = *ps.begin();
      options.window_hi = *ps.rbegin();
      options.truncate_factor = get_or<double>(config, "truncate_factor", 2.0);
      const ScalingFit fit = fit_record(record, options);
      outputs.fit_json = (fs::path(out_dir) / "fit.json").string();
      write_file_atomic(outputs.fit_json, scaling_fit_to_json(fit).dump(2) + "\n");
      written.push_back(outputs.fit_json);
    }
    if (record.kind == "spacetime") {
      outputs.diagnostics_json = (fs::path(out_dir) / "diagnostics.json").string();
      write_file_atomic(outputs.diagnostics_json,
                        spacetime_diagnostics(config).dump(2) + "\n");
      written.push_back(outputs.diagnostics_json);
    }
  } catch (...) {
    for (const auto& path : written) {
      std::error_code ec;
      fs::remove(path, ec);
    }
    throw;
  }
  return outputs;
}

}  // namespace rcq
