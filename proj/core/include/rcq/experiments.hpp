#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rcq/records.hpp"

namespace rcq {

struct CodeCapacityConfig {
  std::size_t n = 50;
  double rate = 0.25;
  std::vector<std::size_t> depths;
  std::vector<double> p_grid;
  std::size_t trials = 1000;
  std::string decoder = "minweight";  // or "marginal"
  std::uint64_t seed = 1;
  std::size_t batch_count = 50;
  unsigned workers = 0;
};

/// Code-capacity sweep: per trial, a fresh open-boundary stabilizer code and
/// an i.i.d. depolarizing error are sampled, the syndrome decoded, and the
/// per-logical failure fraction recorded. Points are keyed (p, d) and the
/// estimate is the logical-qubit-averaged failure rate.
ExperimentRecord code_capacity_experiment(const CodeCapacityConfig& config);

struct RunOutputs {
  std::string record_csv;
  std::string manifest_json;
  std::string fit_json;  // empty when the record cannot be fitted
  std::string diagnostics_json;  // spacetime runs only
};

/// Dispatches a config {"kind": ...} to the named experiment and writes the
/// record CSV, replay manifest, and (when the record spans enough scales and
/// p values) a scaling-fit JSON into out_dir. Cleans up partial outputs on
/// failure.
RunOutputs run_experiment_config(const nlohmann::json& config,
                                 const std::string& out_dir);

}  // namespace rcq
