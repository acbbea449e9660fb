#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace rcq {

/// One Monte Carlo data point: estimate at (p, scale) where scale is the
/// varied size parameter (encoding depth d or distillation rounds q).
struct ExperimentPoint {
  double p = 0.0;
  double scale = 0.0;
  double estimate = 0.0;
  double stderr_value = 0.0;
  std::size_t trials = 0;
  std::vector<double> batch_means;
};

/// Append-only, self-describing record of one experiment run.
struct ExperimentRecord {
  int schema = 1;
  std::string kind;
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::size_t batch_count = 50;
  nlohmann::json config;
  std::vector<ExperimentPoint> points;
};

/// Batch id of trial t when T trials split into B balanced contiguous
/// batches.
std::size_t batch_of_trial(std::size_t t, std::size_t trials, std::size_t batches);

/// Builds a point from per-trial values: mean, stderr = sample std / sqrt(T),
/// and B contiguous batch means.
ExperimentPoint make_point(double p, double scale, const std::vector<double>& values,
                           std::size_t batches);

/// FNV-1a hash of the canonical (sorted-key) dump of a config object.
std::uint64_t config_hash(const nlohmann::json& config);

/// Deterministic float formatting used in every output file ("%.17g",
/// round-trip exact).
std::string format_double(double v);

/// CSV with header schema,kind,config_hash,seed,p,scale,estimate,stderr,
/// trials,batch_means; batch means are ';'-joined inside one field. Written
/// atomically (temp file + rename).
void write_record_csv(const ExperimentRecord& record, const std::string& path);
ExperimentRecord read_record_csv(const std::string& path);

/// Replay manifest: schema, version, kind, seed, config echo, config hash.
void write_manifest(const ExperimentRecord& record, const std::string& path);

/// Atomic small-file write helper.
void write_file_atomic(const std::string& path, const std::string& contents);

}  // namespace rcq
