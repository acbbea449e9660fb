#pragma once

#include <cstddef>
#include <vector>

#include "rcq/records.hpp"

namespace rcq {

/// Finite-size scaling fit of estimates y(p, scale) to the quadratic ansatz
/// y = A + B x + C x^2 with x = scale^lambda (p - p_c), minimizing mean
/// squared error over five parameters.
struct ScalingFit {
  double p_c = 0.0;
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double residual = 0.0;      // mean squared error at the optimum
  double sigma_pc = 0.0;      // jackknife standard deviation (0 until computed)
  std::vector<double> kept_p;  // p values inside the (possibly truncated) window
};

struct FitPoint {
  double p = 0.0;
  double scale = 0.0;
  double estimate = 0.0;
};

struct FitOptions {
  double window_lo = 0.0;
  double window_hi = 1.0;
  /// Truncation rule: an extreme-p value is dropped when keeping it inflates
  /// the jackknife sigma(p_c) by more than this factor. <= 0 disables.
  double truncate_factor = 2.0;
  bool jackknife = true;
};

/// Fits the ansatz over the window: coarse grid over (p_c, lambda) with the
/// inner (A, B, C) solved by linear least squares, then Nelder-Mead
/// refinement. Requires >= 2 distinct scales and >= 4 distinct p values in
/// the window.
ScalingFit fit_scaling_ansatz(const std::vector<FitPoint>& points, double window_lo,
                              double window_hi);

/// Jackknife standard deviation of p_c over the record's trial batches:
/// leave one batch out everywhere, refit (warm-started from `base`), and take
/// sigma^2 = (B-1)/B * sum_b (p_c^(b) - mean)^2.
double jackknife_pc(const ExperimentRecord& record, const ScalingFit& base);

/// Full pipeline: window filter, deterministic end-point truncation, fit and
/// jackknife. Batch data comes from the record.
ScalingFit fit_record(const ExperimentRecord& record, const FitOptions& options);

/// Depolarizing hashing bound: the p in (0, 3/4) with
/// 1 - h2(p) - p log2(3) = R, found by bisection to 1e-9.
double hashing_bound(double rate);

nlohmann::json scaling_fit_to_json(const ScalingFit& fit);

}  // namespace rcq
