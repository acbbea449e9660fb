#include "rcq/scaling_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace rcq {

namespace {

struct InnerFit {
  double a = 0.0, b = 0.0, c = 0.0;
  double mse = std::numeric_limits<double>::infinity();
};

// Closed-form least squares of y = a + b x + c x^2 for fixed (p_c, lambda).
InnerFit inner_least_squares(const std::vector<FitPoint>& pts, double p_c,
                             double lambda) {
  double s[5] = {0, 0, 0, 0, 0};
  double ty = 0, txy = 0, tx2y = 0;
  for (const auto& pt : pts) {
    const double x = std::pow(pt.scale, lambda) * (pt.p - p_c);
    double xp = 1.0;
    for (int k = 0; k <= 4; ++k) {
      s[k] += xp;
      xp *= x;
    }
    ty += pt.estimate;
    txy += x * pt.estimate;
    tx2y += x * x * pt.estimate;
  }
  double m[3][4] = {
      {s[0], s[1], s[2], ty},
      {s[1], s[2], s[3], txy},
      {s[2], s[3], s[4], tx2y},
  };
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) {
        pivot = r;
      }
    }
    if (std::fabs(m[pivot][col]) < 1e-14) {
      return {};
    }
    std::swap(m[col], m[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r != col) {
        const double f = m[r][col] / m[col][col];
        for (int cc = col; cc < 4; ++cc) {
          m[r][cc] -= f * m[col][cc];
        }
      }
    }
  }
  InnerFit fit;
  fit.a = m[0][3] / m[0][0];
  fit.b = m[1][3] / m[1][1];
  fit.c = m[2][3] / m[2][2];
  double mse = 0.0;
  for (const auto& pt : pts) {
    const double x = std::pow(pt.scale, lambda) * (pt.p - p_c);
    const double pred = fit.a + fit.b * x + fit.c * x * x;
    mse += (pt.estimate - pred) * (pt.estimate - pred);
  }
  fit.mse = mse / static_cast<double>(pts.size());
  return fit;
}

struct Candidate {
  double p_c = 0.0;
  double lambda = 0.0;
  double mse = std::numeric_limits<double>::infinity();
};

Candidate nelder_mead(const std::vector<FitPoint>& pts, Candidate start,
                      double step_pc, double step_lambda) {
  auto eval = [&](double pc, double lam) {
    if (lam < 0.01 || lam > 10.0) {
      return std::numeric_limits<double>::infinity();
    }
    return inner_least_squares(pts, pc, lam).mse;
  };
  struct Vertex {
    double pc, lam, f;
  };
  std::vector<Vertex> simplex = {
      {start.p_c, start.lambda, eval(start.p_c, start.lambda)},
      {start.p_c + step_pc, start.lambda, eval(start.p_c + step_pc, start.lambda)},
      {start.p_c, start.lambda + step_lambda,
       eval(start.p_c, start.lambda + step_lambda)},
  };
  for (int iter = 0; iter < 400; ++iter) {
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    if (simplex[2].f - simplex[0].f <
        1e-16 * (1.0 + std::fabs(simplex[0].f))) {
      break;
    }
    const double cx = (simplex[0].pc + simplex[1].pc) / 2;
    const double cl = (simplex[0].lam + simplex[1].lam) / 2;
    const double rx = cx + (cx - simplex[2].pc);
    const double rl = cl + (cl - simplex[2].lam);
    const double fr = eval(rx, rl);
    if (fr < simplex[0].f) {
      const double ex = cx + 2 * (cx - simplex[2].pc);
      const double el = cl + 2 * (cl - simplex[2].lam);
      const double fe = eval(ex, el);
      simplex[2] = fe < fr ? Vertex{ex, el, fe} : Vertex{rx, rl, fr};
    } else if (fr < simplex[1].f) {
      simplex[2] = {rx, rl, fr};
    } else {
      const double kx = cx + 0.5 * (simplex[2].pc - cx);
      const double kl = cl + 0.5 * (simplex[2].lam - cl);
      const double fk = eval(kx, kl);
      if (fk < simplex[2].f) {
        simplex[2] = {kx, kl, fk};
      } else {
        for (int i = 1; i < 3; ++i) {
          simplex[i].pc = simplex[0].pc + 0.5 * (simplex[i].pc - simplex[0].pc);
          simplex[i].lam = simplex[0].lam + 0.5 * (simplex[i].lam - simplex[0].lam);
          simplex[i].f = eval(simplex[i].pc, simplex[i].lam);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(),
            [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return {simplex[0].pc, simplex[0].lam, simplex[0].f};
}

std::vector<FitPoint> window_filter(const std::vector<FitPoint>& points, double lo,
                                    double hi) {
  std::vector<FitPoint> kept;
  for (const auto& pt : points) {
    if (pt.p >= lo - 1e-12 && pt.p <= hi + 1e-12) {
      kept.push_back(pt);
    }
  }
  return kept;
}

void validate_points(const std::vector<FitPoint>& pts) {
  std::set<double> scales;
  std::set<double> ps;
  for (const auto& pt : pts) {
    scales.insert(pt.scale);
    ps.insert(pt.p);
  }
  if (scales.size() < 2) {
    throw std::invalid_argument("scaling fit needs >= 2 distinct scale values");
  }
  if (ps.size() < 4) {
    throw std::invalid_argument("scaling fit needs >= 4 distinct p values in window");
  }
}

Candidate fit_candidate(const std::vector<FitPoint>& pts) {
  double p_lo = pts[0].p, p_hi = pts[0].p;
  for (const auto& pt : pts) {
    p_lo = std::min(p_lo, pt.p);
    p_hi = std::max(p_hi, pt.p);
  }
  Candidate best;
  const int npc = 49, nlam = 36;
  for (int i = 0; i <= npc; ++i) {
    const double pc = p_lo + (p_hi - p_lo) * i / npc;
    for (int j = 0; j <= nlam; ++j) {
      const double lam = 0.15 + (3.0 - 0.15) * j / nlam;
      const double mse = inner_least_squares(pts, pc, lam).mse;
      if (mse < best.mse) {
        best = {pc, lam, mse};
      }
    }
  }
  best = nelder_mead(pts, best, (p_hi - p_lo) / npc, 0.08);
  return best;
}

ScalingFit fit_from_candidate(const std::vector<FitPoint>& pts, const Candidate& cand,
                              double window_lo, double window_hi) {
  const InnerFit inner = inner_least_squares(pts, cand.p_c, cand.lambda);
  ScalingFit fit;
  fit.p_c = cand.p_c;
  fit.lambda = cand.lambda;
  fit.a = inner.a;
  fit.b = inner.b;
  fit.c = inner.c;
  fit.residual = inner.mse;
  fit.window_lo = window_lo;
  fit.window_hi = window_hi;
  std::set<double> ps;
  for (const auto& pt : pts) {
    ps.insert(pt.p);
  }
  fit.kept_p.assign(ps.begin(), ps.end());
  return fit;
}

std::vector<FitPoint> record_points(const ExperimentRecord& record,
                                    int leave_out_batch) {
  std::vector<FitPoint> pts;
  pts.reserve(record.points.size());
  for (const auto& pt : record.points) {
    FitPoint f{pt.p, pt.scale, pt.estimate};
    if (leave_out_batch >= 0 && !pt.batch_means.empty()) {
      const std::size_t b = pt.batch_means.size();
      double sum = 0.0, weight = 0.0;
      for (std::size_t i = 0; i < b; ++i) {
        if (i == static_cast<std::size_t>(leave_out_batch)) {
          continue;
        }
        // Balanced contiguous batches: recover the batch size from the rule.
        std::size_t count = 0;
        for (std::size_t t = 0; t < pt.trials; ++t) {
          if (batch_of_trial(t, pt.trials, b) == i) {
            ++count;
          }
        }
        sum += pt.batch_means[i] * static_cast<double>(count);
        weight += static_cast<double>(count);
      }
      if (weight > 0) {
        f.estimate = sum / weight;
      }
    }
    pts.push_back(f);
  }
  return pts;
}

}  // namespace

ScalingFit fit_scaling_ansatz(const std::vector<FitPoint>& points, double window_lo,
                              double window_hi) {
  auto pts = window_filter(points, window_lo, window_hi);
  if (pts.empty()) {
    throw std::invalid_argument("no points in fit window");
  }
  validate_points(pts);
  return fit_from_candidate(pts, fit_candidate(pts), window_lo, window_hi);
}

double jackknife_pc(const ExperimentRecord& record, const ScalingFit& base) {
  const std::size_t b = record.batch_count;
  if (b < 2) {
    throw std::invalid_argument("jackknife needs at least 2 batches");
  }
  std::vector<double> replicas;
  replicas.reserve(b);
  for (std::size_t i = 0; i < b; ++i) {
    auto pts = window_filter(record_points(record, static_cast<int>(i)),
                             base.window_lo, base.window_hi);
    // Restrict to the p values the base fit kept.
    std::vector<FitPoint> kept;
    for (const auto& pt : pts) {
      for (double p : base.kept_p) {
        if (std::fabs(pt.p - p) < 1e-12) {
          kept.push_back(pt);
          break;
        }
      }
    }
    Candidate warm{base.p_c, base.lambda, 0.0};
    Candidate refined = nelder_mead(kept, warm, 5e-4, 0.02);
    replicas.push_back(refined.p_c);
  }
  double mean = 0.0;
  for (double r : replicas) {
    mean += r;
  }
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double r : replicas) {
    ss += (r - mean) * (r - mean);
  }
  return std::sqrt(ss * static_cast<double>(b - 1) / static_cast<double>(b));
}

ScalingFit fit_record(const ExperimentRecord& record, const FitOptions& options) {
  auto all = record_points(record, -1);
  ScalingFit fit = fit_scaling_ansatz(all, options.window_lo, options.window_hi);
  if (options.jackknife) {
    fit.sigma_pc = jackknife_pc(record, fit);
  }
  if (!(options.truncate_factor > 0.0) || !options.jackknife) {
    return fit;
  }
  // Deterministic end-point truncation: drop the extreme p whose removal
  // shrinks sigma(p_c) by more than the configured factor, while at least 4
  // distinct p values remain.
  for (;;) {
    if (fit.kept_p.size() <= 4) {
      break;
    }
    const double lo = fit.kept_p.front();
    const double hi = fit.kept_p.back();
    ScalingFit best_candidate;
    double best_sigma = std::numeric_limits<double>::infinity();
    for (int side = 0; side < 2; ++side) {
      const double new_lo = side == 0 ? std::nextafter(lo, 1.0) : fit.window_lo;
      const double new_hi = side == 1 ? std::nextafter(hi, 0.0) : fit.window_hi;
      try {
        ScalingFit cand = fit_scaling_ansatz(all, new_lo, new_hi);
        cand.sigma_pc = jackknife_pc(record, cand);
        if (cand.sigma_pc < best_sigma) {
          best_sigma = cand.sigma_pc;
          best_candidate = cand;
        }
      } catch (const std::invalid_argument&) {
        // too few points on that side; skip
      }
    }
    if (std::isfinite(best_sigma) && fit.sigma_pc > options.truncate_factor * best_sigma) {
      fit = best_candidate;
      continue;
    }
    break;
  }
  return fit;
}

double hashing_bound(double rate) {
  if (!(rate > 0.0 && rate < 1.0)) {
    throw std::invalid_argument("hashing bound defined for rates in (0, 1)");
  }
  auto f = [&](double p) {
    const double h2 = -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
    return 1.0 - h2 - p * std::log2(3.0) - rate;
  };
  double lo = 1e-15, hi = 0.75 - 1e-12;
  if (f(lo) < 0.0 || f(hi) > 0.0) {
    throw std::invalid_argument("no hashing-bound root for this rate");
  }
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

nlohmann::json scaling_fit_to_json(const ScalingFit& fit) {
  return nlohmann::json{
      {"schema", 1},
      {"p_c", fit.p_c},
      {"lambda", fit.lambda},
      {"A", fit.a},
      {"B", fit.b},
      {"C", fit.c},
      {"window", {fit.window_lo, fit.window_hi}},
      {"kept_p", fit.kept_p},
      {"residual_mse", fit.residual},
      {"sigma_p_c", fit.sigma_pc},
  };
}

}  // namespace rcq
