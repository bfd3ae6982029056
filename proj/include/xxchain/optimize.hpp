#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "xxchain/concurrence.hpp"
#include "xxchain/errors.hpp"
#include "xxchain/pipeline.hpp"
#include "xxchain/scenarios.hpp"
#include "xxchain/sweep.hpp"
#include "xxchain/thermal.hpp"

namespace xxchain {

struct SearchInterval {
  double lo = 0.0;
  double hi = 0.0;

  SearchInterval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || lo > hi || lo < 0.0)
      throw InputError("search interval [" + std::to_string(lo_) + ", " + std::to_string(hi_) +
                       "] must be finite with 0 <= lo <= hi");
  }
  static SearchInterval fixed(double x) { return SearchInterval(x, x); }
  bool degenerate() const { return lo == hi; }
};

struct OptimizeResult {
  double best_j = 0.0;
  double best_t = 0.0;
  double best_value = 0.0;
  long evaluations = 0;
};

namespace detail {

// Interval below which refinement stops.
inline constexpr double kRefineWidth = 1e-6;

// Golden-section ascent on [a, b]; best point found is reported through the
// objective's own best-so-far tracking, so endpoint maxima (already sampled
// by the coarse grid) are never lost.
inline void golden_refine(const std::function<double(double)>& f, double a, double b) {
  if (b - a <= kRefineWidth) return;
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > kRefineWidth) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
}

}  // namespace detail

// Heuristic maximizer: 61-point coarse grid per axis, then golden-section
// refinement of each axis around the best point until the interval is below
// 1e-6. No global-optimality guarantee — the coarse grid is what protects
// against multimodality.
inline OptimizeResult maximize_concurrence(const Scenario& scenario, std::pair<int, int> pair,
                                           SearchInterval j_bounds, SearchInterval t_bounds,
                                           int grid_points = 61) {
  if (!scenario.coupling_rule) throw InputError("maximize_concurrence: scenario has no coupling rule");
  if (grid_points < 2) throw InputError("maximize_concurrence: grid_points must be >= 2");

  OptimizeResult best;
  best.best_j = j_bounds.lo;
  best.best_t = t_bounds.lo;
  best.best_value = -1.0;

  const auto objective = [&](double j, double t) {
    const Matrix rho = thermal_chain_state(scenario.coupling_rule(j), Temperature(t));
    const double c = concurrence(partial_trace_pair(rho, pair.first, pair.second)).value;
    ++best.evaluations;
    if (c > best.best_value) {
      best.best_value = c;
      best.best_j = j;
      best.best_t = t;
    }
    return c;
  };

  const std::vector<double> j_coarse =
      j_bounds.degenerate() ? std::vector<double>{j_bounds.lo}
                            : linspace(j_bounds.lo, j_bounds.hi, grid_points);
  const std::vector<double> t_coarse =
      t_bounds.degenerate() ? std::vector<double>{t_bounds.lo}
                            : linspace(t_bounds.lo, t_bounds.hi, grid_points);
  for (double j : j_coarse)
    for (double t : t_coarse) objective(j, t);

  if (!j_bounds.degenerate()) {
    const double step = (j_bounds.hi - j_bounds.lo) / (grid_points - 1);
    const double t_fixed = best.best_t;
    detail::golden_refine([&](double j) { return objective(j, t_fixed); },
                          std::max(j_bounds.lo, best.best_j - step),
                          std::min(j_bounds.hi, best.best_j + step));
  }
  if (!t_bounds.degenerate()) {
    const double step = (t_bounds.hi - t_bounds.lo) / (grid_points - 1);
    const double j_fixed = best.best_j;
    detail::golden_refine([&](double t) { return objective(j_fixed, t); },
                          std::max(t_bounds.lo, best.best_t - step),
                          std::min(t_bounds.hi, best.best_t + step));
  }
  return best;
}

}  // namespace xxchain
