#pragma once

// Strongly convex restarts: repeat silver-schedule epochs, each sized so the
// certificate bound plus m-strong convexity halves the distance to x_*.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "silverprox/rates.hpp"
#include "silverprox/schedule.hpp"
#include "silverprox/solver.hpp"

namespace silverprox {

struct EpochRecord {
  int k = 0;
  std::size_t steps = 0;
  double guaranteed_distance = 0;     // bound on |x_end - x_*| after the epoch
  std::optional<double> distance_start;  // measured, when x_* is known
  std::optional<double> distance_end;
};

struct RestartResult {
  Vec<double> x;
  std::size_t total_iterations = 0;
  double initial_distance_bound = 0;
  std::vector<EpochRecord> epochs;
};

/// Smallest k with 2 kappa C_k <= 1/4, where C_k = rho / (sqrt2 (4 rho^k - 2)).
/// Then F(x_n) - F_* <= C_k M d^2 and F - F_* >= m/2 |x - x_*|^2 give
/// |x_n - x_*| <= d / 2.
inline int restart_epoch_k(double kappa) {
  if (!(kappa >= 1.0)) throw std::invalid_argument("restart_epoch_k: condition number must be >= 1");
  for (int k = 1; k <= 60; ++k) {
    if (2.0 * kappa * to_float(rate_from_certificate(k)) <= 0.25) return k;
  }
  throw std::overflow_error("restart_epoch_k: condition number too large");
}

/// Restarted silver-schedule proximal GD for m-strongly convex f. Stops once
/// the guaranteed distance to x_* is at most epsilon.
///
/// The starting distance is |x0 - x_*| when the instance knows x_*; otherwise
/// kappa |x0 - T(x0)| with T the 1/M prox-gradient map, which is a
/// (1 - 1/kappa)-contraction.
inline RestartResult restart_solve(const ProblemInstance<double>& problem, double epsilon, const Vec<double>& x0) {
  const double m = problem.smooth.strong_convexity;
  const double big_m = problem.smooth.smoothness;
  if (!(m > 0)) throw std::invalid_argument("restart_solve: strong convexity m must be positive");
  if (!(epsilon > 0)) throw std::invalid_argument("restart_solve: epsilon must be positive");
  if (x0.size() != problem.dimension) throw std::invalid_argument("restart_solve: x0 has wrong dimension");

  const double kappa = std::max(1.0, big_m / m);
  const int k = restart_epoch_k(kappa);
  const std::vector<double> steps = silver_steps_float(horizon(k));

  RestartResult result;
  result.x = x0;
  if (problem.optimum) {
    result.initial_distance_bound = norm(sub(x0, *problem.optimum));
  } else {
    Vec<double> y = x0;
    axpy(-1.0 / big_m, problem.smooth.gradient(x0), y);
    result.initial_distance_bound = kappa * norm(sub(x0, problem.nonsmooth.prox(y, 1.0 / big_m)));
  }

  double guaranteed = result.initial_distance_bound;
  while (guaranteed > epsilon) {
    EpochRecord epoch;
    epoch.k = k;
    epoch.steps = steps.size();
    if (problem.optimum) epoch.distance_start = norm(sub(result.x, *problem.optimum));
    const Trace<double> trace = proximal_gd_run(problem, steps, result.x);
    result.x = trace.x.back();
    result.total_iterations += steps.size();
    guaranteed *= 0.5;
    epoch.guaranteed_distance = guaranteed;
    if (problem.optimum) epoch.distance_end = norm(sub(result.x, *problem.optimum));
    result.epochs.push_back(epoch);
  }
  return result;
}

}  // namespace silverprox
