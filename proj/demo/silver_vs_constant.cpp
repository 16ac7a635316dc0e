// Compares silver and unit constant stepsizes on a random lasso problem and
// on the one-dimensional hard instance.

#include <cstdio>
#include <random>

#include "silverprox/instances.hpp"
#include "silverprox/rates.hpp"
#include "silverprox/schedule.hpp"
#include "silverprox/solver.hpp"

using namespace silverprox;

int main() {
  std::mt19937_64 rng(42);
  const auto inst = random_composite_instance(NonsmoothKind::l1, 20, rng);
  const double dist2 = squared_norm(sub(inst.x0, *inst.problem.optimum));

  std::printf("random lasso, dim 20, |x0 - x*|^2 = %.3f\n", dist2);
  std::printf("%3s %5s %14s %14s %14s\n", "k", "n", "silver gap", "constant gap", "silver bound");
  for (int k = 1; k <= 8; ++k) {
    const std::size_t n = horizon(k);
    const auto silver = proximal_gd_run(inst.problem, silver_steps_float(n), inst.x0);
    const auto constant = proximal_gd_run(inst.problem, constant_steps(n), inst.x0);
    std::printf("%3d %5zu %14.6e %14.6e %14.6e\n", k, n, objective_gap(silver, n), objective_gap(constant, n),
                rate_bound(k, inst.problem.smooth.smoothness, dist2).certificate);
  }

  std::printf("\nhard instance f(x) = a x, h = indicator of x >= 0 (exact arithmetic)\n");
  for (int k = 1; k <= 6; ++k) {
    const auto lb = lower_bound_instance<RadicalScalar>(k);
    const auto t = proximal_gd_run(lb.problem, silver_schedule(k), lb.x0);
    std::printf("k=%d x_n = %s gap = %s\n", k, t.x.back()[0].to_string().c_str(),
                objective_gap(t, t.iterations()).to_string().c_str());
  }
}
