#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "silverprox/problem.hpp"
#include "silverprox/trace.hpp"

namespace silverprox {

/// Proximal gradient descent x_{t+1} = prox_{a_t h}(x_t - a_t grad f(x_t)),
/// with a_t = steps[t] / M. Subgradients are recovered from the update as
/// s_{t+1} = (x_t - a_t g_t - x_{t+1}) / a_t.
template <class S>
Trace<S> proximal_gd_run(const ProblemInstance<S>& problem, const std::vector<S>& steps, const Vec<S>& x0) {
  using Traits = ScalarTraits<S>;
  if (steps.empty()) throw std::invalid_argument("proximal_gd_run: empty stepsize schedule");
  for (const auto& a : steps) {
    if (!(a > S(0))) throw std::invalid_argument("proximal_gd_run: stepsizes must be positive");
  }
  if (x0.size() != problem.dimension) throw std::invalid_argument("proximal_gd_run: x0 has wrong dimension");

  const auto& f = problem.smooth;
  const auto& h = problem.nonsmooth;

  auto require_finite = [](const Vec<S>& v, std::size_t iter) {
    if constexpr (!Traits::exact) {
      for (const auto& c : v) {
        if (!Traits::is_finite(c)) {
          throw std::runtime_error("proximal_gd_run: non-finite value at iteration " + std::to_string(iter));
        }
      }
    }
  };

  Trace<S> t;
  t.smoothness = f.smoothness;
  t.steps.reserve(steps.size());
  for (const auto& a : steps) t.steps.push_back(a / f.smoothness);

  const std::size_t n = steps.size();
  t.x.reserve(n + 1);
  t.g.reserve(n + 1);
  t.s.reserve(n + 1);
  t.x.push_back(x0);
  t.g.push_back(f.gradient(x0));
  t.s.emplace_back();
  t.f.push_back(f.value(x0));
  t.h.push_back(h.value(x0));
  require_finite(t.g.back(), 0);

  for (std::size_t i = 0; i < n; ++i) {
    const S& a = t.steps[i];
    Vec<S> y = t.x[i];
    axpy(S(-a), t.g[i], y);
    Vec<S> next = h.prox(y, a);
    Vec<S> sub_grad = scaled(S(S(1) / a), sub(y, next));
    require_finite(next, i + 1);
    t.g.push_back(f.gradient(next));
    require_finite(t.g.back(), i + 1);
    t.f.push_back(f.value(next));
    t.h.push_back(h.value(next));
    if constexpr (!Traits::exact) {
      if (!Traits::is_finite(t.f.back()) || !Traits::is_finite(t.h.back())) {
        throw std::runtime_error("proximal_gd_run: non-finite value at iteration " + std::to_string(i + 1));
      }
    }
    t.s.push_back(std::move(sub_grad));
    t.x.push_back(std::move(next));
  }

  if (problem.optimum) {
    OptimumData<S> opt;
    opt.x = *problem.optimum;
    opt.g = f.gradient(opt.x);
    opt.s = scaled(S(-1), opt.g);
    opt.f = f.value(opt.x);
    opt.h = h.value(opt.x);
    t.optimum = std::move(opt);
  }
  return t;
}

/// Gap F(x_i) - F_* along a trace; requires a known optimum.
template <class S>
S objective_gap(const Trace<S>& t, std::size_t i) {
  return t.objective(i) - t.objective(kStar);
}

}  // namespace silverprox
