#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "silverprox/linalg.hpp"

namespace silverprox {

/// Convex, M-smooth part f (optionally m-strongly convex).
template <class S>
struct SmoothOracle {
  std::function<S(const Vec<S>&)> value;
  std::function<Vec<S>(const Vec<S>&)> gradient;
  S smoothness{1};
  S strong_convexity{0};  // 0 means not strongly convex
};

/// Convex part h, accessed only through its proximal operator
/// prox(x, alpha) = argmin_z h(z) + |z - x|^2 / (2 alpha).
template <class S>
struct ProxOracle {
  std::string name;
  std::function<S(const Vec<S>&)> value;  // +inf (float mode) outside dom h
  std::function<Vec<S>(const Vec<S>&, const S&)> prox;
  // Membership s in the subdifferential of h at x, up to an absolute tolerance.
  std::function<bool(const Vec<S>&, const Vec<S>&, double)> in_subdifferential;
};

template <class S>
struct ProblemInstance {
  std::string name;
  std::size_t dimension = 0;
  SmoothOracle<S> smooth;
  ProxOracle<S> nonsmooth;
  std::optional<Vec<S>> optimum;
  std::optional<S> optimal_value;

  S objective(const Vec<S>& x) const { return smooth.value(x) + nonsmooth.value(x); }

  // s_* = -grad f(x_*), the subgradient certifying optimality.
  Vec<S> optimal_subgradient() const {
    if (!optimum) throw std::logic_error(name + ": optimum is not known");
    return scaled(S(-1), smooth.gradient(*optimum));
  }
};

/// g(x_*) + s_* = 0 with s_* in the subdifferential of h at x_*.
template <class S>
bool optimum_is_stationary(const ProblemInstance<S>& p, double tol = 1e-9) {
  if (!p.optimum) return false;
  return p.nonsmooth.in_subdifferential(*p.optimum, p.optimal_subgradient(), tol);
}

// Spot checks on random pairs; used to validate generated instances.

inline bool spot_check_lipschitz(const SmoothOracle<double>& f, std::size_t dim, std::mt19937_64& rng,
                                 int samples = 32, double tol = 1e-9) {
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int t = 0; t < samples; ++t) {
    Vec<double> x(dim), y(dim);
    for (auto& v : x) v = gauss(rng);
    for (auto& v : y) v = gauss(rng);
    const double lhs = norm(sub(f.gradient(x), f.gradient(y)));
    if (lhs > f.smoothness * norm(sub(x, y)) + tol) return false;
  }
  return true;
}

inline bool spot_check_nonexpansive(const ProxOracle<double>& h, std::size_t dim, double alpha,
                                    std::mt19937_64& rng, int samples = 32, double tol = 1e-9) {
  std::normal_distribution<double> gauss(0.0, 3.0);
  for (int t = 0; t < samples; ++t) {
    Vec<double> x(dim), y(dim);
    for (auto& v : x) v = gauss(rng);
    for (auto& v : y) v = gauss(rng);
    if (norm(sub(h.prox(x, alpha), h.prox(y, alpha))) > norm(sub(x, y)) + tol) return false;
  }
  return true;
}

}  // namespace silverprox
