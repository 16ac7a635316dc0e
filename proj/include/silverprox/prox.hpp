#pragma once

// Closed-form proximal operators: zero, weighted l1, box, nonnegative
// orthant ("halfline" in 1-D) and Euclidean ball.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "silverprox/problem.hpp"

namespace silverprox {

namespace detail {

template <class S>
double as_double(const S& x) {
  return ScalarTraits<S>::to_double(x);
}

inline bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace detail

template <class S>
ProxOracle<S> prox_zero() {
  ProxOracle<S> h;
  h.name = "zero";
  h.value = [](const Vec<S>&) { return S(0); };
  h.prox = [](const Vec<S>& x, const S&) { return x; };
  h.in_subdifferential = [](const Vec<S>&, const Vec<S>& s, double tol) {
    return std::all_of(s.begin(), s.end(), [&](const S& v) { return std::abs(detail::as_double(v)) <= tol; });
  };
  return h;
}

/// h(x) = w |x|_1, prox is componentwise soft-thresholding by alpha * w.
template <class S>
ProxOracle<S> prox_l1(S weight) {
  if (weight < S(0)) throw std::invalid_argument("prox l1: weight must be nonnegative");
  ProxOracle<S> h;
  h.name = "l1";
  h.value = [weight](const Vec<S>& x) {
    S total{0};
    for (const auto& v : x) total += v < S(0) ? S(-v) : v;
    return S(weight * total);
  };
  h.prox = [weight](const Vec<S>& x, const S& alpha) {
    const S t = alpha * weight;
    Vec<S> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] > t) {
        z[i] = x[i] - t;
      } else if (x[i] < S(-t)) {
        z[i] = x[i] + t;
      } else {
        z[i] = S(0);
      }
    }
    return z;
  };
  const double w = detail::as_double(weight);
  h.in_subdifferential = [w](const Vec<S>& x, const Vec<S>& s, double tol) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double si = detail::as_double(s[i]);
      if (x[i] == S(0)) {
        if (std::abs(si) > w + tol) return false;
      } else if (!detail::near(si, x[i] > S(0) ? w : -w, tol)) {
        return false;
      }
    }
    return true;
  };
  return h;
}

/// Indicator of the box [lower, upper]; prox is the componentwise clamp.
template <class S>
ProxOracle<S> prox_box(Vec<S> lower, Vec<S> upper) {
  if (lower.size() != upper.size()) throw std::invalid_argument("prox box: bound dimensions differ");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (upper[i] < lower[i]) throw std::invalid_argument("prox box: lower bound exceeds upper bound");
  }
  ProxOracle<S> h;
  h.name = "box";
  h.value = [lower, upper](const Vec<S>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i] || x[i] > upper[i]) return ScalarTraits<S>::infinity();
    }
    return S(0);
  };
  h.prox = [lower, upper](const Vec<S>& x, const S&) {
    Vec<S> z(x);
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] < lower[i]) z[i] = lower[i];
      if (z[i] > upper[i]) z[i] = upper[i];
    }
    return z;
  };
  h.in_subdifferential = [lower = std::move(lower), upper = std::move(upper)](
                             const Vec<S>& x, const Vec<S>& s, double tol) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lower[i] || x[i] > upper[i]) return false;
      const double si = detail::as_double(s[i]);
      const bool at_lo = x[i] == lower[i];
      const bool at_hi = x[i] == upper[i];
      if (at_lo && at_hi) continue;  // degenerate interval: normal cone is everything
      if (at_lo && si > tol) return false;
      if (at_hi && si < -tol) return false;
      if (!at_lo && !at_hi && std::abs(si) > tol) return false;
    }
    return true;
  };
  return h;
}

/// Indicator of {x >= 0}.
template <class S>
ProxOracle<S> prox_halfline() {
  ProxOracle<S> h;
  h.name = "halfline";
  h.value = [](const Vec<S>& x) {
    for (const auto& v : x) {
      if (v < S(0)) return ScalarTraits<S>::infinity();
    }
    return S(0);
  };
  h.prox = [](const Vec<S>& x, const S&) {
    Vec<S> z(x);
    for (auto& v : z) {
      if (v < S(0)) v = S(0);
    }
    return z;
  };
  h.in_subdifferential = [](const Vec<S>& x, const Vec<S>& s, double tol) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < S(0)) return false;
      const double si = detail::as_double(s[i]);
      if (x[i] == S(0) ? si > tol : std::abs(si) > tol) return false;
    }
    return true;
  };
  return h;
}

/// Indicator of the Euclidean ball of the given radius around 0.
/// Floating point only: the projection needs a square root.
inline ProxOracle<double> prox_ball(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("prox ball: radius must be positive");
  ProxOracle<double> h;
  h.name = "ball";
  h.value = [radius](const Vec<double>& x) {
    return norm(x) <= radius * (1.0 + 1e-12) ? 0.0 : ScalarTraits<double>::infinity();
  };
  h.prox = [radius](const Vec<double>& x, const double&) {
    const double r = norm(x);
    return r <= radius ? x : scaled(radius / r, x);
  };
  h.in_subdifferential = [radius](const Vec<double>& x, const Vec<double>& s, double tol) {
    const double r = norm(x);
    if (r > radius * (1.0 + 1e-12)) return false;
    const double sn = norm(s);
    if (r < radius * (1.0 - 1e-12)) return sn <= tol;
    // Normal cone at a boundary point: nonnegative multiples of x.
    const double t = dot(s, x) / (r * r);
    return t >= -tol && norm(sub(s, scaled(t, x))) <= tol * (1.0 + sn);
  };
  return h;
}

template <class S>
struct ProxParams {
  S weight{1};        // l1
  Vec<S> lower;       // box
  Vec<S> upper;       // box
  double radius = 1;  // ball
};

/// Builds a prox oracle by name: zero | l1 | box | halfline | ball.
template <class S>
ProxOracle<S> make_prox(std::string_view name, const ProxParams<S>& params = {}) {
  if (name == "zero") return prox_zero<S>();
  if (name == "l1") return prox_l1<S>(params.weight);
  if (name == "box") return prox_box<S>(params.lower, params.upper);
  if (name == "halfline") return prox_halfline<S>();
  if (name == "ball") {
    if constexpr (ScalarTraits<S>::exact) {
      throw std::invalid_argument("prox ball is not available in exact mode");
    } else {
      return prox_ball(params.radius);
    }
  }
  throw std::invalid_argument("unknown prox oracle \"" + std::string(name) + "\"");
}

}  // namespace silverprox
