#pragma once

// Small dense-vector helpers shared by the floating-point and exact paths.

#include <cassert>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "silverprox/radical.hpp"

namespace silverprox {

template <class S>
using Vec = std::vector<S>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static double from_radical(const RadicalScalar& x) { return to_float(x); }
  static double to_double(double x) { return x; }
  static double infinity() { return std::numeric_limits<double>::infinity(); }
  static bool is_finite(double x) { return std::isfinite(x); }
};

template <>
struct ScalarTraits<RadicalScalar> {
  static constexpr bool exact = true;
  static RadicalScalar from_radical(const RadicalScalar& x) { return x; }
  static double to_double(const RadicalScalar& x) { return to_float(x); }
  [[noreturn]] static RadicalScalar infinity() {
    throw std::domain_error(
        "extended value +inf is not representable in exact mode (start from a feasible point)");
  }
  static bool is_finite(const RadicalScalar&) { return true; }
};

template <class S>
S dot(const Vec<S>& x, const Vec<S>& y) {
  assert(x.size() == y.size());
  S r{0};
  for (std::size_t i = 0; i < x.size(); ++i) r += x[i] * y[i];
  return r;
}

template <class S>
S squared_norm(const Vec<S>& x) {
  return dot(x, x);
}

template <class S>
Vec<S> add(Vec<S> x, const Vec<S>& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return x;
}

template <class S>
Vec<S> sub(Vec<S> x, const Vec<S>& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] -= y[i];
  return x;
}

template <class S>
Vec<S> scaled(const S& a, Vec<S> x) {
  for (auto& v : x) v *= a;
  return x;
}

// y += a * x
template <class S>
void axpy(const S& a, const Vec<S>& x, Vec<S>& y) {
  assert(x.size() == y.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

inline double norm(const Vec<double>& x) { return std::sqrt(squared_norm(x)); }

template <class S>
Vec<double> to_double_vec(const Vec<S>& x) {
  Vec<double> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(ScalarTraits<S>::to_double(v));
  return out;
}

}  // namespace silverprox
