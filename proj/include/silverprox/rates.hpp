#pragma once

// Convergence-rate constants for proximal GD at horizon n = 2^k - 1.

#include <cmath>
#include <cstddef>
#include <stdexcept>

#include "silverprox/radical.hpp"
#include "silverprox/schedule.hpp"

namespace silverprox {

inline const double kRho = 1.0 + std::sqrt(2.0);
// log_2(rho), the exponent in n^{-log_2 rho}.
inline const double kSilverExponent = std::log2(kRho);

/// Exact rate constant rho / (sqrt2 (4 rho^k - 2)) implied by the certificate.
inline RadicalScalar rate_from_certificate(int k) {
  if (k < 1) throw std::invalid_argument("rate_from_certificate: k must be >= 1");
  const RadicalScalar denom = RadicalScalar::sqrt2() * (RadicalScalar(4) * rho_pow(k) - RadicalScalar(2));
  return RadicalScalar::rho() / denom;
}

/// The looser closed-form constant rho / (4 sqrt2 n^{log_2 rho}).
inline double display_rate_constant(int k) {
  const double n = static_cast<double>(horizon(k));
  return kRho / (4.0 * std::sqrt(2.0) * std::pow(n, kSilverExponent));
}

/// Exact worst-case gap 1 / (4 rho^k - 4) of the one-dimensional hard instance.
inline RadicalScalar lower_bound_gap(int k) {
  if (k < 1) throw std::invalid_argument("lower_bound_gap: k must be >= 1");
  return RadicalScalar(1) / (RadicalScalar(4) * rho_pow(k) - RadicalScalar(4));
}

struct RateBound {
  double display = 0;      // rho / (4 sqrt2 n^{log_2 rho}) M |x0 - x*|^2
  double certificate = 0;  // rho / (sqrt2 (4 rho^k - 2)) M |x0 - x*|^2
};

inline RateBound rate_bound(int k, double smoothness, double dist2) {
  if (!(smoothness > 0)) throw std::invalid_argument("rate_bound: smoothness must be positive");
  if (!(dist2 >= 0)) throw std::invalid_argument("rate_bound: squared distance must be nonnegative");
  return {display_rate_constant(k) * smoothness * dist2, to_float(rate_from_certificate(k)) * smoothness * dist2};
}

/// Tight rate M |x0 - x*|^2 / (4n) of proximal GD with unit constant steps.
inline double constant_baseline(std::size_t n, double smoothness, double dist2) {
  if (n < 1) throw std::invalid_argument("constant_baseline: n must be >= 1");
  return smoothness * dist2 / (4.0 * static_cast<double>(n));
}

}  // namespace silverprox
