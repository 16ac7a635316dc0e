#pragma once

// Silver stepsize schedule and its companion sequence c.
//
// Stepsizes are unit-normalized (M = 1); the solver divides by the
// smoothness constant at the oracle boundary.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "silverprox/radical.hpp"

namespace silverprox {

/// Largest j with 2^j dividing i.
inline int two_adic_valuation(std::int64_t i) {
  if (i <= 0) throw std::invalid_argument("two_adic_valuation: argument must be positive");
  int j = 0;
  while ((i & 1) == 0) {
    i >>= 1;
    ++j;
  }
  return j;
}

/// Horizon 2^k - 1 of the k-th milestone.
inline std::size_t horizon(int k) {
  if (k < 1 || k > 62) throw std::invalid_argument("horizon: k must be in [1, 62]");
  return (std::size_t{1} << k) - 1;
}

/// Closed form alpha_t = rho^(nu(t+1) - 1) + 1.
inline RadicalScalar silver_step(std::int64_t t) {
  if (t < 0) throw std::invalid_argument("silver_step: t must be nonnegative");
  return rho_pow(two_adic_valuation(t + 1) - 1) + RadicalScalar(1);
}

/// pi^(k) via pi^(k+1) = [pi^(k), rho^(k-1) + 1, pi^(k)] from pi^(1) = [sqrt2].
inline std::vector<RadicalScalar> silver_schedule(int k) {
  if (k < 1) throw std::invalid_argument("silver_schedule: k must be >= 1");
  std::vector<RadicalScalar> pi{RadicalScalar::sqrt2()};
  for (int j = 1; j < k; ++j) {
    std::vector<RadicalScalar> next;
    next.reserve(2 * pi.size() + 1);
    next.insert(next.end(), pi.begin(), pi.end());
    next.push_back(rho_pow(j - 1) + RadicalScalar(1));
    next.insert(next.end(), pi.begin(), pi.end());
    pi = std::move(next);
  }
  return pi;
}

/// Companion sequence
///   c^(1) = [2(rho - 1)],
///   c^(k+1) = [pi^(k), (1 + rho^-k)(rho^(k-1) + 1), rho c^(k) - (rho - 1 - rho^-k) pi^(k)].
inline std::vector<RadicalScalar> c_sequence(int k) {
  if (k < 1) throw std::invalid_argument("c_sequence: k must be >= 1");
  const RadicalScalar rho = RadicalScalar::rho();
  const RadicalScalar one(1);
  std::vector<RadicalScalar> pi{RadicalScalar::sqrt2()};
  std::vector<RadicalScalar> c{RadicalScalar(2) * (rho - one)};
  for (int j = 1; j < k; ++j) {
    const RadicalScalar inv_rho_j = rho_pow(-j);
    const RadicalScalar middle_pi = rho_pow(j - 1) + one;
    const RadicalScalar tail_coeff = rho - one - inv_rho_j;

    std::vector<RadicalScalar> next_c;
    next_c.reserve(2 * c.size() + 1);
    next_c.insert(next_c.end(), pi.begin(), pi.end());
    next_c.push_back((one + inv_rho_j) * middle_pi);
    for (std::size_t i = 0; i < c.size(); ++i) next_c.push_back(rho * c[i] - tail_coeff * pi[i]);

    std::vector<RadicalScalar> next_pi;
    next_pi.reserve(2 * pi.size() + 1);
    next_pi.insert(next_pi.end(), pi.begin(), pi.end());
    next_pi.push_back(middle_pi);
    next_pi.insert(next_pi.end(), pi.begin(), pi.end());

    c = std::move(next_c);
    pi = std::move(next_pi);
  }
  return c;
}

/// pi^(k) and c^(k) for one milestone horizon n = 2^k - 1.
struct StepSchedule {
  int k = 0;
  std::size_t n = 0;
  std::vector<RadicalScalar> pi;
  std::vector<RadicalScalar> c;

  static StepSchedule build(int k) {
    StepSchedule s;
    s.k = k;
    s.n = horizon(k);
    s.pi = silver_schedule(k);
    s.c = c_sequence(k);
    return s;
  }
};

/// Schedules for every level 1..k; entry j-1 holds level j.
inline std::vector<StepSchedule> schedule_ladder(int k) {
  if (k < 1) throw std::invalid_argument("schedule_ladder: k must be >= 1");
  std::vector<StepSchedule> ladder;
  ladder.reserve(static_cast<std::size_t>(k));
  const std::vector<RadicalScalar> pi = silver_schedule(k);
  const std::vector<RadicalScalar> c = c_sequence(k);
  for (int j = 1; j <= k; ++j) {
    StepSchedule s;
    s.k = j;
    s.n = horizon(j);
    // pi^(j) is a prefix of pi^(k).
    s.pi.assign(pi.begin(), pi.begin() + static_cast<std::ptrdiff_t>(s.n));
    s.c = j == k ? c : c_sequence(j);
    ladder.push_back(std::move(s));
  }
  return ladder;
}

inline RadicalScalar sum(const std::vector<RadicalScalar>& xs) {
  RadicalScalar total;
  for (const auto& x : xs) total += x;
  return total;
}

/// First n entries of the infinite silver schedule, rounded to double.
inline std::vector<double> silver_steps_float(std::size_t n) {
  std::vector<double> steps;
  steps.reserve(n);
  for (std::size_t t = 0; t < n; ++t) steps.push_back(to_float(silver_step(static_cast<std::int64_t>(t))));
  return steps;
}

inline std::vector<double> constant_steps(std::size_t n, double value = 1.0) {
  if (!(value > 0.0)) throw std::invalid_argument("constant_steps: stepsize must be positive");
  return std::vector<double>(n, value);
}

}  // namespace silverprox
