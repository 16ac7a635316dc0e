#pragma once

// Randomized exact check of the multi-step descent identity
//
//   sum lambda_ij Q^f_ij + sum mu_ij Q^h_ij
//     = (2 rho^k - 1)(F_* - F_n) + rho/(2 sqrt2) |x0 - x_*|^2 - (|u|^2 + Tr(V S V^T)) / 2.
//
// Both sides are polynomials in the free variables (x0 - x_*, g_i, s_i, s_*,
// f_i, h_i). Evaluating them exactly at random integer points detects any
// coefficient mismatch with probability one.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "silverprox/certificate.hpp"
#include "silverprox/parallel.hpp"
#include "silverprox/trace.hpp"

namespace silverprox {

struct IdentitySides {
  RadicalScalar lhs;
  RadicalScalar rhs;
  RadicalScalar residual() const { return lhs - rhs; }
};

struct IdentityFailure {
  std::size_t trial = 0;
  RadicalScalar residual;
};

struct IdentityReport {
  int k = 0;
  std::size_t trials = 0;
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::vector<IdentityFailure> failures;

  bool pass() const { return failures.empty(); }
};

/// Draws the free variables with integer coordinates in [-5, 5] and derives
/// x_1..x_n from x_{t+1} = x_t - alpha_t (g_t + s_{t+1}); g_* = -s_*.
inline Trace<RadicalScalar> sample_identity_trace(const StepSchedule& schedule, std::size_t dim,
                                                  std::mt19937_64& rng) {
  using R = RadicalScalar;
  std::uniform_int_distribution<int> coord(-5, 5);
  auto vec = [&] {
    Vec<R> v(dim);
    for (auto& c : v) c = R(coord(rng));
    return v;
  };
  const std::size_t n = schedule.n;

  Trace<R> t;
  t.smoothness = R(1);
  t.steps = schedule.pi;
  OptimumData<R> opt;
  opt.x = vec();
  t.x.push_back(vec());
  for (std::size_t i = 0; i <= n; ++i) t.g.push_back(vec());
  t.s.emplace_back();
  for (std::size_t i = 1; i <= n; ++i) t.s.push_back(vec());
  opt.s = vec();
  opt.g = scaled(R(-1), opt.s);
  for (std::size_t i = 0; i <= n; ++i) t.f.emplace_back(coord(rng));
  opt.f = R(coord(rng));
  for (std::size_t i = 0; i <= n; ++i) t.h.emplace_back(coord(rng));
  opt.h = R(coord(rng));

  for (std::size_t i = 0; i < n; ++i) {
    Vec<R> next = t.x[i];
    axpy(R(-t.steps[i]), add(t.g[i], t.s[i + 1]), next);
    t.x.push_back(std::move(next));
  }
  t.optimum = std::move(opt);
  return t;
}

/// Evaluates both sides of the identity for one bundle on one trace.
inline IdentitySides evaluate_descent_identity(const CertificateBundle& b, const Trace<RadicalScalar>& t) {
  using R = RadicalScalar;
  const std::size_t n = b.n();

  R lhs;
  const ExactGrid& lam = b.lambda.bar;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j)
      if (i != j && !lam(i, j).is_zero()) lhs += lam(i, j) * cocoercivity_f(t, i, j);
  for (std::size_t j = 0; j <= n; ++j)
    if (!b.lambda.star[j].is_zero()) lhs += b.lambda.star[j] * cocoercivity_f(t, kStar, j);

  const ExactGrid& mu = b.mu.bar;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j && !mu(i, j).is_zero()) lhs += mu(i, j) * cocoercivity_h(t, i, j);
  for (std::size_t j = 1; j <= n; ++j)
    if (!b.mu.star[j - 1].is_zero()) lhs += b.mu.star[j - 1] * cocoercivity_h(t, kStar, j);

  // Right-hand side.
  const Vec<R> d0 = sub(t.x[0], t.point(kStar));
  Vec<R> u = scaled(b.u.init, d0);
  for (std::size_t i = 0; i <= n; ++i) axpy(b.u.g[i], t.g[i], u);
  for (std::size_t j = 1; j <= n; ++j) axpy(b.u.s[j - 1], t.s[j], u);
  axpy(b.u.s_star, t.subgradient(kStar), u);

  // Columns of V: x0 - x_*, s_1..s_n, s_*.
  std::vector<const Vec<R>*> cols;
  cols.push_back(&d0);
  for (std::size_t j = 1; j <= n; ++j) cols.push_back(&t.s[j]);
  cols.push_back(&t.subgradient(kStar));
  R trace_term;
  const ExactGrid& s = b.slack.s;
  for (std::size_t a = 0; a < cols.size(); ++a)
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!s(a, c).is_zero()) trace_term += s(a, c) * dot(*cols[a], *cols[c]);

  const R rho = R::rho();
  const R half = R(make_rational(1, 2));
  R rhs = (R(2) * rho_pow(b.k) - R(1)) * (t.objective(kStar) - t.objective(n));
  rhs += rho / (R(2) * R::sqrt2()) * squared_norm(d0);
  rhs -= half * (squared_norm(u) + trace_term);
  return {std::move(lhs), std::move(rhs)};
}

/// Checks the identity on `trials` random points. Samples are drawn
/// sequentially from `seed`, so the outcome does not depend on `threads`.
inline IdentityReport verify_descent_identity(const CertificateBundle& b, std::size_t trials, std::size_t dim,
                                              std::uint64_t seed, unsigned threads = 1) {
  if (trials < 1 || dim < 1) throw std::invalid_argument("verify_descent_identity: trials and dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Trace<RadicalScalar>> samples;
  samples.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) samples.push_back(sample_identity_trace(b.schedule, dim, rng));

  std::vector<RadicalScalar> residuals(trials);
  parallel_for(trials, threads, [&](std::size_t i) { residuals[i] = evaluate_descent_identity(b, samples[i]).residual(); });

  IdentityReport report;
  report.k = b.k;
  report.trials = trials;
  report.dim = dim;
  report.seed = seed;
  for (std::size_t i = 0; i < trials; ++i)
    if (!residuals[i].is_zero()) report.failures.push_back({i, residuals[i]});
  return report;
}

inline IdentityReport verify_descent_identity(int k, std::size_t trials, std::size_t dim, std::uint64_t seed,
                                              unsigned threads = 1) {
  return verify_descent_identity(CertificateBundle::build(k), trials, dim, seed, threads);
}

}  // namespace silverprox
