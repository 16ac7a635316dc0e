#pragma once

// Test and benchmark problem families with known minimizers.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "silverprox/prox.hpp"
#include "silverprox/rates.hpp"

namespace silverprox {

enum class NonsmoothKind { zero, l1, box, halfline, ball };

inline std::string_view to_string(NonsmoothKind kind) {
  switch (kind) {
    case NonsmoothKind::zero: return "zero";
    case NonsmoothKind::l1: return "l1";
    case NonsmoothKind::box: return "box";
    case NonsmoothKind::halfline: return "halfline";
    case NonsmoothKind::ball: return "ball";
  }
  return "?";
}

inline NonsmoothKind parse_nonsmooth_kind(std::string_view name) {
  for (auto kind : {NonsmoothKind::zero, NonsmoothKind::l1, NonsmoothKind::box, NonsmoothKind::halfline,
                    NonsmoothKind::ball}) {
    if (to_string(kind) == name) return kind;
  }
  throw std::invalid_argument("unknown nonsmooth kind \"" + std::string(name) + "\"");
}

template <class S>
struct CompositeInstance {
  ProblemInstance<S> problem;
  Vec<S> x0;
};

template <class S>
struct LowerBoundInstance {
  ProblemInstance<S> problem;
  Vec<S> x0;
  RadicalScalar expected_gap;
};

/// f(x) = a x with a = 1 / (2(rho^k - 1)), h = indicator of {x >= 0}, M = 1,
/// x_* = 0, x_0 = 1. Silver-schedule proximal GD ends at x_n = 1/2 with gap
/// 1 / (4 rho^k - 4).
template <class S>
LowerBoundInstance<S> lower_bound_instance(int k) {
  const RadicalScalar slope_exact = RadicalScalar(1) / (RadicalScalar(2) * (rho_pow(k) - RadicalScalar(1)));
  const S slope = ScalarTraits<S>::from_radical(slope_exact);

  ProblemInstance<S> p;
  p.name = "lower-bound(k=" + std::to_string(k) + ")";
  p.dimension = 1;
  p.smooth.value = [slope](const Vec<S>& x) { return S(slope * x[0]); };
  p.smooth.gradient = [slope](const Vec<S>&) { return Vec<S>{slope}; };
  p.smooth.smoothness = S(1);
  p.smooth.strong_convexity = S(0);
  p.nonsmooth = prox_halfline<S>();
  p.optimum = Vec<S>{S(0)};
  p.optimal_value = S(0);
  return {std::move(p), Vec<S>{S(1)}, lower_bound_gap(k)};
}

/// f(x) = x^T A x / 2 + b^T x with the given prox oracle.
template <class S>
ProblemInstance<S> quadratic_instance(std::string name, std::vector<Vec<S>> a, Vec<S> b, ProxOracle<S> h,
                                      std::optional<Vec<S>> x_star, S smoothness, S strong_convexity) {
  const std::size_t dim = b.size();
  if (a.size() != dim) throw std::invalid_argument("quadratic_instance: A and b dimensions differ");
  for (const auto& row : a) {
    if (row.size() != dim) throw std::invalid_argument("quadratic_instance: A must be square");
  }
  ProblemInstance<S> p;
  p.name = std::move(name);
  p.dimension = dim;
  auto grad = [a, b](const Vec<S>& x) {
    Vec<S> g = b;
    for (std::size_t i = 0; i < g.size(); ++i) g[i] += dot(a[i], x);
    return g;
  };
  p.smooth.gradient = grad;
  p.smooth.value = [a, b](const Vec<S>& x) {
    S v = dot(b, x);
    S quad{0};
    for (std::size_t i = 0; i < x.size(); ++i) quad += x[i] * dot(a[i], x);
    return S(v + quad / S(2));
  };
  p.smooth.smoothness = std::move(smoothness);
  p.smooth.strong_convexity = std::move(strong_convexity);
  p.nonsmooth = std::move(h);
  if (x_star) {
    p.optimal_value = p.objective(*x_star);
    p.optimum = std::move(x_star);
  }
  return p;
}

namespace detail {

inline Vec<double> to_vec(const Eigen::VectorXd& v) { return Vec<double>(v.data(), v.data() + v.size()); }

}  // namespace detail

/// Random composite instance: quadratic f with spectrum in [min_eig, max_eig]
/// (both endpoints attained when dim >= 2) and a minimizer planted through
/// b = -A x_* - s_* with s_* in the subdifferential of h at x_*.
inline CompositeInstance<double> random_composite_instance(NonsmoothKind kind, std::size_t dim,
                                                           std::mt19937_64& rng, double min_eig = 0.0,
                                                           double max_eig = 1.0) {
  if (dim < 1) throw std::invalid_argument("random_composite_instance: dim must be >= 1");
  if (!(max_eig > 0) || min_eig < 0 || min_eig > max_eig) {
    throw std::invalid_argument("random_composite_instance: need 0 <= min_eig <= max_eig, max_eig > 0");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto d = static_cast<Eigen::Index>(dim);

  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gauss(rng);
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
  Eigen::VectorXd spectrum(d);
  for (Eigen::Index i = 0; i < d; ++i) spectrum(i) = min_eig + (max_eig - min_eig) * unit(rng);
  spectrum(0) = max_eig;
  if (d > 1) spectrum(1) = min_eig;
  Eigen::MatrixXd a = q * spectrum.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose()).eval();

  Eigen::VectorXd x_star(d), s_star = Eigen::VectorXd::Zero(d);
  ProxOracle<double> h;
  switch (kind) {
    case NonsmoothKind::zero:
      for (Eigen::Index i = 0; i < d; ++i) x_star(i) = gauss(rng);
      h = prox_zero<double>();
      break;
    case NonsmoothKind::l1: {
      const double w = 0.5;
      for (Eigen::Index i = 0; i < d; ++i) {
        if (unit(rng) < 1.0 / 3.0) {
          x_star(i) = 0.0;
          s_star(i) = w * (1.8 * unit(rng) - 0.9);
        } else {
          x_star(i) = gauss(rng);
          s_star(i) = x_star(i) > 0 ? w : -w;
        }
      }
      h = prox_l1<double>(w);
      break;
    }
    case NonsmoothKind::box: {
      for (Eigen::Index i = 0; i < d; ++i) {
        const double u = unit(rng);
        if (u < 1.0 / 3.0) {
          x_star(i) = -1.0;
          s_star(i) = -unit(rng);
        } else if (u < 2.0 / 3.0) {
          x_star(i) = 1.0;
          s_star(i) = unit(rng);
        } else {
          x_star(i) = 1.8 * unit(rng) - 0.9;
        }
      }
      h = prox_box<double>(Vec<double>(dim, -1.0), Vec<double>(dim, 1.0));
      break;
    }
    case NonsmoothKind::halfline:
      for (Eigen::Index i = 0; i < d; ++i) {
        if (unit(rng) < 0.5) {
          x_star(i) = 0.0;
          s_star(i) = -unit(rng);
        } else {
          x_star(i) = 0.1 + std::abs(gauss(rng));
        }
      }
      h = prox_halfline<double>();
      break;
    case NonsmoothKind::ball: {
      Eigen::VectorXd dir(d);
      for (Eigen::Index i = 0; i < d; ++i) dir(i) = gauss(rng);
      dir.normalize();
      if (unit(rng) < 0.5) {
        x_star = dir;
        s_star = unit(rng) * x_star;
      } else {
        x_star = 0.5 * unit(rng) * dir;
      }
      h = prox_ball(1.0);
      break;
    }
  }
  const Eigen::VectorXd b = -a * x_star - s_star;

  std::vector<Vec<double>> rows(dim);
  for (Eigen::Index i = 0; i < d; ++i) rows[static_cast<std::size_t>(i)] = detail::to_vec(a.row(i).transpose());
  Vec<double> x0 = detail::to_vec(x_star);
  for (auto& v : x0) v += 2.0 * gauss(rng);

  std::string name = "quadratic+" + std::string(to_string(kind));
  auto p = quadratic_instance<double>(std::move(name), std::move(rows), detail::to_vec(b), std::move(h),
                                      detail::to_vec(x_star), max_eig, min_eig);
  return {std::move(p), std::move(x0)};
}

/// Exact counterpart with rational data: A = B^T B / tr(B^T B) for a random
/// integer B, so 0 <= A <= I and M = 1. Ball constraints are float-only.
inline CompositeInstance<RadicalScalar> random_rational_instance(NonsmoothKind kind, std::size_t dim,
                                                                 std::mt19937_64& rng) {
  using R = RadicalScalar;
  if (dim < 1) throw std::invalid_argument("random_rational_instance: dim must be >= 1");
  if (kind == NonsmoothKind::ball) throw std::invalid_argument("random_rational_instance: ball is float-only");
  std::uniform_int_distribution<int> entry(-3, 3);
  std::uniform_int_distribution<int> quarter(-8, 8);
  std::uniform_int_distribution<int> coin(0, 2);

  std::vector<std::vector<long>> bm(dim, std::vector<long>(dim));
  bool nonzero = false;
  for (auto& row : bm)
    for (auto& v : row) {
      v = entry(rng);
      nonzero = nonzero || v != 0;
    }
  if (!nonzero) bm[0][0] = 1;
  long trace = 0;
  std::vector<std::vector<long>> btb(dim, std::vector<long>(dim, 0));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t r = 0; r < dim; ++r) btb[i][j] += bm[r][i] * bm[r][j];
  for (std::size_t i = 0; i < dim; ++i) trace += btb[i][i];
  std::vector<Vec<R>> a(dim, Vec<R>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) a[i][j] = R(make_rational(btb[i][j], trace));

  Vec<R> x_star(dim), s_star(dim, R(0));
  ProxOracle<R> h;
  auto q4 = [&] { return R(make_rational(quarter(rng), 4)); };
  switch (kind) {
    case NonsmoothKind::zero:
      for (auto& v : x_star) v = q4();
      h = prox_zero<R>();
      break;
    case NonsmoothKind::l1: {
      const R w(make_rational(1, 2));
      for (std::size_t i = 0; i < dim; ++i) {
        x_star[i] = coin(rng) == 0 ? R(0) : q4();
        if (x_star[i] == R(0)) {
          s_star[i] = R(make_rational(quarter(rng), 20));  // |s| <= 2/5 < w
        } else {
          s_star[i] = x_star[i] > R(0) ? w : R(-w);
        }
      }
      h = prox_l1<R>(w);
      break;
    }
    case NonsmoothKind::box:
      for (std::size_t i = 0; i < dim; ++i) {
        const int c = coin(rng);
        if (c == 0) {
          x_star[i] = R(-1);
          s_star[i] = R(make_rational(-(1 + std::abs(quarter(rng))), 8));
        } else if (c == 1) {
          x_star[i] = R(1);
          s_star[i] = R(make_rational(1 + std::abs(quarter(rng)), 8));
        } else {
          x_star[i] = R(make_rational(quarter(rng), 10));
        }
      }
      h = prox_box<R>(Vec<R>(dim, R(-1)), Vec<R>(dim, R(1)));
      break;
    case NonsmoothKind::halfline:
      for (std::size_t i = 0; i < dim; ++i) {
        if (coin(rng) == 0) {
          x_star[i] = R(0);
          s_star[i] = R(make_rational(-(1 + std::abs(quarter(rng))), 8));
        } else {
          x_star[i] = R(make_rational(1 + std::abs(quarter(rng)), 4));
        }
      }
      h = prox_halfline<R>();
      break;
    case NonsmoothKind::ball:
      break;
  }
  Vec<R> b(dim);
  for (std::size_t i = 0; i < dim; ++i) b[i] = -dot(a[i], x_star) - s_star[i];
  // Exact traces cannot hold an infinite indicator value, so x0 is drawn
  // from the feasible set when h is an indicator.
  Vec<R> x0 = x_star;
  for (auto& v : x0) {
    if (kind == NonsmoothKind::box) {
      v = R(make_rational(quarter(rng), 8));
    } else if (kind == NonsmoothKind::halfline) {
      v = R(std::abs(entry(rng)));
    } else {
      v += R(entry(rng));
    }
  }

  std::string name = "rational-quadratic+" + std::string(to_string(kind));
  auto p = quadratic_instance<R>(std::move(name), std::move(a), std::move(b), std::move(h), x_star, R(1), R(0));
  return {std::move(p), std::move(x0)};
}

}  // namespace silverprox
