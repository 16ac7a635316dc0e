#pragma once

// Recursive-gluing certificate for proximal GD with silver stepsizes:
// multipliers lambda (for f) and mu (for h), the Laplacian L and slack matrix
// S, and exact checks of nonnegativity, Laplacian structure and PSD-ness.

#include <Eigen/Dense>

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "silverprox/radical.hpp"
#include "silverprox/rates.hpp"
#include "silverprox/schedule.hpp"

namespace silverprox {

/// Dense square matrix addressed by indices first_index() .. last_index().
template <class T>
class SquareGrid {
 public:
  SquareGrid() = default;
  explicit SquareGrid(std::size_t size, std::size_t first_index = 0)
      : size_(size), first_(first_index), data_(size * size) {}

  std::size_t size() const { return size_; }
  std::size_t first_index() const { return first_; }
  std::size_t last_index() const { return first_ + size_ - 1; }
  bool contains(std::size_t i) const { return i >= first_ && i < first_ + size_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(contains(i) && contains(j));
    return data_[(i - first_) * size_ + (j - first_)];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(contains(i) && contains(j));
    return data_[(i - first_) * size_ + (j - first_)];
  }

  T& at(std::size_t i, std::size_t j) {
    if (!contains(i) || !contains(j)) throw std::out_of_range("SquareGrid index out of range");
    return (*this)(i, j);
  }
  const T& at(std::size_t i, std::size_t j) const {
    if (!contains(i) || !contains(j)) throw std::out_of_range("SquareGrid index out of range");
    return (*this)(i, j);
  }

  bool is_symmetric() const {
    for (std::size_t i = 0; i < size_; ++i)
      for (std::size_t j = i + 1; j < size_; ++j)
        if (!(data_[i * size_ + j] == data_[j * size_ + i])) return false;
    return true;
  }

  friend bool operator==(const SquareGrid&, const SquareGrid&) = default;

 private:
  std::size_t size_ = 0;
  std::size_t first_ = 0;
  std::vector<T> data_;
};

using ExactGrid = SquareGrid<RadicalScalar>;

/// Multipliers for the co-coercivities of f. bar is indexed by {0..n};
/// star holds the row i = *, star[j] for j in {0..n}.
struct MultiplierF {
  int k = 0;
  ExactGrid bar;
  std::vector<RadicalScalar> star;
};

/// Multipliers for the co-coercivities of h. bar is indexed by {1..n};
/// star[j - 1] holds the entry (*, j).
struct MultiplierH {
  int k = 0;
  ExactGrid bar;
  std::vector<RadicalScalar> star;
};

/// bar_l: indices {1..n}. l: indices {1..n+1}, the last one standing for s_*.
/// s: indices {0..n+1} matching the columns [x0 - x_*, s_1, ..., s_n, s_*].
struct SlackMatrix {
  int k = 0;
  ExactGrid bar_l;
  ExactGrid l;
  ExactGrid s;
};

/// Coefficients of u = (x0 - x_*) - sum alpha_i g_i - rho^k g_n - sum c_j s_j - s_*.
struct UCoefficients {
  RadicalScalar init;
  std::vector<RadicalScalar> g;  // g_0 .. g_n
  std::vector<RadicalScalar> s;  // s_1 .. s_n at s[j - 1]
  RadicalScalar s_star;
};

namespace detail {

inline ExactGrid lambda_bar(const std::vector<StepSchedule>& ladder, RhoPowers& rho) {
  ExactGrid bar(2, 0);
  bar(0, 1) = RadicalScalar::rho();
  bar(1, 0) = RadicalScalar(1);
  const RadicalScalar rho2 = rho(2);
  for (std::size_t level = 0; level + 1 < ladder.size(); ++level) {
    const StepSchedule& cur = ladder[level];
    const int k = cur.k;
    const std::size_t n = cur.n;
    ExactGrid next(2 * n + 2, 0);
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        if (bar(i, j).is_zero()) continue;
        next(i, j) = bar(i, j);
        next(i + n + 1, j + n + 1) = rho2 * bar(i, j);
      }
    }
    // Sparse correction.
    next(n, 2 * n + 1) += RadicalScalar::rho();
    next(2 * n + 1, n) += rho(k);
    // Low-rank correction: rows n and 2n+1 over columns n+1..2n.
    for (std::size_t j = n + 1; j <= 2 * n; ++j) {
      const RadicalScalar v = RadicalScalar::rho() * cur.pi[j - n - 1];
      next(n, j) += v;
      next(2 * n + 1, j) += v;
    }
    bar = std::move(next);
  }
  return bar;
}

inline ExactGrid mu_bar(const std::vector<StepSchedule>& ladder, RhoPowers& rho) {
  ExactGrid bar(1, 1);
  const RadicalScalar one(1);
  const RadicalScalar rho1 = RadicalScalar::rho();
  const RadicalScalar rho2 = rho(2);
  for (std::size_t level = 0; level + 1 < ladder.size(); ++level) {
    const StepSchedule& cur = ladder[level];
    const int k = cur.k;
    const std::size_t n = cur.n;
    const auto& pi = cur.pi;
    const auto& c = cur.c;
    const RadicalScalar middle = rho(k - 1) + one;  // rho^(k-1) + 1
    const RadicalScalar ratio = rho(k) / middle;     // rho^k / (rho^(k-1) + 1)

    ExactGrid next(2 * n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        if (bar(i, j).is_zero()) continue;
        next(i, j) = bar(i, j);
        next(i + n + 1, j + n + 1) = rho2 * bar(i, j);
      }
    }
    // Sparse correction.
    next(n, n + 1) += rho(k);
    next(n + 1, n + 2) += rho2;
    next(2 * n + 1, n + 1) += (rho1 - rho(-k)) * middle;
    // Low-rank correction.
    for (std::size_t j = 1; j <= n; ++j) {
      const RadicalScalar gap = c[j - 1] - pi[j - 1];
      next(n, j) += (one - ratio) * gap;
      next(n + 1, j) += ratio * gap;
    }
    const RadicalScalar tail = one + rho(-k);
    const RadicalScalar row_n1 = rho1 / middle;
    for (std::size_t j = n + 2; j <= 2 * n + 1; ++j) {
      const RadicalScalar& p = pi[j - n - 2];
      next(n, j) += ratio * p;
      next(n + 1, j) += row_n1 * p;
      next(2 * n + 1, j) += (rho1 + one) * c[j - n - 2] - tail * p;
    }
    bar = std::move(next);
  }
  return bar;
}

inline std::vector<RadicalScalar> gaps(const StepSchedule& s) {
  std::vector<RadicalScalar> d;
  d.reserve(s.n);
  for (std::size_t i = 0; i < s.n; ++i) d.push_back(s.c[i] - s.pi[i]);
  return d;
}

inline ExactGrid laplacian_bar(const std::vector<StepSchedule>& ladder, RhoPowers& rho) {
  ExactGrid bar(1, 1);
  bar(1, 1) = RadicalScalar(2) * (RadicalScalar::rho() - RadicalScalar(1));
  const RadicalScalar rho1 = RadicalScalar::rho();
  const RadicalScalar rho2 = rho(2);
  for (std::size_t level = 0; level + 1 < ladder.size(); ++level) {
    const StepSchedule& cur = ladder[level];
    const int k = cur.k;
    const std::size_t n = cur.n;
    const std::vector<RadicalScalar> d = gaps(cur);
    const std::vector<RadicalScalar> d_next = gaps(ladder[level + 1]);

    ExactGrid next(2 * n + 1, 1);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n; ++j) {
        const RadicalScalar block = bar(i, j) + d[i - 1] * d[j - 1];
        next(i + n + 1, j + n + 1) = rho2 * block;
        next(i, j) = block;
      }
    }
    const std::size_t mid = n + 1;
    for (std::size_t i = 1; i <= n; ++i) {
      const RadicalScalar edge = rho(k) * d[i - 1];
      next(i, mid) -= edge;
      next(mid, i) -= edge;
      const RadicalScalar tail = rho1 * cur.pi[i - 1];
      next(mid, mid + i) -= tail;
      next(mid + i, mid) -= tail;
    }
    next(mid, mid) += (rho(k - 1) + RadicalScalar(1)) * (rho(k + 1) + RadicalScalar(1));
    for (std::size_t i = 1; i <= 2 * n + 1; ++i)
      for (std::size_t j = 1; j <= 2 * n + 1; ++j) next(i, j) -= d_next[i - 1] * d_next[j - 1];
    bar = std::move(next);
  }
  return bar;
}

inline MultiplierF make_lambda(const std::vector<StepSchedule>& ladder, RhoPowers& rho) {
  const StepSchedule& top = ladder.back();
  MultiplierF m;
  m.k = top.k;
  m.bar = lambda_bar(ladder, rho);
  m.star = top.pi;
  m.star.push_back(rho(top.k));
  return m;
}

inline MultiplierH make_mu(const std::vector<StepSchedule>& ladder, RhoPowers& rho) {
  const StepSchedule& top = ladder.back();
  MultiplierH m;
  m.k = top.k;
  m.bar = mu_bar(ladder, rho);
  m.star = top.c;
  m.star.front() += RadicalScalar(1);
  return m;
}

inline SlackMatrix make_slack(const std::vector<StepSchedule>& ladder, RhoPowers& rho) {
  const StepSchedule& top = ladder.back();
  const std::size_t n = top.n;
  SlackMatrix sm;
  sm.k = top.k;
  sm.bar_l = laplacian_bar(ladder, rho);

  sm.l = ExactGrid(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) sm.l(i, j) = sm.bar_l(i, j);
    sm.l(i, n + 1) = -top.c[i - 1];
    sm.l(n + 1, i) = -top.c[i - 1];
  }
  sm.l(n + 1, n + 1) = RadicalScalar(2) * (rho(top.k) - RadicalScalar(1));

  sm.s = ExactGrid(n + 2, 0);
  sm.s(0, 0) = RadicalScalar::sqrt2().inverse();
  sm.s(0, 1) = sm.s(1, 0) = RadicalScalar(-1);
  sm.s(0, n + 1) += RadicalScalar(1);
  sm.s(n + 1, 0) += RadicalScalar(1);
  for (std::size_t i = 1; i <= n + 1; ++i)
    for (std::size_t j = 1; j <= n + 1; ++j) sm.s(i, j) = sm.l(i, j);
  return sm;
}

inline UCoefficients make_u(const StepSchedule& top, RhoPowers& rho) {
  UCoefficients u;
  u.init = RadicalScalar(1);
  for (const auto& a : top.pi) u.g.push_back(-a);
  u.g.push_back(-rho(top.k));
  for (const auto& c : top.c) u.s.push_back(-c);
  u.s_star = RadicalScalar(-1);
  return u;
}

}  // namespace detail

inline MultiplierF build_lambda(int k) {
  RhoPowers rho;
  return detail::make_lambda(schedule_ladder(k), rho);
}

inline MultiplierH build_mu(int k) {
  RhoPowers rho;
  return detail::make_mu(schedule_ladder(k), rho);
}

inline SlackMatrix build_slack(int k) {
  RhoPowers rho;
  return detail::make_slack(schedule_ladder(k), rho);
}

inline UCoefficients build_u_coefficients(int k) {
  RhoPowers rho;
  return detail::make_u(StepSchedule::build(k), rho);
}

struct CertificateBundle {
  int k = 0;
  StepSchedule schedule;
  MultiplierF lambda;
  MultiplierH mu;
  SlackMatrix slack;
  UCoefficients u;

  std::size_t n() const { return schedule.n; }

  static CertificateBundle build(int k) {
    if (k < 1) throw std::invalid_argument("CertificateBundle: k must be >= 1");
    RhoPowers rho;
    const auto ladder = schedule_ladder(k);
    CertificateBundle b;
    b.k = k;
    b.schedule = ladder.back();
    b.lambda = detail::make_lambda(ladder, rho);
    b.mu = detail::make_mu(ladder, rho);
    b.slack = detail::make_slack(ladder, rho);
    b.u = detail::make_u(b.schedule, rho);
    return b;
  }

  bool consistent() const {
    return lambda.k == k && mu.k == k && slack.k == k && schedule.k == k && u.g.size() == n() + 1 &&
           u.s.size() == n();
  }
};

// ---------------------------------------------------------------------------
// Exact checks

struct Violation {
  std::string object;  // which matrix or vector
  std::size_t i = 0;
  std::size_t j = 0;
  std::string rule;
  RadicalScalar value;

  std::string describe() const {
    std::ostringstream os;
    os << object << "(" << i << "," << j << ") violates " << rule << ": " << value;
    return os.str();
  }
};

struct CheckReport {
  bool pass = true;
  std::string details;
  std::optional<Violation> violation;

  void fail(Violation v) {
    if (!pass) return;
    pass = false;
    details = v.describe();
    violation = std::move(v);
  }
};

namespace detail {

// Star-row indices are reported with i = kStarRow.
inline constexpr std::size_t kStarRow = static_cast<std::size_t>(-1);

inline void require_nonneg_offdiag(const ExactGrid& g, const char* name, CheckReport& r) {
  for (std::size_t i = g.first_index(); i <= g.last_index() && r.pass; ++i)
    for (std::size_t j = g.first_index(); j <= g.last_index(); ++j)
      if (i != j && g(i, j).sign() < 0) {
        r.fail({name, i, j, "nonnegativity", g(i, j)});
        break;
      }
}

inline void require_laplacian(const ExactGrid& g, const char* name, CheckReport& r) {
  if (!g.is_symmetric()) {
    r.fail({name, g.first_index(), g.first_index(), "symmetry", RadicalScalar()});
    return;
  }
  for (std::size_t i = g.first_index(); i <= g.last_index() && r.pass; ++i) {
    RadicalScalar row;
    for (std::size_t j = g.first_index(); j <= g.last_index(); ++j) {
      row += g(i, j);
      if (i != j && g(i, j).sign() > 0) {
        r.fail({name, i, j, "nonpositive off-diagonal", g(i, j)});
        return;
      }
    }
    if (!row.is_zero()) r.fail({name, i, g.last_index(), "zero row sum", row});
  }
}

}  // namespace detail

/// Every multiplier with i != j is nonnegative, and row n of mu-bar matches
/// (rho^k - 1)(c_j - pi_j) for 1 <= j < n.
inline CheckReport check_multipliers_nonneg(const CertificateBundle& b) {
  CheckReport r;
  detail::require_nonneg_offdiag(b.lambda.bar, "lambda", r);
  for (std::size_t j = 0; j < b.lambda.star.size() && r.pass; ++j)
    if (b.lambda.star[j].sign() < 0) r.fail({"lambda*", detail::kStarRow, j, "nonnegativity", b.lambda.star[j]});
  detail::require_nonneg_offdiag(b.mu.bar, "mu", r);
  for (std::size_t j = 0; j < b.mu.star.size() && r.pass; ++j)
    if (b.mu.star[j].sign() < 0) r.fail({"mu*", detail::kStarRow, j + 1, "nonnegativity", b.mu.star[j]});

  const std::size_t n = b.n();
  const RadicalScalar scale = rho_pow(b.k) - RadicalScalar(1);
  for (std::size_t j = 1; j < n && r.pass; ++j) {
    const RadicalScalar expected = scale * (b.schedule.c[j - 1] - b.schedule.pi[j - 1]);
    if (!(b.mu.bar(n, j) == expected)) r.fail({"mu", n, j, "closed-form last row", b.mu.bar(n, j)});
  }
  if (r.pass) {
    std::ostringstream os;
    os << "k=" << b.k << ": lambda " << b.lambda.bar.size() << "x" << b.lambda.bar.size() << ", mu "
       << b.mu.bar.size() << "x" << b.mu.bar.size() << " nonnegative off the diagonal; last mu row matches";
    r.details = os.str();
  }
  return r;
}

/// (a) off-diagonals of bar_L + (c - pi)(c - pi)^T are <= 0;
/// (b) L is Laplacian (symmetric, nonpositive off-diagonal, zero row sums).
inline CheckReport check_laplacian(const CertificateBundle& b) {
  CheckReport r;
  const std::vector<RadicalScalar> d = detail::gaps(b.schedule);
  const ExactGrid& bar = b.slack.bar_l;
  for (std::size_t i = 1; i <= bar.last_index() && r.pass; ++i)
    for (std::size_t j = 1; j <= bar.last_index(); ++j) {
      if (i == j) continue;
      const RadicalScalar v = bar(i, j) + d[i - 1] * d[j - 1];
      if (v.sign() > 0) {
        r.fail({"Lbar+ddT", i, j, "nonpositive off-diagonal", v});
        break;
      }
    }
  if (r.pass) detail::require_laplacian(b.slack.l, "L", r);
  if (r.pass) r.details = "k=" + std::to_string(b.k) + ": L is Laplacian of size " + std::to_string(b.slack.l.size());
  return r;
}

/// S has corner 1/sqrt2, border -e_1 + e_{n+1} and lower block L, and the
/// Schur complement L - sqrt2 (-e_1 + e_{n+1})(-e_1 + e_{n+1})^T is Laplacian.
inline CheckReport check_schur_psd(const CertificateBundle& b) {
  CheckReport r;
  const ExactGrid& s = b.slack.s;
  const ExactGrid& l = b.slack.l;
  const std::size_t last = l.last_index();  // n + 1
  if (!s.is_symmetric()) r.fail({"S", 0, 0, "symmetry", RadicalScalar()});
  if (r.pass && !(s(0, 0) == RadicalScalar(1) / RadicalScalar::sqrt2())) r.fail({"S", 0, 0, "corner 1/sqrt2", s(0, 0)});
  for (std::size_t j = 1; j <= last && r.pass; ++j) {
    const RadicalScalar expected = j == 1 ? RadicalScalar(-1) : (j == last ? RadicalScalar(1) : RadicalScalar(0));
    if (!(s(0, j) == expected)) r.fail({"S", 0, j, "border -e1+e_{n+1}", s(0, j)});
  }
  for (std::size_t i = 1; i <= last && r.pass; ++i)
    for (std::size_t j = 1; j <= last; ++j)
      if (!(s(i, j) == l(i, j))) {
        r.fail({"S", i, j, "lower block equals L", s(i, j)});
        break;
      }
  if (!r.pass) return r;

  // Schur complement with respect to the corner: L - b b^T / S(0,0).
  const RadicalScalar inv_corner = s(0, 0).inverse();
  ExactGrid schur = l;
  for (std::size_t i = 1; i <= last; ++i)
    for (std::size_t j = 1; j <= last; ++j) {
      if (s(0, i).is_zero() || s(0, j).is_zero()) continue;
      schur(i, j) -= inv_corner * s(0, i) * s(0, j);
    }
  detail::require_laplacian(schur, "Schur", r);
  if (r.pass) {
    r.details = "k=" + std::to_string(b.k) + ": Schur complement is Laplacian, entry (1,n+1) = " +
                schur(1, last).to_string();
  }
  return r;
}

/// Smallest eigenvalue of S in double precision, relative to its spectral
/// radius. Sanity check only; the exact Schur/Laplacian check is the proof.
inline double slack_min_eigenvalue_relative(const SlackMatrix& sm) {
  const auto n = static_cast<Eigen::Index>(sm.s.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      m(i, j) = to_float(sm.s(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double radius = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  return radius == 0.0 ? 0.0 : ev.minCoeff() / radius;
}

}  // namespace silverprox
