#pragma once

// Exact arithmetic in the quadratic field Q(sqrt2).
//
// Every certificate quantity (stepsizes, multipliers, slack matrices, rates)
// is a polynomial in rho = 1 + sqrt2 and its inverse, so a pair of GMP
// rationals is enough to carry all of it exactly.

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstddef>
#include <deque>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace silverprox {

using Rational = mpq_class;

inline Rational make_rational(long num, long den) {
  if (den == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r{mpz_class(num), mpz_class(den)};
  r.canonicalize();
  return r;
}

/// A number a + b*sqrt2 with arbitrary-precision rational a, b.
///
/// Components are always kept in lowest terms with a positive denominator,
/// so equality is componentwise.
class RadicalScalar {
 public:
  RadicalScalar() = default;

  template <std::integral I>
  RadicalScalar(I a) : a_(static_cast<long>(a)) {}  // NOLINT(google-explicit-constructor)

  RadicalScalar(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }

  explicit RadicalScalar(Rational a) : RadicalScalar(std::move(a), Rational(0)) {}

  static RadicalScalar sqrt2() { return {Rational(0), Rational(1)}; }
  static RadicalScalar rho() { return {Rational(1), Rational(1)}; }

  const Rational& rational_part() const { return a_; }
  const Rational& radical_part() const { return b_; }

  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

  RadicalScalar conjugate() const { return {a_, -b_}; }

  // Field norm a^2 - 2b^2; nonzero for every nonzero element.
  Rational norm() const {
    Rational r = a_ * a_ - 2 * b_ * b_;
    return r;
  }

  RadicalScalar inverse() const {
    if (is_zero()) throw std::domain_error("RadicalScalar: division by zero");
    Rational d = norm();
    return {Rational(a_ / d), Rational(-b_ / d)};
  }

  RadicalScalar operator-() const { return {-a_, -b_}; }

  RadicalScalar& operator+=(const RadicalScalar& y) {
    a_ += y.a_;
    b_ += y.b_;
    return *this;
  }
  RadicalScalar& operator-=(const RadicalScalar& y) {
    a_ -= y.a_;
    b_ -= y.b_;
    return *this;
  }
  RadicalScalar& operator*=(const RadicalScalar& y) {
    Rational a = a_ * y.a_ + 2 * b_ * y.b_;
    Rational b = a_ * y.b_ + b_ * y.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
  }
  RadicalScalar& operator/=(const RadicalScalar& y) { return *this *= y.inverse(); }

  friend RadicalScalar operator+(RadicalScalar x, const RadicalScalar& y) { return x += y; }
  friend RadicalScalar operator-(RadicalScalar x, const RadicalScalar& y) { return x -= y; }
  friend RadicalScalar operator*(RadicalScalar x, const RadicalScalar& y) { return x *= y; }
  friend RadicalScalar operator/(RadicalScalar x, const RadicalScalar& y) { return x /= y; }

  friend bool operator==(const RadicalScalar& x, const RadicalScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }

  /// Exact sign of the real number a + b*sqrt2.
  int sign() const {
    const int sa = sgn(a_);
    const int sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    // Mixed signs: the term of larger magnitude wins; a^2 == 2b^2 only at 0.
    return cmp(a_ * a_, 2 * b_ * b_) > 0 ? sa : sb;
  }

  friend std::strong_ordering operator<=>(const RadicalScalar& x, const RadicalScalar& y) {
    const int s = (x - y).sign();
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  /// Nearest double. Opposite-sign components are combined through the
  /// conjugate, (a^2 - 2b^2) / (a - b*sqrt2), to avoid cancellation.
  double to_double() const {
    const double r2 = std::sqrt(2.0);
    if (sgn(a_) * sgn(b_) >= 0) return a_.get_d() + b_.get_d() * r2;
    return norm().get_d() / (a_.get_d() - b_.get_d() * r2);
  }

  /// Canonical "p/q + r/s*sqrt2" form used in reports.
  std::string to_string() const {
    return a_.get_num().get_str() + "/" + a_.get_den().get_str() + " + " +
           b_.get_num().get_str() + "/" + b_.get_den().get_str() + "*sqrt2";
  }

  static RadicalScalar parse(std::string_view text);

 private:
  Rational a_{0};
  Rational b_{0};
};

inline int sign(const RadicalScalar& x) { return x.sign(); }
inline double to_float(const RadicalScalar& x) { return x.to_double(); }

inline std::ostream& operator<<(std::ostream& os, const RadicalScalar& x) {
  return os << x.to_string();
}

inline RadicalScalar RadicalScalar::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  auto bad = [&] {
    return std::invalid_argument("RadicalScalar::parse: malformed \"" + std::string(text) + "\"");
  };
  constexpr std::string_view kSuffix = "*sqrt2";
  const auto plus = text.find(" + ");
  if (plus == std::string_view::npos) throw bad();
  auto lhs = trim(text.substr(0, plus));
  auto rhs = trim(text.substr(plus + 3));
  if (rhs.size() <= kSuffix.size() || rhs.substr(rhs.size() - kSuffix.size()) != kSuffix) {
    throw bad();
  }
  rhs.remove_suffix(kSuffix.size());
  Rational a, b;
  try {
    a = Rational(std::string(lhs));
    b = Rational(std::string(rhs));
  } catch (const std::invalid_argument&) {
    throw bad();
  }
  if (sgn(a.get_den()) == 0 || sgn(b.get_den()) == 0) throw bad();
  return {a, b};
}

/// Exact rho^j for any integer j (negative powers use 1/rho = sqrt2 - 1).
inline RadicalScalar rho_pow(int j) {
  RadicalScalar base = j >= 0 ? RadicalScalar::rho() : RadicalScalar(-1) + RadicalScalar::sqrt2();
  unsigned e = j >= 0 ? static_cast<unsigned>(j) : static_cast<unsigned>(-(j + 1)) + 1u;
  RadicalScalar result(1);
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

/// Memoized powers of rho for one construction/verification session.
class RhoPowers {
 public:
  const RadicalScalar& operator()(int j) {
    auto& table = j >= 0 ? positive_ : negative_;
    const auto idx = static_cast<std::size_t>(j >= 0 ? j : -j);
    if (table.empty()) table.emplace_back(1);
    const RadicalScalar step = j >= 0 ? RadicalScalar::rho() : rho_pow(-1);
    while (table.size() <= idx) table.push_back(table.back() * step);
    return table[idx];
  }

 private:
  // deque: references stay valid as the tables grow
  std::deque<RadicalScalar> positive_;
  std::deque<RadicalScalar> negative_;
};

}  // namespace silverprox
