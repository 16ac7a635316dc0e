#pragma once

// Per-iteration record of a proximal gradient run, and the co-coercivities
// evaluated on it.

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "silverprox/linalg.hpp"

namespace silverprox {

/// Index value standing for the optimum x_* in {0, ..., n, *}.
inline constexpr std::size_t kStar = std::numeric_limits<std::size_t>::max();

template <class S>
struct OptimumData {
  Vec<S> x;
  Vec<S> g;
  Vec<S> s;  // s_* = -g_*
  S f{0};
  S h{0};
};

template <class S>
struct Trace {
  S smoothness{1};
  std::vector<S> steps;           // effective stepsizes alpha_t / M
  std::vector<Vec<S>> x;          // x_0 .. x_n
  std::vector<Vec<S>> g;          // g_0 .. g_n
  std::vector<Vec<S>> s;          // s_1 .. s_n stored at 1..n; s[0] is empty
  std::vector<S> f;               // f_0 .. f_n
  std::vector<S> h;               // h_0 .. h_n
  std::optional<OptimumData<S>> optimum;

  std::size_t iterations() const { return steps.size(); }

  S objective(std::size_t i) const { return i == kStar ? star().f + star().h : f.at(i) + h.at(i); }

  const OptimumData<S>& star() const {
    if (!optimum) throw std::invalid_argument("trace has no optimum data");
    return *optimum;
  }

  const Vec<S>& point(std::size_t i) const { return i == kStar ? star().x : x.at(i); }
  const Vec<S>& gradient(std::size_t i) const { return i == kStar ? star().g : g.at(i); }
  const S& f_value(std::size_t i) const { return i == kStar ? star().f : f.at(i); }
  const S& h_value(std::size_t i) const { return i == kStar ? star().h : h.at(i); }

  const Vec<S>& subgradient(std::size_t i) const {
    if (i == kStar) return star().s;
    if (i == 0 || i >= s.size()) {
      throw std::invalid_argument("trace has no subgradient at index " + std::to_string(i));
    }
    return s[i];
  }
};

/// Q^f_ij = f_i - f_j - <g_j, x_i - x_j> - |g_i - g_j|^2 / (2M).
template <class S>
S cocoercivity_f(const Trace<S>& t, std::size_t i, std::size_t j) {
  if (i == j) return S(0);
  const Vec<S> dx = sub(t.point(i), t.point(j));
  const Vec<S> dg = sub(t.gradient(i), t.gradient(j));
  S q = t.f_value(i) - t.f_value(j) - dot(t.gradient(j), dx);
  q -= squared_norm(dg) / (S(2) * t.smoothness);
  return q;
}

/// Q^h_ij = h_i - h_j - <s_j, x_i - x_j>, for i, j in {1, ..., n, *}.
template <class S>
S cocoercivity_h(const Trace<S>& t, std::size_t i, std::size_t j) {
  if (i == 0 || j == 0) {
    throw std::invalid_argument("cocoercivity_h: index 0 carries no subgradient");
  }
  if (i == j) return S(0);
  const Vec<S>& sj = t.subgradient(j);
  (void)t.subgradient(i);
  return t.h_value(i) - t.h_value(j) - dot(sj, sub(t.point(i), t.point(j)));
}

}  // namespace silverprox
