// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "silverprox/certificate.hpp"
#include "silverprox/identity.hpp"
#include "silverprox/instances.hpp"
#include "silverprox/rates.hpp"
#include "silverprox/restart.hpp"
#include "silverprox/schedule.hpp"
#include "silverprox/solver.hpp"

using namespace silverprox;
using R = RadicalScalar;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      note.str("");
      note << what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// 1. Exact certificate checks for k = 1..8 in under 120 s.
void certificate_validity(Outcome& o) {
  const auto start = Clock::now();
  for (int k = 1; k <= 8; ++k) {
    const auto b = CertificateBundle::build(k);
    const auto nn = check_multipliers_nonneg(b);
    const auto lap = check_laplacian(b);
    const auto schur = check_schur_psd(b);
    o.require(nn.pass, "k=" + std::to_string(k) + " nonneg: " + nn.details);
    o.require(lap.pass, "k=" + std::to_string(k) + " laplacian: " + lap.details);
    o.require(schur.pass, "k=" + std::to_string(k) + " schur: " + schur.details);
  }
  const double t = seconds_since(start);
  o.require(t < 120.0, "runtime " + std::to_string(t) + " s exceeds 120 s");
  if (o.pass) o.note << "k=1..8 nonneg, Laplacian, Schur all exact; " << t << " s";
}

// 2. Identity for k = 1..6 (20 trials, dim 4) and detection of single-entry perturbations.
void descent_identity(Outcome& o) {
  const std::size_t trials = 20, dim = 4;
  std::size_t detected = 0, controls = 0;
  for (int k = 1; k <= 6; ++k) {
    const auto b = CertificateBundle::build(k);
    const auto report = verify_descent_identity(b, trials, dim, 1000 + static_cast<std::uint64_t>(k), 4);
    o.require(report.pass(), "k=" + std::to_string(k) + " nonzero residual");

    const std::size_t n = b.n();
    const std::vector<std::function<void(CertificateBundle&)>> perturb{
        [n](CertificateBundle& c) { c.lambda.bar(n / 2, n) += R(1); },
        [n](CertificateBundle& c) {
          if (n > 1) {
            c.mu.bar(n, 1) += R(1);
          } else {
            c.mu.star[0] += R(1);
          }
        },
        [n](CertificateBundle& c) { c.slack.s(1, n + 1) += R(1); },
        [](CertificateBundle& c) { c.u.init += R(1); },
    };
    const char* names[] = {"lambda", "mu", "S", "u"};
    for (std::size_t p = 0; p < perturb.size(); ++p) {
      auto c = b;
      perturb[p](c);
      ++controls;
      const bool caught = !verify_descent_identity(c, trials, dim, 2000 + static_cast<std::uint64_t>(k), 4).pass();
      detected += caught;
      o.require(caught, "k=" + std::to_string(k) + " perturbation of " + names[p] + " undetected");
    }
  }
  if (o.pass) o.note << "residual 0 in 6x20 trials; " << detected << "/" << controls << " perturbations detected";
}

// 3. Base-case golden data.
void base_case(Outcome& o) {
  const R rho = R::rho();
  const R w = R(2) * (rho - R(1));
  const auto lam = build_lambda(1);
  o.require(lam.bar(0, 0) == R(0) && lam.bar(0, 1) == rho && lam.bar(1, 0) == R(1) && lam.bar(1, 1) == R(0),
            "lambda bar");
  o.require(lam.star == std::vector<R>{rho - R(1), rho}, "lambda star row");
  const auto mu = build_mu(1);
  o.require(mu.bar.size() == 1 && mu.bar(1, 1) == R(0), "mu bar");
  o.require(mu.star == std::vector<R>{R(2) * rho - R(1)}, "mu star");
  const auto sm = build_slack(1);
  o.require(sm.l(1, 1) == w && sm.l(1, 2) == -w && sm.l(2, 1) == -w && sm.l(2, 2) == w, "L");
  const R s_expected[3][3] = {{R(1) / R::sqrt2(), R(-1), R(1)}, {R(-1), w, -w}, {R(1), -w, w}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) o.require(sm.s(i, j) == s_expected[i][j], "S entry");
  const auto u = build_u_coefficients(1);
  o.require(u.init == R(1) && u.g == std::vector<R>{R(1) - rho, -rho} && u.s == std::vector<R>{-w} &&
                u.s_star == R(-1),
            "u coefficients");
  if (o.pass) o.note << "lambda, mu, L, S, u for k=1 match exactly";
}

// 4. Tight lower bound, exact.
void lower_bound(Outcome& o) {
  for (int k = 1; k <= 8; ++k) {
    const auto lb = lower_bound_instance<R>(k);
    const auto t = proximal_gd_run(lb.problem, silver_schedule(k), lb.x0);
    const R gap = objective_gap(t, t.iterations());
    const R expected = R(1) / (R(4) * rho_pow(k) - R(4));
    o.require(gap == expected, "k=" + std::to_string(k) + " gap " + gap.to_string());
    o.require(sign(rate_from_certificate(k) - gap) > 0, "k=" + std::to_string(k) + " gap exceeds bound");
  }
  if (o.pass) o.note << "gap = 1/(4 rho^k - 4) exactly and below the certificate bound, k=1..8";
}

// 5. Soundness on random composite instances.
void soundness(Outcome& o) {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240501);
  const NonsmoothKind kinds[] = {NonsmoothKind::zero, NonsmoothKind::l1, NonsmoothKind::box};
  const int per_kind = 20;
  std::size_t runs = 0;
  double worst = 0;  // largest gap / bound
  for (auto kind : kinds)
    for (int i = 0; i < per_kind; ++i) {
      const auto inst = random_composite_instance(kind, 10, rng, 0.0, 1.0);
      const double d2 = squared_norm(sub(inst.x0, *inst.problem.optimum));
      const double f_star = inst.problem.objective(*inst.problem.optimum);
      for (int k = 1; k <= 8; ++k) {
        const auto t = proximal_gd_run(inst.problem, silver_steps_float(horizon(k)), inst.x0);
        const double gap = objective_gap(t, t.iterations());
        const double bound = rate_bound(k, inst.problem.smooth.smoothness, d2).certificate;
        worst = std::max(worst, gap / bound);
        ++runs;
        o.require(gap <= bound * (1 + 1e-9) + 1e-9 * (1 + std::abs(f_star)),
                  std::string(to_string(kind)) + " instance " + std::to_string(i) + " k=" + std::to_string(k));
      }
    }
  const double t = seconds_since(start);
  o.require(t < 300.0, "runtime " + std::to_string(t) + " s exceeds 5 min");
  if (o.pass) {
    o.note << 3 * per_kind << " instances x k=1..8 (" << runs << " runs); max gap/bound " << worst << "; " << t
           << " s";
  }
}

// 6. Silver gap over the constant tight rate at n = 255.
void acceleration(Outcome& o) {
  const auto lb = lower_bound_instance<R>(8);
  const auto t = proximal_gd_run(lb.problem, silver_schedule(8), lb.x0);
  const double ratio = to_float(objective_gap(t, t.iterations())) / constant_baseline(255, 1.0, 1.0);
  const double expected = 1020.0 / to_float(R(4) * rho_pow(8) - R(4));
  o.require(std::abs(ratio / expected - 1.0) <= 1e-9, "ratio " + std::to_string(ratio));
  o.require(std::abs(ratio - 0.221) < 5e-4, "ratio not near 0.221");
  if (o.pass) o.note << "ratio " << ratio << " = 4n/(4 rho^8 - 4)";
}

// 7. Strongly convex restarts.
void restarts(Outcome& o) {
  std::mt19937_64 rng(77);
  const double kappas[] = {10.0, 100.0, 1000.0};
  const double eps_rel = 1e-6;
  const int trials = 3;
  std::vector<double> xs, ys;
  for (double kappa : kappas) {
    double iterations = 0;
    for (int trial = 0; trial < trials; ++trial) {
      const auto inst = random_composite_instance(NonsmoothKind::l1, 10, rng, 1.0 / kappa, 1.0);
      const double d0 = norm(sub(inst.x0, *inst.problem.optimum));
      const auto r = restart_solve(inst.problem, eps_rel * d0, inst.x0);
      for (const auto& e : r.epochs) {
        o.require(*e.distance_end <= 0.5 * *e.distance_start * (1 + 1e-9) + 1e-12,
                  "kappa=" + std::to_string(kappa) + " epoch did not halve the distance");
      }
      o.require(norm(sub(r.x, *inst.problem.optimum)) <= eps_rel * d0 + 1e-9, "tolerance not reached");
      iterations += static_cast<double>(r.total_iterations);
    }
    xs.push_back(std::log(kappa));
    ys.push_back(std::log(iterations / trials / std::log(1.0 / eps_rel)));
  }
  // Least-squares fit of log(T / log(1/eps)) = log C + p log kappa.
  const double mx = (xs[0] + xs[1] + xs[2]) / 3, my = (ys[0] + ys[1] + ys[2]) / 3;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double p = sxy / sxx;
  const double log_c = my - p * mx;
  double worst_factor = 1;
  for (std::size_t i = 0; i < xs.size(); ++i) worst_factor = std::max(worst_factor, std::exp(std::abs(ys[i] - log_c - p * xs[i])));
  o.require(p >= 0.70 && p <= 0.88, "fitted exponent " + std::to_string(p) + " outside [0.70, 0.88]");
  o.require(worst_factor <= 2.0, "fit off by factor " + std::to_string(worst_factor));
  if (o.pass) o.note << "fitted exponent p = " << p << " (log_rho 2 = " << std::log(2.0) / std::log(kRho) << "), fit within " << worst_factor << "x";
}

// 8. Schedule closed form versus recursion; exact sums.
void schedule_identity(Outcome& o) {
  const auto pi = silver_schedule(12);
  o.require(pi.size() == 4095, "length");
  for (std::size_t t = 0; t < pi.size(); ++t) {
    if (!(pi[t] == silver_step(static_cast<std::int64_t>(t)))) {
      o.require(false, "entry " + std::to_string(t));
      break;
    }
  }
  for (int k = 1; k <= 12; ++k) {
    o.require(sum(silver_schedule(k)) == rho_pow(k) - R(1), "sum pi k=" + std::to_string(k));
    o.require(sum(c_sequence(k)) == R(2) * (rho_pow(k) - R(1)), "sum c k=" + std::to_string(k));
  }
  if (o.pass) o.note << "4095 entries agree; sums exact for k<=12";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "certificate validity (exact)", certificate_validity},
      {2, "multi-step descent identity", descent_identity},
      {3, "base-case golden data", base_case},
      {4, "tight lower bound", lower_bound},
      {5, "rate soundness on random instances", soundness},
      {6, "acceleration at n=255", acceleration},
      {7, "strongly convex restarts", restarts},
      {8, "schedule identity", schedule_identity},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.note.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}
