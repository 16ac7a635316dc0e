#include "silverprox/certificate.hpp"

#include <gtest/gtest.h>

namespace silverprox {
namespace {

using R = RadicalScalar;

R make(long a, long b) { return R(Rational(a), Rational(b)); }
const R kRhoE = R::rho();

// ---------------------------------------------------------------- k = 1

TEST(CertificateBaseCase, Lambda) {
  const MultiplierF lam = build_lambda(1);
  ASSERT_EQ(lam.bar.size(), 2u);
  EXPECT_EQ(lam.bar.first_index(), 0u);
  EXPECT_EQ(lam.bar(0, 0), R(0));
  EXPECT_EQ(lam.bar(0, 1), kRhoE);
  EXPECT_EQ(lam.bar(1, 0), R(1));
  EXPECT_EQ(lam.bar(1, 1), R(0));
  EXPECT_EQ(lam.star, (std::vector<R>{kRhoE - R(1), kRhoE}));
}

TEST(CertificateBaseCase, Mu) {
  const MultiplierH mu = build_mu(1);
  ASSERT_EQ(mu.bar.size(), 1u);
  EXPECT_EQ(mu.bar.first_index(), 1u);
  EXPECT_EQ(mu.bar(1, 1), R(0));
  EXPECT_EQ(mu.star, (std::vector<R>{R(2) * kRhoE - R(1)}));
}

TEST(CertificateBaseCase, Slack) {
  const SlackMatrix sm = build_slack(1);
  const R w = R(2) * (kRhoE - R(1));  // 2 sqrt2
  EXPECT_EQ(sm.bar_l.size(), 1u);
  EXPECT_EQ(sm.bar_l(1, 1), w);
  ASSERT_EQ(sm.l.size(), 2u);
  EXPECT_EQ(sm.l(1, 1), w);
  EXPECT_EQ(sm.l(1, 2), -w);
  EXPECT_EQ(sm.l(2, 1), -w);
  EXPECT_EQ(sm.l(2, 2), w);
  // Symmetric form of S; border -e_1 + e_{n+1}.
  ASSERT_EQ(sm.s.size(), 3u);
  const R expected[3][3] = {{R(1) / R::sqrt2(), R(-1), R(1)}, {R(-1), w, -w}, {R(1), -w, w}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(sm.s(i, j), expected[i][j]) << i << "," << j;
}

TEST(CertificateBaseCase, UCoefficients) {
  const UCoefficients u = build_u_coefficients(1);
  EXPECT_EQ(u.init, R(1));
  EXPECT_EQ(u.g, (std::vector<R>{R(1) - kRhoE, -kRhoE}));
  EXPECT_EQ(u.s, (std::vector<R>{R(-2) * (kRhoE - R(1))}));
  EXPECT_EQ(u.s_star, R(-1));
}

TEST(CertificateBaseCase, ChecksPass) {
  const auto b = CertificateBundle::build(1);
  EXPECT_TRUE(b.consistent());
  EXPECT_TRUE(check_multipliers_nonneg(b).pass);
  EXPECT_TRUE(check_laplacian(b).pass);
  const auto schur = check_schur_psd(b);
  EXPECT_TRUE(schur.pass) << schur.details;
  // Schur complement is sqrt2 [[1, -1], [-1, 1]], so entry (1, n+1) = -sqrt2.
  EXPECT_NE(schur.details.find(R(-R::sqrt2()).to_string()), std::string::npos) << schur.details;
}

// ---------------------------------------------------------------- k = 2

TEST(CertificateKTwo, LambdaEntries) {
  const MultiplierF lam = build_lambda(2);
  ASSERT_EQ(lam.bar.size(), 4u);
  // Sparse correction.
  EXPECT_EQ(lam.bar(1, 3), kRhoE);
  EXPECT_EQ(lam.bar(3, 1), kRhoE);
  // Low-rank correction rho pi_1 = 2 + sqrt2 at (1, 2); at (3, 2) it adds to
  // the scaled copy rho^2 lambda(1, 0) = 3 + 2 sqrt2.
  EXPECT_EQ(lam.bar(1, 2), make(2, 1));
  EXPECT_EQ(lam.bar(3, 2), make(5, 3));
  EXPECT_EQ(lam.bar(2, 3), rho_pow(2) * kRhoE);
  EXPECT_EQ(lam.bar(0, 1), kRhoE);
  EXPECT_EQ(lam.bar(1, 0), R(1));
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(lam.bar(i, i), R(0));
  EXPECT_EQ(lam.star, (std::vector<R>{R::sqrt2(), R(2), R::sqrt2(), rho_pow(2)}));
}

TEST(CertificateKTwo, MuEntries) {
  const MultiplierH mu = build_mu(2);
  ASSERT_EQ(mu.bar.size(), 3u);
  EXPECT_EQ(mu.bar(3, 1), R(0));
  // (rho - 1/rho)(rho^0 + 1) = 2 * 2.
  EXPECT_EQ(mu.bar(3, 2), R(4));
  EXPECT_EQ(mu.bar(3, 2), (rho_pow(2) - R(1)) * (R(2) * R::sqrt2() - R(2)));
  EXPECT_EQ(mu.bar(1, 2), kRhoE);
  EXPECT_EQ(mu.bar(1, 3), kRhoE / R(2) * R::sqrt2());
  EXPECT_EQ(mu.bar(2, 3), rho_pow(2) + kRhoE / R(2) * R::sqrt2());
  const auto c = c_sequence(2);
  EXPECT_EQ(mu.star, (std::vector<R>{c[0] + R(1), c[1], c[2]}));
}

TEST(CertificateKTwo, SlackMiddleDiagonal) {
  // Block term at the new middle index n + 1 = 2 is (rho^{k-1} + 1)(rho^{k+1} + 1)
  // = 2 (rho^2 + 1) = 8 + 4 sqrt2 at k = 1; the rank-one term subtracts (c_2 - pi_2)^2.
  const SlackMatrix sm = build_slack(2);
  const auto c = c_sequence(2);
  const auto pi = silver_schedule(2);
  const R d = c[1] - pi[1];
  EXPECT_EQ(sm.bar_l(2, 2), make(8, 4) - d * d);
  EXPECT_EQ(sm.bar_l(2, 2), make(-4, 12));
  EXPECT_TRUE(sm.bar_l.is_symmetric());
  EXPECT_TRUE(sm.l.is_symmetric());
  EXPECT_TRUE(sm.s.is_symmetric());
}

TEST(CertificateKTwo, SchurCornerEntryNonpositive) {
  const auto b = CertificateBundle::build(2);
  const R entry = b.slack.l(1, 4) + R::sqrt2();
  EXPECT_LE(entry, R(0));
  EXPECT_EQ(b.schedule.c[0], R::sqrt2());
}

// ------------------------------------------------------- k = 1..8, exact

TEST(CertificateChecks, AllPassUpToEight) {
  for (int k = 1; k <= 8; ++k) {
    const auto b = CertificateBundle::build(k);
    ASSERT_TRUE(b.consistent());
    const auto nn = check_multipliers_nonneg(b);
    const auto lap = check_laplacian(b);
    const auto schur = check_schur_psd(b);
    EXPECT_TRUE(nn.pass) << "k=" << k << " " << nn.details;
    EXPECT_TRUE(lap.pass) << "k=" << k << " " << lap.details;
    EXPECT_TRUE(schur.pass) << "k=" << k << " " << schur.details;
  }
}

TEST(CertificateChecks, FloatEigenvalueSanity) {
  for (int k = 1; k <= 6; ++k) EXPECT_GE(slack_min_eigenvalue_relative(build_slack(k)), -1e-9) << "k=" << k;
}

TEST(CertificateChecks, MuLastRowClosedForm) {
  for (int k = 2; k <= 7; ++k) {
    const auto mu = build_mu(k);
    const auto s = StepSchedule::build(k);
    const std::size_t n = s.n;
    for (std::size_t j = 1; j < n; ++j)
      EXPECT_EQ(mu.bar(n, j), (rho_pow(k) - R(1)) * (s.c[j - 1] - s.pi[j - 1])) << "k=" << k << " j=" << j;
  }
}

TEST(CertificateChecks, MuRowNAfterGluingClosedForm) {
  // mu^(k+1)_{n,j} = rho^{2k-1} / (rho^{k-1} + 1) (c^(k)_j - pi^(k)_j) >= 0 for 1 <= j < n.
  for (int k = 1; k <= 6; ++k) {
    const auto next = build_mu(k + 1);
    const auto s = StepSchedule::build(k);
    const R factor = rho_pow(2 * k - 1) / (rho_pow(k - 1) + R(1));
    for (std::size_t j = 1; j < s.n; ++j) {
      const R expected = factor * (s.c[j - 1] - s.pi[j - 1]);
      EXPECT_EQ(next.bar(s.n, j), expected) << "k=" << k << " j=" << j;
      EXPECT_GE(expected, R(0));
    }
  }
}

TEST(CertificateChecks, RecursionStructure) {
  for (int k = 1; k <= 5; ++k) {
    const auto lam = build_lambda(k), lam_next = build_lambda(k + 1);
    const auto mu = build_mu(k), mu_next = build_mu(k + 1);
    const std::size_t n = horizon(k);
    // lambda: top-left block is an exact copy; bottom-right block is rho^2 times it
    // except for the low-rank row 2n+1.
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        EXPECT_EQ(lam_next.bar(i, j), lam.bar(i, j)) << k << ":" << i << "," << j;
        if (i != n) { EXPECT_EQ(lam_next.bar(n + 1 + i, n + 1 + j), rho_pow(2) * lam.bar(i, j)); }
      }
    // mu: top-left block is a copy except row n.
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t j = 1; j <= n; ++j) EXPECT_EQ(mu_next.bar(i, j), mu.bar(i, j)) << k << ":" << i << "," << j;
  }
}

// ------------------------------------------------------- negative controls

TEST(CertificateNegative, MuEntryDecremented) {
  auto b = CertificateBundle::build(2);
  b.mu.bar(b.n(), 1) -= R(1);
  const auto r = check_multipliers_nonneg(b);
  ASSERT_FALSE(r.pass);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->object, "mu");
  EXPECT_EQ(r.violation->i, 3u);
  EXPECT_EQ(r.violation->j, 1u);
}

TEST(CertificateNegative, NegativeLambdaStar) {
  auto b = CertificateBundle::build(3);
  b.lambda.star[2] = R(-1);
  const auto r = check_multipliers_nonneg(b);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.violation->object, "lambda*");
  EXPECT_EQ(r.violation->j, 2u);
}

TEST(CertificateNegative, LaplacianCornerBumped) {
  auto b = CertificateBundle::build(3);
  const std::size_t last = b.slack.l.last_index();
  b.slack.l(last, last) += R(1);
  const auto r = check_laplacian(b);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.violation->rule, "zero row sum");
  EXPECT_EQ(r.violation->i, last);
}

TEST(CertificateNegative, AsymmetricSlack) {
  auto b = CertificateBundle::build(2);
  b.slack.s(1, 2) += R(1);
  EXPECT_FALSE(check_schur_psd(b).pass);
}

TEST(CertificateNegative, SchurCornerChanged) {
  auto b = CertificateBundle::build(2);
  b.slack.s(0, 0) = R(1);
  const auto r = check_schur_psd(b);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.violation->rule, "corner 1/sqrt2");
}

TEST(CertificateNegative, SmallCornerBreaksSchurSign) {
  // With corner 1/2 the Schur entry (1, n+1) is -c_1 + 2 = 2 - sqrt2 > 0.
  auto b = CertificateBundle::build(2);
  const R half(make_rational(1, 2));
  ExactGrid schur = b.slack.l;
  const std::size_t last = schur.last_index();
  schur(1, last) += R(1) / half;
  EXPECT_GT(schur(1, last), R(0));
}

TEST(CertificateGrid, BoundsChecked) {
  ExactGrid g(3, 1);
  EXPECT_TRUE(g.contains(3));
  EXPECT_FALSE(g.contains(0));
  EXPECT_THROW(g.at(0, 1), std::out_of_range);
  EXPECT_THROW(g.at(1, 4), std::out_of_range);
  EXPECT_THROW(CertificateBundle::build(0), std::invalid_argument);
}

}  // namespace
}  // namespace silverprox
