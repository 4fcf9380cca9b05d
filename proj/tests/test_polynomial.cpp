#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "hsmap/polynomial.hpp"
#include "hsmap/shear.hpp"
#include "test_support.hpp"

using namespace hsmap;
using hsmap::testing::coeff_rel_error;

namespace {

const cplx I{0.0, 1.0};

// gamma from the linear-pair dilatation, written out independently of gamma_polys.
Polynomial gamma_of(double a1, double a2, double t) {
  return Polynomial{2 * t - 1, 1 + 2 * a2 * (1 - t) - 2 * a1 * t, 2 * t - 1 - 2 * a1 * t - 2 * a2 * (1 - t), 1.0};
}

}  // namespace

TEST(Polynomial, TrimsTrailingCoefficients) {
  Polynomial p{1.0, 2.0, 1e-20};
  EXPECT_EQ(p.degree(), 1);
  EXPECT_EQ(Polynomial({0.0, 0.0}).degree(), 0);
  EXPECT_TRUE(Polynomial({0.0, 0.0}).is_zero());
}

TEST(Polynomial, Eval) {
  EXPECT_EQ(eval(Polynomial{-1.0, 0.0, 1.0}, 1.0), cplx{0.0});
  const double t = 0.3;
  EXPECT_EQ(eval(gamma_of(0.2, -0.4, t), 0.0), cplx{2 * t - 1});
  EXPECT_NEAR(std::abs(eval(Polynomial{-0.25, 0.0, 1.0}, 0.3) - cplx{-0.16}), 0.0, 1e-16);
  // Exact at z = 0 for any degree.
  Polynomial q{cplx{0.1, 0.7}, 3.0, -2.0, 5.0};
  EXPECT_EQ(q(0.0), cplx(0.1, 0.7));
}

TEST(ConjReciprocal, Examples) {
  EXPECT_EQ(conj_reciprocal(Polynomial{0.0, 0.0, 0.0, 1.0}).coeffs(), std::vector<cplx>{1.0});
  EXPECT_EQ(conj_reciprocal(Polynomial{I, 2.0}).coeffs(), (std::vector<cplx>{2.0, -I}));

  // Real-coefficient gamma: gamma* is gamma with the coefficient order reversed.
  const double a1 = 0.5, a2 = -0.5, t = 0.25;
  const Polynomial star{1.0, 2 * t - 1 - 2 * a1 * t - 2 * a2 * (1 - t), 1 + 2 * a2 * (1 - t) - 2 * a1 * t, 2 * t - 1};
  EXPECT_LE(coeff_rel_error(conj_reciprocal(gamma_of(a1, a2, t)).coeffs(), star.coeffs()), 1e-15);
}

TEST(ConjReciprocal, InvolutionOnNonzeroConstant) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<cplx> c(1 + trial % 9);
    for (auto& x : c) x = {n(rng), n(rng)};
    const Polynomial p(c);
    EXPECT_LE(coeff_rel_error(conj_reciprocal(conj_reciprocal(p)).coeffs(), p.coeffs()), poly_tol::kTrim);
  }
}

TEST(CohnStep, ZeroConstantTerm) {
  const Polynomial p1 = cohn_step(Polynomial{0.0, 0.0, 0.0, 1.0});
  EXPECT_EQ(p1.coeffs(), (std::vector<cplx>{0.0, 0.0, 1.0}));
}

TEST(CohnStep, GammaQuarterGivesThreeQuartersZSquared) {
  const Polynomial g1 = cohn_step(gamma_of(0.5, -0.5, 0.25));
  EXPECT_EQ(g1.degree(), 2);
  EXPECT_LE(coeff_rel_error(g1.coeffs(), {0.0, 0.0, 0.75}), 1e-15);
}

TEST(CohnStep, SecondReductionMatchesLinearClosedForm) {
  const double a1 = 0.6, a2 = -0.2, t = 0.3;
  const double k = 4 * t * (1 - t);
  const Polynomial g1 = cohn_step(gamma_of(a1, a2, t));
  EXPECT_LE(coeff_rel_error(g1.coeffs(), {-k * (a1 - a2 - 1), -k * (a1 + a2), k}), 1e-14);
  const Polynomial g2 = cohn_step(g1);
  EXPECT_LE(coeff_rel_error(g2.coeffs(), {-k * k * (a1 - a2) * (a1 + a2), k * k * (a1 - a2) * (2 - a1 + a2)}),
            1e-14);
}

TEST(CohnStep, PreconditionViolated) {
  EXPECT_THROW(cohn_step(Polynomial{1.0, 0.0, 1.0}), PreconditionViolated);
  EXPECT_THROW(cohn_step(Polynomial{2.0, 0.0, 1.0}), PreconditionViolated);
  EXPECT_THROW(cohn_step(Polynomial{3.0}), PreconditionViolated);
  // Inside the margin still counts as equality.
  EXPECT_THROW(cohn_step(Polynomial{1.0 - 1e-12, 0.0, 1.0}), PreconditionViolated);
}

TEST(CountZeros, Examples) {
  auto a = count_zeros_unit_disk(Polynomial{-0.25, 0.0, 1.0});
  EXPECT_EQ(a.inside, 2);
  EXPECT_EQ(a.on_circle, 0);
  EXPECT_EQ(a.outside, 0);
  EXPECT_EQ(a.method, ZeroCountMethod::cohn_chain);

  // alpha1 = 1, alpha2 = -1: gamma1/(4t(1-t)) = z^2 - 1, both zeros on the circle.
  auto b = count_zeros_unit_disk(Polynomial{-1.0, 0.0, 1.0});
  EXPECT_EQ(b.on_circle, 2);
  EXPECT_EQ(b.inside + b.outside, 0);
  EXPECT_EQ(b.method, ZeroCountMethod::root_oracle);

  // gamma at t = 1/2, alpha1 = -0.5, alpha2 = 0.5 is z^3 + 2z: roots 0, +-i sqrt 2.
  auto c = count_zeros_unit_disk(Polynomial{0.0, 2.0, 0.0, 1.0});
  EXPECT_EQ(c.inside, 1);
  EXPECT_EQ(c.on_circle, 0);
  EXPECT_EQ(c.outside, 2);
}

TEST(CountZeros, MixedCircleAndInterior) {
  // (z - 0.3)(z - 1)(z + 1) has one zero inside, two on the circle.
  auto zc = count_zeros_unit_disk(Polynomial(hsmap::testing::expand_roots({0.3, 1.0, -1.0}, 1.0)));
  EXPECT_EQ(zc.inside, 1);
  EXPECT_EQ(zc.on_circle, 2);
  EXPECT_EQ(zc.outside, 0);
}

TEST(Roots, Examples) {
  auto r = roots(Polynomial{1.0, 0.0, 1.0});
  ASSERT_EQ(r.size(), 2u);
  std::sort(r.begin(), r.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
  EXPECT_LE(std::abs(r[0] + I), 1e-14);
  EXPECT_LE(std::abs(r[1] - I), 1e-14);

  auto q = roots(Polynomial{-0.25, 0.0, 1.0});
  std::sort(q.begin(), q.end(), [](cplx a, cplx b) { return a.real() < b.real(); });
  EXPECT_LE(std::abs(q[0] + 0.5), 1e-14);
  EXPECT_LE(std::abs(q[1] - 0.5), 1e-14);
}

TEST(Roots, GammaAtHalfFactorizes) {
  // gamma(z) = z [z^2 - (a1 + a2) z - (a1 - a2 - 1)], quadratic formula as oracle.
  const double a1 = 0.7, a2 = -0.1;
  const Polynomial g = gamma_polys(a1, a2, 0.5).gamma;
  const cplx b = -(a1 + a2), c = -(a1 - a2 - 1);
  const cplx disc = std::sqrt(b * b - 4.0 * c);
  std::vector<cplx> expected{0.0, (-b + disc) / 2.0, (-b - disc) / 2.0};
  auto got = roots(g);
  ASSERT_EQ(got.size(), 3u);
  for (const auto& e : expected) {
    double best = 1e9;
    for (const auto& x : got) best = std::min(best, std::abs(x - e));
    EXPECT_LE(best, 1e-12);
  }
}

TEST(Roots, NoConvergenceWhenStarved) {
  const Polynomial p(hsmap::testing::expand_roots({0.3, -0.7, {0.1, 0.9}, 2.0, {-1.5, 0.4}, 0.2}, 1.0));
  EXPECT_THROW(roots(p, 1), NoConvergence);
}

TEST(Roots, ResidualBoundProperty) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<cplx> c(2 + trial % 8);
    for (auto& x : c) x = {n(rng), n(rng)};
    const Polynomial p(c);
    for (const auto& r : roots(p)) {
      const double bound = poly_tol::kRoot * p.scale() * std::pow(std::max(1.0, std::abs(r)), p.degree());
      EXPECT_LE(std::abs(p(r)), bound);
    }
  }
}

TEST(CountZeros, AgreesWithRootOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> deg(1, 8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<cplx> rs(deg(rng));
    for (auto& r : rs) r = hsmap::testing::random_root_off_circle(rng);
    const Polynomial p(hsmap::testing::expand_roots(rs, hsmap::testing::random_disk_point(rng, 3.0) + 0.1));
    const auto chain = count_zeros_unit_disk(p);
    const auto oracle = classify_roots(roots(p));
    EXPECT_EQ(chain.method, ZeroCountMethod::cohn_chain);
    EXPECT_EQ(chain.inside, oracle.inside);
    EXPECT_EQ(chain.outside, oracle.outside);
    EXPECT_EQ(chain.inside + chain.on_circle + chain.outside, p.degree());
  }
}

TEST(CohnStep, DegreeLawAgainstOracle) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> deg(2, 8);
  int applied = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<cplx> rs(deg(rng));
    for (auto& r : rs) r = hsmap::testing::random_root_off_circle(rng);
    const Polynomial p(hsmap::testing::expand_roots(rs, 1.0));
    if (!(std::abs(p[0]) < std::abs(p.leading()) - poly_tol::kCohn * p.scale())) continue;
    ++applied;
    const Polynomial p1 = cohn_step(p);
    EXPECT_EQ(p1.degree(), p.degree() - 1);
    EXPECT_EQ(classify_roots(roots(p1)).inside, classify_roots(roots(p)).inside - 1);
  }
  EXPECT_GT(applied, 50);
}
