#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "lil/error.hpp"
#include "lil/symbol.hpp"

using namespace lil;

namespace {

LevyTriplet zero_drift(LevyMeasureSpec m) { return LevyTriplet(Profile::constant(0.0), std::move(m)); }

}  // namespace

TEST(Exponent, SymmetricAtomsAtPi) {
  const auto p = eval_exponent(zero_drift(atomic({{1.0, 1.0}, {-1.0, 1.0}})), 0.0, std::numbers::pi);
  EXPECT_NEAR(p.re, 4.0, 1e-14);
  EXPECT_EQ(p.im, 0.0);
}

TEST(Exponent, VanishesAtZero) {
  for (const auto& m : {unit_stable(1.5), atomic({{1.0, 2.0}}), power_law(Profile::sinusoidal(1.5, 0.3))}) {
    const auto p = eval_exponent(LevyTriplet(Profile::constant(0.7), m), 0.3, 0.0);
    EXPECT_EQ(p.re, 0.0);
    EXPECT_EQ(p.im, 0.0);
  }
}

TEST(Exponent, StableScalingByQuadrature) {
  const auto tr = zero_drift(power_law(Profile::constant(1.5)));
  const auto p1 = eval_exponent(tr, 0.0, 1.0);
  const auto p2 = eval_exponent(tr, 0.0, 2.0);
  EXPECT_NEAR(p2.re / p1.re, std::pow(2.0, 1.5), 1e-7);
  EXPECT_EQ(p1.im, 0.0);
}

TEST(Exponent, UnitStableEqualsPowerOfXi) {
  for (double a : {0.6, 1.0, 1.5, 1.9}) {
    const auto tr = zero_drift(unit_stable(a));
    for (double xi : {0.01, 0.3, 1.0, 7.0, 300.0}) {
      EXPECT_NEAR(eval_exponent(tr, 0.0, xi).re, std::pow(xi, a), 2e-7 * std::pow(xi, a)) << a << " " << xi;
    }
  }
}

TEST(Exponent, CompensatedSingleAtomAndDrift) {
  // nu = delta_{+1}: p = 1 - cos xi + i (xi - sin xi); drift adds i l xi
  const LevyTriplet tr(Profile::constant(0.25), atomic({{1.0, 1.0}}));
  for (double xi : {0.5, 2.0, -3.0}) {
    const auto p = eval_exponent(tr, 0.0, xi);
    EXPECT_NEAR(p.re, 1.0 - std::cos(xi), 1e-15);
    EXPECT_NEAR(p.im, xi - std::sin(xi) + 0.25 * xi, 1e-15);
  }
}

TEST(Exponent, TabulatedMatchesAtomFreeClosedForm) {
  // f(y) = |y|^{-2} on [0.01, 1]: Re p = 2 int_{0.01}^1 (1 - cos xi y) y^{-2} dy
  TabulatedMeasure t;
  t.y_min = 0.01;
  t.y_max = 1.0;
  for (int j = 0; j < 17; ++j) t.density_pos.push_back(std::pow(0.01 * std::pow(100.0, j / 16.0), -2.0));
  const auto tr = zero_drift(tabulated(t));
  const double xi = 3.0;
  // Oracle: composite Simpson on a fine uniform grid.
  const int n = 200000;
  const double h = (1.0 - 0.01) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double y = 0.01 + i * h;
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    s += w * (1.0 - std::cos(xi * y)) / (y * y);
  }
  EXPECT_NEAR(eval_exponent(tr, 0.0, xi).re, 2.0 * s * h / 3.0, 1e-8);
}

TEST(MaximalSymbol, ClosedFormExamples) {
  EXPECT_NEAR(eval_pU(power_law(Profile::constant(1.5)), 0.0, 2.0), 2.8284271247461903, 1e-14);
  EXPECT_EQ(eval_pU(unit_stable(1.2), 0.0, 0.0), 0.0);
  EXPECT_NEAR(eval_pU(atomic({{1.0, 1.0}, {-1.0, 1.0}}), 0.0, 0.5), 0.5, 1e-15);
}

TEST(MaximalSymbol, QuadratureAgreesWithClosedForm) {
  const auto m = power_law(Profile::sinusoidal(1.5, 0.3));
  for (double x : {-1.0, 0.2}) {
    for (double xi : {0.1, 3.0, 100.0}) {
      const double a = eval_pU(m, x, xi, PUMethod::automatic);
      EXPECT_NEAR(eval_pU(m, x, xi, PUMethod::quadrature), a, 1e-6 * a);
    }
  }
}

TEST(MaximalSymbol, EvenInXi) {
  const auto m = atomic({{0.3, 1.0}, {-2.0, 0.5}});
  EXPECT_EQ(eval_pU(m, 0.0, 1.7), eval_pU(m, 0.0, -1.7));
}

TEST(TailMass, Examples) {
  const auto pl = power_law(Profile::constant(1.0), PowerLawScale{PowerLawScale::Kind::profile, Profile::constant(0.25)});
  EXPECT_NEAR(tail_mass(pl, 0.0, 2.0), 0.25, 1e-15);
  const auto at = atomic({{1.0, 1.0}, {-1.0, 1.0}});
  EXPECT_EQ(tail_mass(at, 0.0, 1.5), 0.0);
  EXPECT_EQ(tail_mass(at, 0.0, 0.5), 2.0);
  double prev = tail_mass(pl, 0.0, 0.01);
  for (double r = 0.02; r < 10.0; r *= 1.7) {
    const double v = tail_mass(pl, 0.0, r);
    EXPECT_LE(v, prev);
    prev = v;
  }
}

TEST(Sector, SymmetricIsZero) {
  const auto s = sector_estimate(zero_drift(unit_stable(1.5)), {-1.0, 1.0}, {0.5, 1.0, 4.0, 16.0});
  EXPECT_FALSE(s.unbounded_on_grid);
  EXPECT_EQ(s.value, 0.0);
}

TEST(Sector, CompensatedPositiveAtomIsUnbounded) {
  // Re p = 1 - cos xi vanishes at 2 pi; refinement keeps closing in on it
  const auto s = sector_estimate(zero_drift(atomic({{1.0, 1.0}})), {0.0, 0.0}, {0.5, 1.0, 2.0, 4.0, 8.0});
  EXPECT_TRUE(s.unbounded_on_grid);
}

TEST(Sector, MixtureStabilizes) {
  const auto m = atomic({{1.0, 0.475}, {-1.0, 0.475}, {2.0, 0.475}, {-2.0, 0.475}, {0.5, 0.05}});
  const auto s = sector_estimate(zero_drift(m), {0.0, 0.0}, {0.3, 1.0, 3.0, 10.0});
  EXPECT_FALSE(s.unbounded_on_grid);
  EXPECT_GT(s.value, 0.0);
  EXPECT_LT(s.value, 1.0);
}

TEST(Sector, DriftBelowStableIndexStabilizes) {
  // |Im p| / Re p = 0.5 xi^{-1/2}, largest at the smallest grid point
  const LevyTriplet tr(Profile::constant(0.5), unit_stable(1.5));
  const auto s = sector_estimate(tr, {-1.0, 1.0}, {0.3, 1.0, 3.0, 10.0});
  EXPECT_FALSE(s.unbounded_on_grid);
  EXPECT_NEAR(s.value, 0.5 / std::sqrt(0.3), 1e-6);
}

TEST(Sector, ViolationWhenRealPartVanishes) {
  // Pure drift at xi = 2 pi: Re p = 0 for atoms at +-1, Im p = l xi != 0
  const LevyTriplet tr(Profile::constant(1.0), atomic({{1.0, 1.0}, {-1.0, 1.0}}));
  try {
    sector_estimate(tr, {0.0, 0.0}, {2.0 * std::numbers::pi});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::sector_violated);
  }
}

TEST(Envelope, MonotoneMinorantOfRealPart) {
  const auto tr = zero_drift(power_law(Profile::sinusoidal(1.5, 0.3)));
  const auto fam = build_symbol_family(tr, {-1.0, 1.0}, {1.0, 4.0, 16.0}, 100.0);
  double prev = 0.0;
  for (double xi = 1.0; xi <= 100.0; xi *= 1.13) {
    const double g = fam.g(xi);
    EXPECT_GE(g, prev);
    prev = g;
  }
  EXPECT_EQ(fam.count_envelope_violations({1.0, 2.5, 7.0, 30.0, 99.0}), 0u);
  EXPECT_GT(fam.coefficient_bound, 0.0);
}

TEST(Properties, RandomizedDoublingDominationScaling) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> ua(0.3, 1.9);
  std::uniform_real_distribution<double> ux(-2.0, 2.0);
  std::uniform_real_distribution<double> ulxi(-3.0, 3.0);
  std::uniform_real_distribution<double> ul(0.01, 0.99);
  for (int i = 0; i < 60; ++i) {
    const double a = ua(gen);
    const double y = ux(gen);
    const auto m = i % 2 ? power_law(Profile::sinusoidal(std::clamp(a, 0.5, 1.6), 0.3))
                         : atomic({{y, 1.0 + ul(gen)}, {-y, 1.0 + ul(gen)}, {ux(gen) + 3.0, ul(gen)}});
    const auto sym = i % 2 ? m : atomic({{y, 0.7}, {-y, 0.7}, {3.0 + y, 0.2}, {-3.0 - y, 0.2}});
    const double x = ux(gen);
    const double xi = std::pow(10.0, ulxi(gen));
    const double lam = ul(gen);
    const double pu = eval_pU(m, x, xi);
    EXPECT_LE(eval_pU(m, x, 2.0 * xi), 4.0 * pu + 1e-9);
    EXPECT_LE(eval_pU(m, x, xi / lam), pu / (lam * lam) + 1e-9);
    EXPECT_LE(eval_exponent(zero_drift(sym), x, xi).abs(), 2.0 * eval_pU(sym, x, xi) + 1e-9);
  }
}

TEST(Properties, DominationNeedsSymmetry) {
  // compensated one-sided atom: |p(10)| is about 10 while p^U(10) = 1
  const auto m = atomic({{1.0, 1.0}});
  EXPECT_GT(eval_exponent(zero_drift(m), 0.0, 10.0).abs(), 2.0 * eval_pU(m, 0.0, 10.0));
}
