#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lil/error.hpp"
#include "lil/simulate.hpp"

using namespace lil;

namespace {

ProcessSpec stable_levy(double a) { return levy_process(LevyTriplet(Profile::constant(0.0), unit_stable(a))); }

std::vector<double> stable_draws(double a, int n, std::uint64_t seed) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) {
    StepStream s(seed, static_cast<std::uint64_t>(i), 0);
    v[i] = sample_symmetric_stable(a, s);
  }
  return v;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() - static_cast<double>(j) / b.size()));
  }
  return d;
}

double median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(Grid, UniformLayout) {
  const auto g = PathGrid::uniform(2.0, 8);
  ASSERT_EQ(g.size(), 8u);
  EXPECT_DOUBLE_EQ(g.times().front(), 0.25);
  EXPECT_DOUBLE_EQ(g.times().back(), 2.0);
  EXPECT_EQ(g.index_of(1.0).value(), 3u);
  EXPECT_FALSE(g.index_of(1.1).has_value());
  EXPECT_THROW(PathGrid::uniform(1.0, 6), Error);
  EXPECT_THROW(PathGrid::uniform(-1.0, 8), Error);
}

TEST(Grid, GeometricLayoutSpansDyadicLevels) {
  const auto g = PathGrid::geometric(1e-2, 7, 4);
  ASSERT_EQ(g.size(), 29u);
  EXPECT_DOUBLE_EQ(g.times().front(), std::ldexp(1e-2, -7));
  EXPECT_DOUBLE_EQ(g.times().back(), 1e-2);
  for (std::size_t k = 1; k < g.size(); ++k) EXPECT_GT(g.times()[k], g.times()[k - 1]);
  for (int j = 0; j <= 7; ++j) EXPECT_TRUE(g.index_of(std::ldexp(1e-2, -j)).has_value()) << j;
  EXPECT_THROW(PathGrid::geometric(1.0, 3, 3), Error);
}

TEST(StableSampler, CauchyMedianAndKs) {
  const int n = 100000;
  auto v = stable_draws(1.0, n, 17);
  EXPECT_NEAR(median(v), 0.0, 0.02);
  std::sort(v.begin(), v.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double F = 0.5 + std::atan(v[i]) / std::numbers::pi;
    d = std::max({d, std::abs(F - static_cast<double>(i) / n), std::abs(F - static_cast<double>(i + 1) / n)});
  }
  EXPECT_LT(d, 0.01);
}

TEST(StableSampler, CharacteristicFunction) {
  const int n = 100000;
  for (double a : {0.7, 1.5, 1.9}) {
    const auto v = stable_draws(a, n, 23);
    double re = 0.0;
    double im = 0.0;
    for (double x : v) {
      re += std::cos(x);
      im += std::sin(x);
    }
    EXPECT_NEAR(re / n, std::exp(-1.0), 4.0 / std::sqrt(n)) << a;
    EXPECT_NEAR(im / n, 0.0, 4.0 / std::sqrt(n)) << a;
  }
}

TEST(StableSampler, RejectsIndexOutOfRange) {
  StepStream s(1, 0, 0);
  EXPECT_THROW(sample_symmetric_stable(2.0, s), Error);
  EXPECT_THROW(sample_symmetric_stable(0.0, s), Error);
}

TEST(Path, DeterministicAndRunningSupInvariant) {
  const auto spec = stable_levy(1.5);
  const auto grid = PathGrid::uniform(1.0, 256);
  const auto a = simulate_path(spec, 0.3, grid, {5, 9});
  const auto b = simulate_path(spec, 0.3, grid, {5, 9});
  EXPECT_EQ(a.positions, b.positions);
  EXPECT_EQ(a.running_sup, b.running_sup);
  double m = 0.0;
  for (std::size_t k = 0; k < a.positions.size(); ++k) {
    m = std::max(m, std::abs(a.positions[k] - 0.3));
    EXPECT_EQ(a.running_sup[k], m);
  }
  const auto c = simulate_path(spec, 0.3, grid, {5, 10});
  EXPECT_NE(a.positions, c.positions);
}

TEST(Path, StatisticsEdgeCases) {
  const auto s = simulate_path(stable_levy(1.5), 0.0, PathGrid::uniform(1.0, 64), {1, 0});
  const auto r = path_statistics(s, {1e-300, s.running_sup.back() * 2.0 + 1.0, s.running_sup.back()});
  ASSERT_TRUE(r[0].has_value());
  EXPECT_EQ(*r[0], s.times.front());
  EXPECT_FALSE(r[1].has_value());
  ASSERT_TRUE(r[2].has_value());
  // nondecreasing in a
  std::vector<double> radii;
  for (double a = 0.01; a < s.running_sup.back(); a *= 1.5) radii.push_back(a);
  const auto taus = path_statistics(s, radii);
  for (std::size_t k = 1; k < taus.size(); ++k) EXPECT_LE(*taus[k - 1], *taus[k]);
}

TEST(Path, NestedRefinementExitsNoLater) {
  const auto fine = simulate_path(stable_levy(1.5), 0.0, PathGrid::uniform(1.0, 512), {2, 4});
  PathSample coarse;
  coarse.x0 = 0.0;
  double m = 0.0;
  for (std::size_t k = 1; k < fine.times.size(); k += 2) {
    coarse.times.push_back(fine.times[k]);
    coarse.positions.push_back(fine.positions[k]);
    m = std::max(m, std::abs(fine.positions[k]));
    coarse.running_sup.push_back(m);
  }
  for (std::size_t k = 0; k < coarse.times.size(); ++k) {
    EXPECT_GE(fine.running_sup[2 * k + 1], coarse.running_sup[k]);
  }
  std::vector<double> radii = {0.05, 0.1, 0.2, 0.4, 0.8};
  const auto tf = path_statistics(fine, radii);
  const auto tc = path_statistics(coarse, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (tc[i]) {
      ASSERT_TRUE(tf[i]);
      EXPECT_LE(*tf[i], *tc[i]);
    }
  }
}

TEST(Ensemble, ParallelMatchesSerialBitwise) {
  EnsembleRequest req{stable_levy(1.3), 0.0, PathGrid::uniform(1.0, 128), 99, 300, {}};
  EXPECT_TRUE(simulate_ensemble(req) == simulate_ensemble_serial(req));
  req.process = stable_like_process(LevyTriplet(Profile::constant(0.1), power_law(Profile::sinusoidal(1.5, 0.3))));
  EXPECT_TRUE(simulate_ensemble(req) == simulate_ensemble_serial(req));
}

TEST(Ensemble, RecordSubsetMatchesFullRecord) {
  const auto grid = PathGrid::uniform(1.0, 64);
  const auto idx = record_indices_for(grid, {0.25, 1.0});
  const auto sub = simulate_ensemble({stable_levy(1.5), 0.0, grid, 4, 50, idx});
  const auto full = simulate_ensemble({stable_levy(1.5), 0.0, grid, 4, 50, {}});
  for (std::size_t i = 0; i < 50; ++i) {
    EXPECT_EQ(sub.position(i, 0), full.position(i, 15));
    EXPECT_EQ(sub.sup(i, 1), full.sup(i, 63));
    EXPECT_EQ(sub.path(i).seed_tag.path_index, i);
  }
  EXPECT_THROW(sub.record_of(0.5), Error);
  EXPECT_THROW(record_indices_for(grid, {0.3}), Error);
}

TEST(Ensemble, SelfSimilarRunningSupMedians) {
  const auto grid = PathGrid::uniform(1.0, 4096);
  const auto ens = simulate_ensemble({stable_levy(1.5), 0.0, grid, 31, 4000, record_indices_for(grid, {1.0 / 16, 1.0})});
  std::vector<double> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    a.push_back(ens.sup(i, 1));
    b.push_back(ens.sup(i, 0));
  }
  EXPECT_NEAR(median(a) / median(b), std::pow(16.0, 2.0 / 3.0), 0.1 * std::pow(16.0, 2.0 / 3.0));
}

TEST(Ensemble, ZeroMeanForSymmetricSpecs) {
  const auto grid = PathGrid::uniform(1.0, 64);
  const auto ens = simulate_ensemble({stable_levy(1.7), 0.0, grid, 8, 20000, {}});
  for (std::size_t r = 0; r < ens.records(); r += 9) {
    double s = 0.0;
    double s2 = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      s += ens.position(i, r);
      s2 += ens.position(i, r) * ens.position(i, r);
    }
    const double n = static_cast<double>(ens.size());
    const double mean = s / n;
    const double se = std::sqrt((s2 / n - mean * mean) / n);
    EXPECT_LE(std::abs(mean), 3.0 * se) << r;
  }
}

TEST(Levy, StableLikeWithConstantIndexMatchesLevyInLaw) {
  const auto grid = PathGrid::uniform(1.0, 32);
  const auto a = simulate_ensemble({stable_levy(1.5), 0.0, grid, 1, 10000, record_indices_for(grid, {1.0})});
  const auto like = stable_like_process(LevyTriplet(Profile::constant(0.0), unit_stable(1.5)));
  const auto b = simulate_ensemble({like, 0.0, grid, 2, 10000, record_indices_for(grid, {1.0})});
  std::vector<double> ea;
  std::vector<double> eb;
  for (std::size_t i = 0; i < 10000; ++i) {
    ea.push_back(a.position(i, 0));
    eb.push_back(b.position(i, 0));
  }
  EXPECT_LT(ks_two_sample(ea, eb), 0.02);
}

TEST(Levy, UpwardAtomWithCompensatingDriftIsPoissonCounting) {
  const auto spec = levy_process(LevyTriplet(Profile::constant(-1.0), atomic({{1.0, 1.0}})));
  const auto grid = PathGrid::uniform(1.0, 16);
  const auto ens = simulate_ensemble({spec, 0.0, grid, 12, 20000, {}});
  double s = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t r = 0; r < ens.records(); ++r) {
      const double x = ens.position(i, r);
      ASSERT_NEAR(x, std::round(x), 1e-12);
      ASSERT_GE(x, 0.0);
    }
    s += ens.position(i, ens.records() - 1);
  }
  // compensator -1 cancels the drift: X_t = N_t with E N_1 = Var N_1 = 1
  EXPECT_NEAR(s / ens.size(), 1.0, 4.0 * std::sqrt(1.0 / ens.size()));
}

TEST(Levy, TabulatedCompoundPoissonMoments) {
  TabulatedMeasure t;
  t.y_min = 0.05;
  t.y_max = 2.0;
  for (int j = 0; j < 33; ++j) t.density_pos.push_back(0.5);
  const auto spec = levy_process(LevyTriplet(Profile::constant(0.0), tabulated(t, 5.0)));
  const auto grid = PathGrid::uniform(1.0, 4);
  const auto ens = simulate_ensemble({spec, 0.0, grid, 3, 40000, record_indices_for(grid, {1.0})});
  double s = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < ens.size(); ++i) {
    s += ens.position(i, 0);
    s2 += ens.position(i, 0) * ens.position(i, 0);
  }
  const double n = static_cast<double>(ens.size());
  // Var X_1 = int y^2 nu(dy) = 2 * 0.5 * (2^3 - 0.05^3) / 3
  const double var = (8.0 - 0.05 * 0.05 * 0.05) / 3.0;
  EXPECT_NEAR(s / n, 0.0, 4.0 * std::sqrt(var / n));
  EXPECT_NEAR(s2 / n, var, 0.05 * var);
}

TEST(Spec, LevyNeedsStateIndependence) {
  EXPECT_THROW(levy_process(LevyTriplet(Profile::constant(0.0), power_law(Profile::sinusoidal(1.5, 0.3)))), Error);
  EXPECT_THROW(stable_like_process(LevyTriplet(Profile::constant(0.0), atomic({{1.0, 1.0}}))), Error);
}
