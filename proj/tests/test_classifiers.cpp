#include <gtest/gtest.h>

#include <cmath>

#include "lil/classifiers.hpp"
#include "lil/error.hpp"

using namespace lil;
using V = TestVerdict::Kind;

namespace {

const double kE2 = std::exp(-2.0);

double inv_t_log2(double t) {
  const double l = std::log(t);
  return 1.0 / (t * l * l);
}

}  // namespace

TEST(Integral, AnalyticCasesAtBothDepths) {
  for (int K : {20, 40}) {
    EXPECT_EQ(classify_integral_at_zero(inv_t_log2, kE2, K).verdict, V::convergent) << K;
    EXPECT_EQ(classify_integral_at_zero([](double t) { return 1.0 / t; }, kE2, K).verdict, V::divergent) << K;
    EXPECT_EQ(classify_integral_at_zero([](double t) { return 1.0 / std::sqrt(t); }, kE2, K).verdict, V::convergent)
        << K;
  }
}

TEST(Integral, ConstantBlocksForInverseT) {
  const auto v = classify_integral_at_zero([](double t) { return 1.0 / t; }, 0.1, 12);
  ASSERT_EQ(v.block_values.size(), 13u);
  for (double b : v.block_values) EXPECT_NEAR(b, std::log(2.0), 1e-12);
}

TEST(Integral, ScaleInvariance) {
  for (double lam : {1e-6, 3.0, 1e8}) {
    EXPECT_EQ(classify_integral_at_zero([&](double t) { return lam * inv_t_log2(t); }, kE2, 20).verdict,
              V::convergent);
    EXPECT_EQ(classify_integral_at_zero([&](double t) { return lam / t; }, kE2, 20).verdict, V::divergent);
  }
}

TEST(Integral, VerdictReDerivableFromBlocks) {
  const auto v = classify_integral_at_zero(inv_t_log2, kE2, 24);
  EXPECT_EQ(decide_integral(v.block_values, kE2).verdict, v.verdict);
  EXPECT_FALSE(v.confidence_note.empty());
}

TEST(Integral, Preconditions) {
  EXPECT_THROW(classify_integral_at_zero([](double t) { return t; }, kE2, 4), Error);
  EXPECT_THROW(classify_integral_at_zero([](double t) { return t; }, 0.9, 10), Error);
}

TEST(UpperFunction, ConstantIndexConvergesAndPlainDiverges) {
  const auto m = power_law(Profile::constant(1.5));
  for (int K : {20, 40}) {
    EXPECT_EQ(upper_function_test(m, 0.0, 0.5, 1, 0.05, K).verdict, V::convergent);
    EXPECT_EQ(upper_function_test(m, 0.0, 0.5, 1, 0.05, K, UpperNorming::plain).verdict, V::divergent);
  }
}

TEST(UpperFunction, SinusoidalIndexConverges) {
  const auto m = power_law(Profile::sinusoidal(1.5, 0.3));
  EXPECT_EQ(upper_function_test(m, 0.0, 0.5, 1, 0.05, 20).verdict, V::convergent);
}

TEST(LowerTail, Examples) {
  const double a = 1.5;
  const auto m = power_law(Profile::constant(a));
  auto v1 = [=](double t) { return std::pow(t, 1.0 / a); };
  auto v2 = [=](double t) { return std::pow(t, 1.0 / a) * std::pow(std::abs(std::log(t)), 2.0 / a); };
  for (int K : {20, 40}) {
    EXPECT_EQ(lower_tail_test(m, v1, 1.0, 0.05, K).verdict, V::divergent);
    EXPECT_EQ(lower_tail_test(m, v2, 1.0, 0.05, K).verdict, V::convergent);
  }
  EXPECT_EQ(lower_tail_test(atomic({{1.0, 1.0}, {-2.0, 0.5}}), v1, 1.0, 0.05, 20).verdict, V::convergent);
}

TEST(LowerTail, LevyOnly) {
  try {
    lower_tail_test(power_law(Profile::sinusoidal(1.5, 0.3)), [](double t) { return t; }, 1.0, 0.05, 20);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::levy_only);
  }
}

TEST(Liminf, Trichotomy) {
  const double a = 1.5;
  auto g = [=](double xi) { return std::pow(xi, a); };
  const auto pf = symbol_liminf_test(g, [=](double t) { return std::pow(t, 1.0 / a); }, 0.05, 40);
  ASSERT_EQ(pf.verdict, V::positive_finite);
  ASSERT_TRUE(pf.c.has_value());
  EXPECT_NEAR(*pf.c, 1.0, 1e-9);

  auto w_inf = [=](double t) { return std::pow(t / std::log(std::abs(std::log(t))), 1.0 / a); };
  EXPECT_EQ(symbol_liminf_test(g, w_inf, 0.05, 40).verdict, V::infinite);

  auto w_zero = [=](double t) { return std::pow(t * std::abs(std::log(t)), 1.0 / a); };
  EXPECT_EQ(symbol_liminf_test(g, w_zero, 0.05, 40).verdict, V::zero);
}

TEST(Liminf, IdentityReparametrizationAgrees) {
  auto g = [](double xi) { return xi * xi; };
  auto w = [](double t) { return std::sqrt(t); };
  auto w_id = [&](double t) { return w(std::pow(t, 1.0)); };
  EXPECT_EQ(symbol_liminf_test(g, w, 0.05, 30).verdict, symbol_liminf_test(g, w_id, 0.05, 30).verdict);
}

TEST(Liminf, RejectsIncreasingW) {
  auto g = [](double xi) { return xi; };
  EXPECT_THROW(symbol_liminf_test(g, [](double t) { return 1.0 / t; }, 0.05, 20), Error);
}

TEST(Liminf, ReDerivableFromSamples) {
  auto g = [](double xi) { return std::pow(xi, 1.2); };
  const auto v = symbol_liminf_test(g, [](double t) { return std::pow(t, 1.0 / 1.2); }, 0.05, 32);
  EXPECT_EQ(decide_liminf(v.block_values, 0.05).verdict, v.verdict);
}
