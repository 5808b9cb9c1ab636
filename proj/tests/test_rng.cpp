#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "lil/rng.hpp"

using namespace lil;

TEST(Philox, KnownAnswerVectors) {
  const auto z = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(z[0], 0x6627e8d5u);
  EXPECT_EQ(z[1], 0xe169c58du);
  EXPECT_EQ(z[2], 0xbc57ac4cu);
  EXPECT_EQ(z[3], 0x9b00dbd8u);
  const auto o = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(o[0], 0x408f276du);
  EXPECT_EQ(o[1], 0x41c83b0eu);
  EXPECT_EQ(o[2], 0xa20bc7c6u);
  EXPECT_EQ(o[3], 0x6d5451fdu);
}

TEST(StepStream, PureFunctionOfTriple) {
  StepStream a(42, 7, 3);
  StepStream b(42, 7, 3);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(a(), b());
  StepStream c(42, 7, 4);
  StepStream d(42, 8, 3);
  StepStream e(43, 7, 3);
  StepStream f(42, 7, 3);
  const auto x = f();
  EXPECT_NE(x, c());
  EXPECT_NE(x, d());
  EXPECT_NE(x, e());
}

TEST(StepStream, HighStepBitsAreDistinct) {
  StepStream a(1, 0, 5);
  StepStream b(1, 0, 5 + (std::uint64_t{1} << 32));
  EXPECT_NE(a(), b());
}

TEST(StepStream, UniformIsOpenAndCentered) {
  double sum = 0.0;
  const int n = 200000;
  for (int p = 0; p < n; ++p) {
    StepStream s(9, static_cast<std::uint64_t>(p), 0);
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}
