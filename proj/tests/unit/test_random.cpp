#include <gtest/gtest.h>

#include <bubblescope/random.hpp>
#include <bubblescope/vec.hpp>

using bubblescope::Philox;

// Known-answer vectors for philox4x32-10 (Random123 kat_vectors).
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out[0], 0x6627e8d5u);
  EXPECT_EQ(out[1], 0xe169c58du);
  EXPECT_EQ(out[2], 0xbc57ac4cu);
  EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                 {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out[0], 0x408f276du);
  EXPECT_EQ(out[1], 0x41c83b0eu);
  EXPECT_EQ(out[2], 0xa20bc7c6u);
  EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto out = Philox::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                 {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out[0], 0xd16cfe09u);
  EXPECT_EQ(out[1], 0x94fdccebu);
  EXPECT_EQ(out[2], 0x5001e420u);
  EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(Philox, StreamsAreReproducibleAndDistinct) {
  Philox a(7, 3), b(7, 3), c(7, 4);
  int same = 0;
  for (int i = 0; i < 64; ++i) {
    const auto x = a.next_u32();
    EXPECT_EQ(x, b.next_u32());
    same += x == c.next_u32();
  }
  EXPECT_LT(same, 2);
}

TEST(Philox, UniformMoments) {
  Philox rng(1, 0);
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
  }
  EXPECT_NEAR(sum / n, 0.5, 0.003);
  EXPECT_NEAR(sum2 / n, 1.0 / 3.0, 0.003);
}

TEST(Philox, SpherePointsAreUnit) {
  Philox rng(2, 0);
  for (int m = 1; m <= 3; ++m)
    for (int i = 0; i < 100; ++i) EXPECT_NEAR(bubblescope::norm(rng.on_sphere(m)), 1.0, 1e-12);
}
