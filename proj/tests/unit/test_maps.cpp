#include <gtest/gtest.h>

#include <cmath>

#include <bubblescope/constructions.hpp>
#include <bubblescope/discrete_map.hpp>
#include <bubblescope/io.hpp>
#include <bubblescope/random.hpp>

using namespace bubblescope;

TEST(Maps, WindingValuesOnTarget) {
  const auto f = winding_map(3, share(make_sphere_mesh(1, 64)));
  EXPECT_EQ(validate_map(f), "");
  const Point x = f.mesh().vertices[5];
  const double theta = std::atan2(x[1], x[0]);
  EXPECT_NEAR(f.values[5][0], std::cos(3 * theta), 1e-12);
  EXPECT_NEAR(f.values[5][1], std::sin(3 * theta), 1e-12);
}

TEST(Maps, PowerMapFixesPoles) {
  const Point n = power_map_point(2, make_point(0, 0, 1));
  EXPECT_NEAR(n[2], 1.0, 1e-12);
  const Point s = power_map_point(2, make_point(0, 0, -1));
  EXPECT_NEAR(s[2], -1.0, 1e-12);
  // The equator is wrapped k times.
  const Point e = power_map_point(3, make_point(std::cos(0.2), std::sin(0.2), 0));
  EXPECT_NEAR(e[0], std::cos(0.6), 1e-12);
  EXPECT_NEAR(e[2], 0.0, 1e-12);
}

TEST(Maps, DilationFixesPolesAndScalesChart) {
  EXPECT_NEAR(dilation_point(2.0, make_point(0, 0, 1), 2)[2], 1.0, 1e-12);
  EXPECT_NEAR(dilation_point(2.0, make_point(0, 0, -1), 2)[2], -1.0, 1e-12);
  // Equator (chart radius 1) goes to chart radius 2, height 3/5.
  EXPECT_NEAR(dilation_point(2.0, make_point(1, 0, 0), 2)[2], 0.6, 1e-12);
}

TEST(Maps, PinchIsConstantNearBasepoint) {
  const auto f = winding_map(2, share(make_sphere_mesh(1, 256)));
  const Point b = make_point(1, 0);
  const auto g = pinch(f, b, 0.5);
  EXPECT_EQ(validate_map(g), "");
  for (std::size_t i = 0; i < g.size(); ++i)
    if (distance(g.mesh().vertices[i], b) < 1e-3) {
      EXPECT_NEAR(distance(g.values[i], f.values[0]), 0.0, 1e-9);
    }
}

TEST(Maps, RandomLipschitzRespectsConstant) {
  Philox rng(9, 0);
  const auto f = random_lipschitz_map(share(make_cube_grid(2, 17)), 2.0, rng);
  EXPECT_EQ(validate_map(f), "");
  EXPECT_LE(discrete_lipschitz(f), 2.0 * 1.001);
}

TEST(Maps, JsonRoundTrip) {
  const auto f = power_map_s2(2, share(make_sphere_mesh(2, 1)));
  const auto g = map_from_json(map_to_json(f));
  ASSERT_EQ(g.size(), f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(g.values[i][j], f.values[i][j]);
}

TEST(Io, Fnv1aVectors) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Io, ShortestRoundTripDoubles) {
  EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}
