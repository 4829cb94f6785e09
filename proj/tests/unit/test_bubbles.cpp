#include <gtest/gtest.h>

#include <cmath>

#include <bubblescope/bubbles.hpp>
#include <bubblescope/constructions.hpp>
#include <bubblescope/random.hpp>

using namespace bubblescope;

namespace {
Ball euclid(double x, double y, double r) { return {Space::euclidean, make_point(x, y), 1.0, r}; }
}  // namespace

TEST(Merge, OverlappingPairEnclosesBoth) {
  const Ball a = euclid(0, 0, 1), b = euclid(1.5, 0, 1);
  const Ball c = merge_pair(a, b, Space::euclidean, 2);
  EXPECT_NEAR(c.radius, 1.75, 1e-12);
  EXPECT_NEAR(c.center[0], 0.75, 1e-12);
  EXPECT_LE(c.radius, a.radius + b.radius);
}

TEST(Merge, NestedPairKeepsOuter) {
  const Ball c = merge_pair(euclid(0, 0, 2), euclid(0.5, 0, 0.5), Space::euclidean, 2);
  EXPECT_DOUBLE_EQ(c.radius, 2.0);
}

TEST(Merge, ResultIsPairwiseDisjoint) {
  Philox rng(11, 0);
  for (Space space : {Space::euclidean, Space::poincare}) {
    std::vector<Ball> balls;
    for (int i = 0; i < 30; ++i) {
      const Point p = rng.in_ball(2, space == Space::poincare ? 0.8 : 3.0);
      balls.push_back({space, p, 1.0, rng.uniform(0.05, 0.4)});
    }
    double in_sum = 0.0, out_sum = 0.0;
    for (const auto& b : balls) in_sum += b.radius;
    const auto merged = merge_balls(balls, space, 2);
    for (const auto& b : merged) out_sum += b.radius;
    EXPECT_LE(out_sum, in_sum + 1e-12);
    for (std::size_t i = 0; i < merged.size(); ++i)
      for (std::size_t j = i + 1; j < merged.size(); ++j)
        EXPECT_GT(space_distance(space, merged[i], merged[j], 2), merged[i].radius + merged[j].radius);
  }
}

TEST(Merge, HoroballQuantityDoesNotIncrease) {
  Philox rng(12, 0);
  const double T = 0.5;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Ball> balls;
    double before = 0.5 * std::log(1.0 / T);
    for (int i = 0; i < 6; ++i) {
      balls.push_back({Space::mstar, make_point(rng.uniform(0, 1)), rng.uniform(0.01, 0.4), rng.uniform(0.1, 1.0)});
      before += balls.back().radius;
    }
    const auto h = merge_with_horoball(balls, T, 1);
    EXPECT_LE(horoball_quantity(h), before + 1e-12);
    EXPECT_LE(h.T, T);
  }
}

TEST(Decompose, CircleWindingIsAdditive) {
  const auto f = winding_map(2, share(make_sphere_mesh(1, 1024)));
  const auto report = decompose(f);
  ASSERT_TRUE(report.total_degree.has_value());
  EXPECT_EQ(report.total_degree->rounded, 2);
  EXPECT_TRUE(report.degree_additive());
  EXPECT_GE(report.count(), 1u);
}

TEST(Decompose, ConstantHasNoBubbles) {
  const auto mesh = share(make_sphere_mesh(1, 512));
  const auto report = decompose(constant_map(mesh, Target::sphere(1), make_point(1, 0)));
  EXPECT_EQ(report.count(), 0u);
}
