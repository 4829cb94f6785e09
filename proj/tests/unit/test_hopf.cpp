#include <gtest/gtest.h>

#include <bubblescope/constructions.hpp>
#include <bubblescope/error.hpp>
#include <bubblescope/hopf.hpp>
#include <bubblescope/random.hpp>

using namespace bubblescope;

TEST(Hopf, ImageIsOnSphere) {
  Philox rng(21, 0);
  for (int i = 0; i < 100; ++i) {
    const Point x = rng.on_sphere(3);
    EXPECT_NEAR(norm(hopf_point(x)), 1.0, 1e-12);
    const Point y = hopf_family_point(2, x);
    const Point z = power_map_point(2, hopf_point(x));
    for (int j = 0; j < 3; ++j) EXPECT_NEAR(y[j], z[j], 1e-12);
  }
}

TEST(Hopf, FibresAreCircles) {
  // x and e^{i t} x have the same image.
  const Point x = normalized(make_point(0.3, -0.5, 0.7, 0.2));
  const double c = std::cos(0.9), s = std::sin(0.9);
  const Point y = make_point(c * x[0] - s * x[1], s * x[0] + c * x[1], c * x[2] - s * x[3], s * x[2] + c * x[3]);
  const Point a = hopf_point(x), b = hopf_point(y);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(a[j], b[j], 1e-12);
}

TEST(Hopf, NominalInvariant) {
  const auto mesh = share(make_sphere_mesh(3, 256));
  EXPECT_EQ(hopf_family(3, mesh).nominal_invariant, 9);
}

TEST(Hopf, MonteCarloIsDeterministicAndPositive) {
  HopfMCOptions o;
  o.samples = 20000;
  o.batches = 8;
  const auto a = hopf_gap_mc(1, 0.5, o);
  o.threads = 2;
  const auto b = hopf_gap_mc(1, 0.5, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_GT(a.value, 0.0);
  EXPECT_GT(a.std_error, 0.0);
}

TEST(Hopf, GrowthRejectsSmallSamples) {
  HopfMCOptions o;
  o.samples = 1000;
  EXPECT_THROW((void)hopf_growth_check({1, 2}, 0.5, o), InvalidArgument);
}

TEST(Hurewicz, MagnitudeOfSphereMaps) {
  const auto mesh = share(make_sphere_mesh(2, 3));
  EXPECT_NEAR(hurewicz_magnitude(power_map_s2(-2, mesh)), 2.0, 1e-6);
  EXPECT_NEAR(hurewicz_magnitude(torus_loop(1, -2, share(make_sphere_mesh(1, 128)))), 3.0, 1e-9);
}
