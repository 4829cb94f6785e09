#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <bubblescope/domain.hpp>
#include <bubblescope/hyperbolic.hpp>
#include <bubblescope/mercator.hpp>
#include <bubblescope/random.hpp>
#include <bubblescope/target.hpp>

using namespace bubblescope;
constexpr double pi = std::numbers::pi;

TEST(Domain, SphereVolumes) {
  EXPECT_NEAR(sphere_volume(1), 2 * pi, 1e-12);
  EXPECT_NEAR(sphere_volume(2), 4 * pi, 1e-12);
  EXPECT_NEAR(sphere_volume(3), 2 * pi * pi, 1e-12);
}

TEST(Domain, IcosphereCountsAndWeights) {
  for (int level = 0; level <= 3; ++level) {
    const Domain d = make_sphere_mesh(2, level);
    EXPECT_EQ(d.size(), 10u * (1u << (2 * level)) + 2u);
    EXPECT_EQ(validate_sphere_mesh(d), "");
    EXPECT_NEAR(d.total_measure(), 4 * pi, 1e-9);
  }
}

TEST(Domain, CircleAndCubeMeasures) {
  EXPECT_NEAR(make_sphere_mesh(1, 100).total_measure(), 2 * pi, 1e-12);
  EXPECT_NEAR(make_cube_grid(2, 9).total_measure(), 1.0, 1e-12);
  EXPECT_NEAR(make_cube_grid(1, 9).total_measure(), 1.0, 1e-12);
}

TEST(Domain, OctantArea) {
  EXPECT_NEAR(spherical_triangle_area(make_point(1, 0, 0), make_point(0, 1, 0), make_point(0, 0, 1)),
              pi / 2, 1e-12);
}

TEST(Domain, CoarseningHalvesCircle) {
  const Domain d = make_sphere_mesh(1, 64);
  const auto c = coarsen(d);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->domain.size(), 32u);
}

TEST(Target, SphereGeodesic) {
  const Target s2 = Target::sphere(2);
  EXPECT_NEAR(s2.distance(make_point(1, 0, 0), make_point(0, 1, 0)), pi / 2, 1e-12);
  EXPECT_NEAR(s2.distance(make_point(0, 0, 1), make_point(0, 0, -1)), pi, 1e-12);
}

TEST(Target, CliffordTorusFlatDistance) {
  // Clifford torus of radius 1/sqrt2 in each factor: flat, side 2 pi / sqrt2.
  const Target t = Target::clifford_torus();
  const Point a = Target::torus_point(0.0, 0.0);
  const Point b = Target::torus_point(0.3, 0.4);
  EXPECT_NEAR(t.distance(a, b), 0.5 / std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(norm(a), 1.0, 1e-12);
}

TEST(Target, RetractOntoSphere) {
  const Target s2 = Target::sphere(2);
  const Point y = s2.retract(make_point(0, 0, 1.1));
  EXPECT_NEAR(y[2], 1.0, 1e-12);
}

TEST(Hyperbolic, DistanceFromOrigin) {
  EXPECT_NEAR(poincare_distance(make_point(0, 0), make_point(0.5, 0)), std::log(3.0), 1e-12);
  EXPECT_NEAR(hyperbolic_radius_of(0.5), std::log(3.0), 1e-12);
}

TEST(Hyperbolic, MobiusTranslationIsIsometry) {
  Philox rng(3, 0);
  for (int i = 0; i < 50; ++i) {
    const Point a = rng.in_ball(3, 0.9), x = rng.in_ball(3, 0.9), y = rng.in_ball(3, 0.9);
    EXPECT_NEAR(poincare_distance(mobius_translate(a, x), mobius_translate(a, y)),
                poincare_distance(x, y), 1e-8);
  }
  const Point a = make_point(0.2, -0.3, 0.1);
  const Point z = mobius_translate(a, make_point(0, 0, 0));
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(z[i], a[i], 1e-14);
}

TEST(Hyperbolic, SphereRadiusMatches) {
  const Point c = make_point(0.3, 0.1, 0.0);
  Philox rng(4, 0);
  for (int i = 0; i < 20; ++i) {
    const Point u = rng.on_sphere(2);
    EXPECT_NEAR(poincare_distance(c, hyperbolic_sphere_point(c, 0.7, u)), 0.7, 1e-9);
  }
}

TEST(Hyperbolic, HalfSpaceModelsAgree) {
  // Vertical segment (0,1) -> (0,e) has length 1 in the half-plane.
  EXPECT_NEAR(half_space_distance(make_point(0), 1.0, make_point(0), std::exp(1.0), 1), 1.0, 1e-12);
  Philox rng(5, 0);
  for (int i = 0; i < 20; ++i) {
    const Point x = make_point(rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double t = rng.uniform(0.1, 2.0);
    const Point z = half_space_to_ball(x, t, 2);
    EXPECT_LT(norm(z), 1.0);
    const MStarPoint back = ball_to_half_space(z, 2);
    EXPECT_NEAR(back.base[0], x[0], 1e-9);
    EXPECT_NEAR(back.base[1], x[1], 1e-9);
    EXPECT_NEAR(back.t, t, 1e-9);
  }
}

TEST(Mercator, ChordIdentity) {
  Philox rng(6, 0);
  for (int m = 1; m <= 2; ++m)
    for (int i = 0; i < 50; ++i) {
      const Point w = rng.on_sphere(m - 1);
      const Point z = rng.on_sphere(m - 1);
      EXPECT_NEAR(mercator_chord_identity(w, rng.uniform(-3, 3), z, rng.uniform(-3, 3), m), 0.0, 1e-12);
    }
}

TEST(Mercator, RoundTrip) {
  const Point z = make_point(0.6, 0.8);
  const Point x = mercator(z, 0.7, 2);
  EXPECT_NEAR(norm(x), 1.0, 1e-12);
  const CylinderPoint c = inverse_mercator(x, 2);
  EXPECT_NEAR(c.s, 0.7, 1e-12);
  EXPECT_NEAR(c.z[0], 0.6, 1e-12);
}
