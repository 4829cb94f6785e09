#include <gtest/gtest.h>

#include <bubblescope/constructions.hpp>
#include <bubblescope/energy.hpp>
#include <bubblescope/scaling.hpp>

using namespace bubblescope;

// Reference values below come from closed-form integrals for the identity
// maps, evaluated independently of this library.
constexpr double k4PiSq = 39.47841760435743;
constexpr double k8Pi = 25.132741228718345;

TEST(Energy, CircleIdentityFractional) {
  const auto f = identity_map(share(make_sphere_mesh(1, 2048)));
  EXPECT_NEAR(sobolev_energy(f, 0.5, 2.0).value, k4PiSq, 0.002 * k4PiSq);
}

TEST(Energy, CircleIdentityCylinder) {
  const auto f = identity_map(share(make_sphere_mesh(1, 1024)));
  EXPECT_NEAR(cylinder_energy(f, 0.5, 2.0).value, k4PiSq, 0.003 * k4PiSq);
}

TEST(Energy, SphereIdentityDirichlet) {
  const auto f = identity_map(share(make_sphere_mesh(2, 4)));
  EXPECT_NEAR(dirichlet_energy(f).value, k8Pi, 0.005 * k8Pi);
}

TEST(Energy, DirichletIsRotationInvariant) {
  const auto f = power_map_s2(2, share(make_sphere_mesh(2, 3)));
  const std::array<Point, kMaxDim> rot{make_point(0, 0, 1), make_point(1, 0, 0), make_point(0, 1, 0)};
  EXPECT_NEAR(dirichlet_energy(rotate_values(f, rot)).value, dirichlet_energy(f).value, 1e-9);
}

TEST(Energy, CircleGapClosedForm) {
  // Geodesic target distance above eps: 2 pi cot(eps / 2).
  const auto f = identity_map(share(make_sphere_mesh(1, 2048)));
  GapParams gp;
  gp.eps = 0.5;
  EXPECT_NEAR(gap_potential(f, gp).value, 24.60694772379565, 0.01 * 24.6);
}

TEST(Energy, CircleTruncatedClosedForm) {
  const auto f = identity_map(share(make_sphere_mesh(1, 2048)));
  EXPECT_NEAR(truncated_energy(f, 0.5, 1.0).value, 17.551862211295852, 0.015 * 17.55);
}

TEST(Energy, ConstantMapHasNoEnergy) {
  const auto mesh = share(make_sphere_mesh(2, 2));
  const auto f = constant_map(mesh, Target::sphere(2), make_point(0, 0, 1));
  EXPECT_EQ(dirichlet_energy(f).value, 0.0);
  EXPECT_EQ(sobolev_energy(f, 2.0 / 3.0, 3.0).value, 0.0);
}

TEST(Energy, ChordMoments) {
  EXPECT_NEAR(sphere_chord_moment(1, 0.0), 2 * std::numbers::pi, 1e-9);
  EXPECT_NEAR(sphere_chord_moment(2, 2.0), k8Pi, 1e-9);
  EXPECT_NEAR(sphere_chord_moment(2, -1.0), 4 * std::numbers::pi, 1e-9);
}

TEST(Energy, HalvingFactor) {
  EXPECT_DOUBLE_EQ(halving_factor(2, 0.0), 0.5);
  EXPECT_DOUBLE_EQ(halving_factor(2, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(halving_factor(2, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(halving_factor(1, 2.0), 2.0);
}

TEST(Energy, SlopeFit) {
  EXPECT_NEAR(fit_slope({0, 1, 2, 3}, {1, 3, 5, 7}), 2.0, 1e-12);
}

TEST(Energy, PQRatioMatchesExactDistanceDistribution) {
  // p = 1, q = 0, eta = 1/2 for the identity of the unit square; reference
  // from the exact distance distribution of two uniform points in [0,1]^2.
  const auto f = flat_identity(share(make_cube_grid(2, 33)));
  QuadratureOptions q;
  q.refine_depth = 2;
  EXPECT_NEAR(compare_pq(f, 1.0, 0.0, 0.4, 0.5, q).ratio, 0.0416, 0.05 * 0.0416);
}
