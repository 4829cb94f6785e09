#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include <bubblescope/constructions.hpp>
#include <bubblescope/error.hpp>
#include <bubblescope/topo.hpp>

using namespace bubblescope;

TEST(Degree, CircleWindings) {
  const auto mesh = share(make_sphere_mesh(1, 256));
  for (int k = -5; k <= 5; ++k) EXPECT_EQ(degree(winding_map(k, mesh)).rounded, k) << k;
  EXPECT_EQ(degree(constant_map(mesh, Target::sphere(1), make_point(0, 1))).rounded, 0);
}

TEST(Degree, SphereMaps) {
  const auto mesh = share(make_sphere_mesh(2, 3));
  EXPECT_EQ(degree(identity_map(mesh)).rounded, 1);
  EXPECT_EQ(degree(antipodal_map(mesh)).rounded, -1);
  for (int k = -2; k <= 2; ++k) EXPECT_EQ(degree(power_map_s2(k, mesh)).rounded, k) << k;
  EXPECT_LT(degree(power_map_s2(2, mesh)).residual, 1e-6);
}

TEST(Degree, BubbleMapAddsDegrees) {
  const auto mesh = share(make_sphere_mesh(2, 4));
  const std::vector<Bubble> caps{{make_point(1, 0, 0), 0.5, 1}, {make_point(-1, 0, 0), 0.5, -2}};
  EXPECT_EQ(degree(bubble_map(caps, make_point(0, 0, 1), mesh)).rounded, -1);
}

TEST(Hurewicz, VolumePairingIsDegree) {
  const auto mesh = share(make_sphere_mesh(2, 3));
  EXPECT_NEAR(hurewicz_pairing(power_map_s2(-2, mesh), FormSpec::sphere_volume(2)), -2.0, 1e-6);
  EXPECT_NEAR(hurewicz_pairing(winding_map(4, share(make_sphere_mesh(1, 128))), FormSpec::sphere_volume(1)),
              4.0, 1e-9);
}

TEST(Hurewicz, TorusLoopClass) {
  const auto mesh = share(make_sphere_mesh(1, 256));
  const auto [a, b] = hurewicz_torus_pair(torus_loop(2, -3, mesh));
  EXPECT_EQ(a, 2);
  EXPECT_EQ(b, -3);
}
