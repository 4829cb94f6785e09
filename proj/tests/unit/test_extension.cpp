#include <gtest/gtest.h>

#include <bubblescope/constructions.hpp>
#include <bubblescope/extension.hpp>

using namespace bubblescope;

TEST(Extension, KernelMassIsNormalized) {
  const Domain s1 = make_sphere_mesh(1, 1024);
  EXPECT_NEAR(kernel_mass(s1, make_point(0, 0)), 1.0, 1e-9);
  EXPECT_NEAR(kernel_mass(s1, make_point(0.5, 0.3)), 1.0, 1e-6);
  const Domain s2 = make_sphere_mesh(2, 4);
  EXPECT_NEAR(kernel_mass(s2, make_point(0, 0, 0)), 1.0, 1e-6);
  EXPECT_NEAR(kernel_mass(s2, make_point(0.3, 0.2, -0.4)), 1.0, 0.01);
}

TEST(Extension, CircleIdentityIsHarmonic) {
  // In dimension one the kernel is the Poisson kernel, which reproduces z.
  const ExtensionField F(identity_map(share(make_sphere_mesh(1, 2048))));
  const Point z = make_point(0.5, -0.2);
  const auto e = F.evaluate(z);
  EXPECT_NEAR(e.value[0], 0.5, 1e-6);
  EXPECT_NEAR(e.value[1], -0.2, 1e-6);
}

TEST(Extension, SphereIdentityCentreIsOrigin) {
  const ExtensionField F(identity_map(share(make_sphere_mesh(2, 4))));
  const auto e = F.evaluate(make_point(0, 0, 0));
  EXPECT_LT(norm(e.value), 1e-9);
}

TEST(Extension, ConstantMapExtendsToConstant) {
  const auto mesh = share(make_sphere_mesh(2, 3));
  const ExtensionField F(constant_map(mesh, Target::sphere(2), make_point(0, 1, 0)));
  const auto e = F.evaluate(make_point(0.4, 0.1, 0.2));
  EXPECT_NEAR(e.value[1], 1.0, 1e-9);
  EXPECT_NEAR(F.distance_to_target(make_point(0.4, 0.1, 0.2)), 0.0, 1e-9);
}

TEST(Extension, LipschitzBound) {
  const ExtensionField F(winding_map(3, share(make_sphere_mesh(1, 1024))));
  std::vector<PoincarePoint> samples;
  for (int i = 0; i < 20; ++i) samples.push_back(make_point(0.9 * std::cos(i), 0.9 * std::sin(i)));
  const auto r = lipschitz_check(F, samples);
  EXPECT_TRUE(r.pass) << r.max_norm << " vs " << r.bound;
}

TEST(Extension, IdentityHasSmallSingularSet) {
  // The identity extension only leaves the tube near the origin.
  const ExtensionField F(identity_map(share(make_sphere_mesh(1, 512))));
  LatticeSpec spec;
  spec.sigma = 0.05;
  const auto s = detect_singular(F, 0.5, spec);
  EXPECT_GT(s.samples.size(), 0u);
  for (const auto& x : s.samples) EXPECT_LT(norm(x.point), 0.6);
}
