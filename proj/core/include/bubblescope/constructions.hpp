#pragma once

#include <cstdint>
#include <vector>

#include "bubblescope/discrete_map.hpp"
#include "bubblescope/random.hpp"

namespace bubblescope {

/// theta -> k theta on the circle (or x -> 2 pi k x on the 1-torus), into S^1.
[[nodiscard]] DiscreteMap winding_map(int k, std::shared_ptr<const Domain> mesh);

/// Identity S^m -> S^m.
[[nodiscard]] DiscreteMap identity_map(std::shared_ptr<const Domain> mesh);

/// x -> -x on S^m.
[[nodiscard]] DiscreteMap antipodal_map(std::shared_ptr<const Domain> mesh);

/// Conformal dilation of S^m: stereographic chart from the north pole,
/// multiplication by lambda, and back. Fixes both poles.
[[nodiscard]] Point dilation_point(double lambda, const Point& x, int m) noexcept;
[[nodiscard]] DiscreteMap dilation_map(double lambda, std::shared_ptr<const Domain> mesh);

/// theta -> (k1 theta, k2 theta) from S^1 into the Clifford torus.
[[nodiscard]] DiscreteMap torus_loop(int k1, int k2, std::shared_ptr<const Domain> mesh);

/// Isometric embedding of [0,1]^m into the Clifford torus (x -> angles sqrt(2) x).
[[nodiscard]] DiscreteMap flat_identity(std::shared_ptr<const Domain> cube);

/// Linear torus map T^m -> Clifford torus with integer winding matrix:
/// angle_r = 2 pi sum_c windings[r][c] x_c.
[[nodiscard]] DiscreteMap torus_linear_map(std::shared_ptr<const Domain> torus,
                                           const std::array<std::array<int, 2>, 2>& windings);

/// (theta, phi) -> (theta', k phi) in spherical coordinates about e_3.
/// theta' = theta except that caps of polar radius `collapse` about both poles
/// are sent to the poles (theta rescaled linearly in between); this keeps the
/// azimuth multiplication resolvable by the mesh when |k| >= 3.
[[nodiscard]] Point power_map_point(int k, const Point& x, double collapse = 0.0) noexcept;

/// Collapse radius used by power_map_s2 on a mesh of the given spacing.
[[nodiscard]] double power_map_collapse(int k, double spacing) noexcept;

[[nodiscard]] DiscreteMap power_map_s2(int k, std::shared_ptr<const Domain> mesh);

/// One bubble: a cap of the domain sphere carrying a map of degree `degree`.
struct Bubble {
  Point center{};
  double radius = 0.5;
  int degree = 1;
};

/// Constant = basepoint outside the caps; inside cap i the cap is collapsed
/// radially onto a sphere (boundary to one point) and a degree-d_i map is
/// applied. Domain S^1 or S^2, target the sphere of the same dimension.
[[nodiscard]] DiscreteMap bubble_map(const std::vector<Bubble>& bubbles, const Point& basepoint,
                                     std::shared_ptr<const Domain> mesh);

/// Smoothstep cutoff: 0 on (-inf, -2], 1 on [-1, inf), 3u^2 - 2u^3 in between.
[[nodiscard]] double pinch_cutoff(double t) noexcept;
/// Largest slope of pinch_cutoff.
[[nodiscard]] constexpr double pinch_cutoff_slope() noexcept { return 1.5; }

/// Target self-map that is constant = b near b and the identity at distance
/// >= inj(b): y -> exp_b(eta(lambda ln(|v| / inj)) v) with v = log_b(y).
[[nodiscard]] Point pinch_point(const Target& target, const Point& b, double lambda,
                                const Point& y);

/// The constant C with Lip(pinch) <= 1 + C lambda, valid for lambda <= 1.
[[nodiscard]] double pinch_expansion_constant(const Target& target) noexcept;

[[nodiscard]] DiscreteMap pinch(const DiscreteMap& f, const Point& b, double lambda);

/// Target path sampled uniformly on [-1, 1], constant outside.
struct TargetPath {
  Target target;
  std::vector<Point> samples;
  [[nodiscard]] Point operator()(double tau) const;
};

/// Minimising geodesic from p to q with the given number of samples.
[[nodiscard]] TargetPath geodesic_path(const Target& target, const Point& p, const Point& q,
                                       int samples = 64);

/// Angular radius of the largest cap about `pole` on which the sampled map
/// is certainly equal to `value` (vertices within 1e-12), or 0 if none.
[[nodiscard]] double constant_cap_radius(const DiscreteMap& f, const Point& pole,
                                         const Point& value);

struct GlueResult {
  DiscreteMap map;
  double s_plus = 0.0;
  double s_minus = 0.0;
};

/// Cylinder gluing: on the Mercator cylinder the result equals f_minus
/// shifted below -2 lambda, gamma(s / lambda) on [-2 lambda, 2 lambda], and
/// f_plus shifted above 2 lambda. f_plus must be constant near the south
/// pole and f_minus near the north pole.
[[nodiscard]] GlueResult glue_cylinder(const DiscreteMap& f_plus, const DiscreteMap& f_minus,
                                       const TargetPath& gamma, double lambda,
                                       std::shared_ptr<const Domain> mesh);

/// Random map [0,1]^2 -> S^2 with geodesic Lipschitz constant at most L:
/// the exponential at the north pole of a random smooth planar field.
[[nodiscard]] DiscreteMap random_lipschitz_map(std::shared_ptr<const Domain> cube, double L,
                                               Philox& rng);

}  // namespace bubblescope
