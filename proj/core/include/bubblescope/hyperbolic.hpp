#pragma once

#include <cmath>
#include <string>

#include "bubblescope/vec.hpp"

namespace bubblescope {

/// Point of the Poincare ball B^{m+1} (|z| < 1).
using PoincarePoint = Point;

/// Point of the warped product M* = M x (0, inf) over the flat torus or the
/// circle: base coordinates plus a height t > 0.
struct MStarPoint {
  Point base{};
  double t = 1.0;
};

enum class Space { euclidean, poincare, mstar };

[[nodiscard]] std::string to_string(Space s);

/// Center and radius in a tagged metric space. For mstar, center holds the
/// base point in its first `dim` coordinates and `height` the t coordinate.
struct Ball {
  Space space = Space::euclidean;
  Point center{};
  double height = 1.0;
  double radius = 1.0;
};

/// Moebius translation of the ball sending 0 to a.
[[nodiscard]] Point mobius_translate(const Point& a, const Point& x) noexcept;

[[nodiscard]] double poincare_distance(const Point& a, const Point& b);

/// Point on the geodesic from a towards b at hyperbolic distance tau from a.
/// tau may exceed d(a, b); the geodesic is continued past b.
[[nodiscard]] Point poincare_geodesic_point(const Point& a, const Point& b, double tau);

/// The hyperbolic sphere of radius rho about c is a round Euclidean sphere.
struct EuclideanSphere {
  Point center{};
  double radius = 0.0;
  double intrinsic_radius = 0.0;  // sinh(rho)
};
[[nodiscard]] EuclideanSphere hyperbolic_sphere(const Point& center, double rho, int ambient_dim);

/// Maps u on the unit sphere S^m to the hyperbolic sphere of radius rho about
/// c, through the isometry sending 0 to c.
[[nodiscard]] Point hyperbolic_sphere_point(const Point& center, double rho, const Point& u) noexcept;

/// Hyperbolic radius of the Euclidean sphere of radius r about the origin.
[[nodiscard]] inline double hyperbolic_radius_of(double r) noexcept {
  return 2.0 * std::atanh(r);
}

/// Distance on M* from base distance d_M and heights t, s.
[[nodiscard]] double mstar_distance(double base_distance, double t, double s);

/// Same on the flat unit torus of dimension m (wrapped base distance).
[[nodiscard]] double mstar_distance(const MStarPoint& a, const MStarPoint& b, int m);

/// Upper half-space point (x_1..x_m, t) <-> Poincare ball point in R^{m+1}.
/// The map is the inversion in the sphere of radius sqrt(2) about -e_{m+1};
/// it is an involution and an isometry between the two models.
[[nodiscard]] Point half_space_to_ball(const Point& x, double t, int m) noexcept;
[[nodiscard]] MStarPoint ball_to_half_space(const Point& z, int m) noexcept;

/// Distance in the Poincare half-plane / half-space model.
[[nodiscard]] double half_space_distance(const Point& x, double t, const Point& y, double s,
                                         int m) noexcept;

}  // namespace bubblescope
