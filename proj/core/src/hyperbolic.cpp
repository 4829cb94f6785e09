#include "bubblescope/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "bubblescope/error.hpp"

namespace bubblescope {

std::string to_string(Space s) {
  switch (s) {
    case Space::euclidean: return "euclidean";
    case Space::poincare: return "poincare";
    case Space::mstar: return "mstar";
  }
  return "euclidean";
}

Point mobius_translate(const Point& a, const Point& x) noexcept {
  const double ax = dot(a, x);
  const double a2 = norm2(a);
  const double x2 = norm2(x);
  const double den = 1.0 + 2.0 * ax + a2 * x2;
  return (1.0 / den) * ((1.0 + 2.0 * ax + x2) * a + (1.0 - a2) * x);
}

double poincare_distance(const Point& a, const Point& b) {
  const double na = norm2(a), nb = norm2(b);
  if (!(na < 1.0) || !(nb < 1.0)) throw InvalidArgument("Poincare points must satisfy |z| < 1");
  const double num = distance(a, b);
  return 2.0 * std::asinh(num / std::sqrt((1.0 - na) * (1.0 - nb)));
}

Point poincare_geodesic_point(const Point& a, const Point& b, double tau) {
  const Point b0 = mobius_translate(-a, b);
  const double n = norm(b0);
  if (n == 0.0) throw InvalidArgument("geodesic direction undefined for coincident points");
  return mobius_translate(a, (std::tanh(0.5 * tau) / n) * b0);
}

EuclideanSphere hyperbolic_sphere(const Point& center, double rho, int ambient_dim) {
  if (!(rho > 0.0)) throw InvalidArgument("hyperbolic sphere radius must be positive");
  if (!(norm2(center) < 1.0)) throw InvalidArgument("center must lie in the Poincare ball");
  const double r0 = std::tanh(0.5 * rho);
  const double na = norm(center);
  Point dir{};
  if (na > 0.0) {
    dir = (1.0 / na) * center;
  } else {
    dir[0] = 1.0;
  }
  (void)ambient_dim;
  // Diameter endpoints along the line through 0 and the center.
  const Point p = mobius_translate(center, r0 * dir);
  const Point q = mobius_translate(center, -r0 * dir);
  EuclideanSphere s;
  s.center = 0.5 * (p + q);
  s.radius = 0.5 * distance(p, q);
  s.intrinsic_radius = std::sinh(rho);
  return s;
}

Point hyperbolic_sphere_point(const Point& center, double rho, const Point& u) noexcept {
  return mobius_translate(center, std::tanh(0.5 * rho) * u);
}

double mstar_distance(double base_distance, double t, double s) {
  if (!(t > 0.0) || !(s > 0.0)) throw InvalidArgument("M* heights must be positive");
  const double dt = t - s;
  return 2.0 * std::asinh(std::sqrt(base_distance * base_distance + dt * dt) /
                          (2.0 * std::sqrt(t * s)));
}

double mstar_distance(const MStarPoint& a, const MStarPoint& b, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    double d = std::fabs(a.base[i] - b.base[i]);
    d -= std::floor(d);
    d = std::min(d, 1.0 - d);
    s += d * d;
  }
  return mstar_distance(std::sqrt(s), a.t, b.t);
}

Point half_space_to_ball(const Point& x, double t, int m) noexcept {
  Point p = x;
  for (int i = m; i < kMaxDim; ++i) p[i] = 0.0;
  p[m] = t + 1.0;  // p + e_{m+1}
  const double n2 = norm2(p);
  Point z = (2.0 / n2) * p;
  z[m] -= 1.0;
  return z;
}

MStarPoint ball_to_half_space(const Point& z, int m) noexcept {
  Point p = z;
  p[m] += 1.0;
  const double n2 = norm2(p);
  Point y = (2.0 / n2) * p;
  y[m] -= 1.0;
  MStarPoint out;
  out.t = y[m];
  y[m] = 0.0;
  out.base = y;
  return out;
}

double half_space_distance(const Point& x, double t, const Point& y, double s, int m) noexcept {
  double d2 = 0.0;
  for (int i = 0; i < m; ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
  const double dt = t - s;
  return 2.0 * std::asinh(std::sqrt(d2 + dt * dt) / (2.0 * std::sqrt(t * s)));
}

}  // namespace bubblescope
