#include "bubblescope/mercator.hpp"

#include <algorithm>
#include <cmath>

#include "bubblescope/error.hpp"

namespace bubblescope {

namespace {
void require_unit(const Point& z, int m) {
  if (m < 1 || m >= kMaxDim) throw InvalidArgument("mercator needs 1 <= m <= 3");
  for (int i = m; i < kMaxDim; ++i)
    if (z[i] != 0.0) throw InvalidArgument("mercator base point has stray coordinates");
  if (std::fabs(norm(z) - 1.0) > 1e-9) throw InvalidArgument("mercator base point must be unit");
}
}  // namespace

Point mercator(const Point& z, double s, int m) {
  require_unit(z, m);
  const double sech = 1.0 / std::cosh(s);
  Point x = sech * z;
  x[m] = std::tanh(s);
  return x;
}

CylinderPoint inverse_mercator(const Point& x, int m) {
  Point z = x;
  z[m] = 0.0;
  const double r = norm(z);
  if (r == 0.0) throw InvalidArgument("the poles have no cylinder coordinates");
  CylinderPoint c;
  c.z = (1.0 / r) * z;
  c.s = std::atanh(std::clamp(x[m], -1.0, 1.0));
  return c;
}

double mercator_chord_identity(const Point& w, double t, const Point& z, double s, int m) {
  const Point a = mercator(w, t, m);
  const Point b = mercator(z, s, m);
  const double lhs = distance2(a, b);
  const double sh = 2.0 * std::sinh(0.5 * (t - s));
  const double rhs = (sh * sh + distance2(w, z)) / (std::cosh(t) * std::cosh(s));
  return lhs - rhs;
}

}  // namespace bubblescope
