#pragma once

#include "bubblescope/vec.hpp"

namespace bubblescope {

/// Conformal cylinder parametrisation S^{m-1} x R -> S^m,
/// (z, s) -> (z sech s, tanh s). z occupies the first m coordinates.
[[nodiscard]] Point mercator(const Point& z, double s, int m);

/// Inverse of mercator for a point off the poles: returns (z, s).
struct CylinderPoint {
  Point z{};
  double s = 0.0;
};
[[nodiscard]] CylinderPoint inverse_mercator(const Point& x, int m);

/// |Y(w,t) - Y(z,s)|^2 - sech t sech s ((2 sinh((t-s)/2))^2 + |w-z|^2),
/// which vanishes identically.
[[nodiscard]] double mercator_chord_identity(const Point& w, double t, const Point& z, double s,
                                             int m);

}  // namespace bubblescope
