#pragma once

#include <vector>

#include "bubblescope/vec.hpp"

namespace bubblescope {

/// m + 2 vertices of a regular simplex inscribed in S^m, together with the
/// cap threshold -1/sqrt(m+1): every pair of points of S^m lies in a common
/// cap {x : a_i . x >= threshold}.
struct SimplexCaps {
  std::vector<Point> centers;
  double threshold = 0.0;
};

/// Supports 1 <= m <= 3.
[[nodiscard]] SimplexCaps simplex_caps(int m);

/// Index of a cap containing both x and y, or -1 if none does.
[[nodiscard]] int common_cap(const SimplexCaps& caps, const Point& x, const Point& y) noexcept;

}  // namespace bubblescope
