#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace bubblescope {

// Every point the library manipulates lives in R^d with d <= 4: domains are
// S^1, S^2, S^3, [0,1]^m and the flat torus, targets are S^n (n <= 3) and the
// Clifford torus in R^4. Unused trailing coordinates are kept at zero so
// that dot products and norms never need the dimension.
inline constexpr int kMaxDim = 4;

using Point = std::array<double, kMaxDim>;

[[nodiscard]] constexpr Point make_point(double a, double b = 0.0, double c = 0.0,
                                         double d = 0.0) noexcept {
  return Point{a, b, c, d};
}

[[nodiscard]] inline double dot(const Point& a, const Point& b) noexcept {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

[[nodiscard]] inline double norm2(const Point& a) noexcept { return dot(a, a); }
[[nodiscard]] inline double norm(const Point& a) noexcept { return std::sqrt(norm2(a)); }

[[nodiscard]] inline Point operator+(const Point& a, const Point& b) noexcept {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
[[nodiscard]] inline Point operator-(const Point& a, const Point& b) noexcept {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
[[nodiscard]] inline Point operator-(const Point& a) noexcept {
  return {-a[0], -a[1], -a[2], -a[3]};
}
[[nodiscard]] inline Point operator*(double s, const Point& a) noexcept {
  return {s * a[0], s * a[1], s * a[2], s * a[3]};
}
inline Point& operator+=(Point& a, const Point& b) noexcept {
  for (int i = 0; i < kMaxDim; ++i) a[i] += b[i];
  return a;
}

[[nodiscard]] inline double distance2(const Point& a, const Point& b) noexcept {
  const double d0 = a[0] - b[0], d1 = a[1] - b[1], d2 = a[2] - b[2], d3 = a[3] - b[3];
  return d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
}
[[nodiscard]] inline double distance(const Point& a, const Point& b) noexcept {
  return std::sqrt(distance2(a, b));
}

/// Returns a / |a|; the zero vector is returned unchanged.
[[nodiscard]] Point normalized(const Point& a) noexcept;

/// Angle between two unit vectors, accurate near 0 and near pi.
[[nodiscard]] double unit_angle(const Point& a, const Point& b) noexcept;

/// det[a b c] of the first three coordinates.
[[nodiscard]] double det3(const Point& a, const Point& b, const Point& c) noexcept;

/// det[a b] of the first two coordinates.
[[nodiscard]] inline double det2(const Point& a, const Point& b) noexcept {
  return a[0] * b[1] - a[1] * b[0];
}

/// Sum of a sequence by recursive halving. The result depends only on the
/// values and their order, never on how the sequence was produced.
[[nodiscard]] double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace bubblescope
