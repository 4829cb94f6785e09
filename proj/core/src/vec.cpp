#include "bubblescope/vec.hpp"

#include <algorithm>

namespace bubblescope {

Point normalized(const Point& a) noexcept {
  const double n = norm(a);
  if (n == 0.0) return a;
  return (1.0 / n) * a;
}

double unit_angle(const Point& a, const Point& b) noexcept {
  const double chord = distance(a, b);
  return 2.0 * std::asin(std::min(1.0, 0.5 * chord));
}

double det3(const Point& a, const Point& b, const Point& c) noexcept {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
         a[2] * (b[0] * c[1] - b[1] * c[0]);
}

double pairwise_sum(std::span<const double> values) noexcept {
  constexpr std::size_t kLeaf = 16;
  if (values.size() <= kLeaf) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace bubblescope
