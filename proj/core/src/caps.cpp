#include "bubblescope/caps.hpp"

#include <cmath>

#include "bubblescope/error.hpp"

namespace bubblescope {

SimplexCaps simplex_caps(int m) {
  if (m < 1) throw InvalidArgument("simplex caps need m >= 1");
  if (m + 1 > kMaxDim) throw InvalidArgument("simplex caps are limited to m <= 3");
  // Project the standard basis of R^{m+2} onto the hyperplane sum = 0 and
  // express the result in an orthonormal (Helmert) basis of that hyperplane.
  const int n = m + 2;
  SimplexCaps caps;
  caps.threshold = -1.0 / std::sqrt(static_cast<double>(m + 1));
  for (int i = 0; i < n; ++i) {
    Point c{};
    for (int k = 1; k < n; ++k) {
      // k-th Helmert vector: (1,...,1,-k,0,...)/sqrt(k(k+1)) with k ones.
      const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
      double comp = 0.0;
      if (i < k) comp = scale;
      if (i == k) comp = -k * scale;
      c[k - 1] = comp;
    }
    caps.centers.push_back(normalized(c));
  }
  return caps;
}

int common_cap(const SimplexCaps& caps, const Point& x, const Point& y) noexcept {
  for (std::size_t i = 0; i < caps.centers.size(); ++i)
    if (dot(caps.centers[i], x) >= caps.threshold && dot(caps.centers[i], y) >= caps.threshold)
      return static_cast<int>(i);
  return -1;
}

}  // namespace bubblescope
