#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bubblescope/discrete_map.hpp"

namespace bubblescope {

/// Evaluates a discrete map at arbitrary domain points by linear
/// (barycentric / bilinear) interpolation of the vertex values followed by
/// the target retraction. Throws ResolutionError where the interpolated
/// value leaves the tube, which means adjacent values are too far apart.
class MapSampler {
 public:
  explicit MapSampler(const DiscreteMap& f);

  [[nodiscard]] Point operator()(const Point& x) const;

  /// Interpolation weights: vertex indices and barycentric coefficients.
  struct Stencil {
    std::uint32_t index[4] = {0, 0, 0, 0};
    double weight[4] = {0, 0, 0, 0};
    int count = 0;
  };
  [[nodiscard]] Stencil stencil(const Point& x) const;

 private:
  [[nodiscard]] Stencil circle_stencil(const Point& x) const;
  [[nodiscard]] Stencil sphere2_stencil(const Point& x) const;
  [[nodiscard]] Stencil grid_stencil(const Point& x) const;
  [[nodiscard]] std::size_t nearest_vertex(const Point& x) const;
  [[nodiscard]] bool try_triangle(std::size_t tri, const Point& x, Stencil& out) const;

  const DiscreteMap* f_;
  // Circle: unwrapped vertex angles, increasing from angles_[0].
  std::vector<double> angles_;
  // S^2: incident triangles per vertex and a bucket grid over R^3.
  std::vector<std::vector<std::uint32_t>> incident_;
  std::unordered_map<std::int64_t, std::vector<std::uint32_t>> buckets_;
  double bucket_size_ = 1.0;
};

}  // namespace bubblescope
