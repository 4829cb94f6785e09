#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "bubblescope/vec.hpp"

namespace bubblescope {

/// Philox4x32-10 counter-based generator. A (seed, stream) pair names an
/// independent sequence, so parallel workers can draw reproducibly without
/// sharing state.
class Philox {
 public:
  static constexpr std::string_view algorithm = "philox4x32-10";

  Philox(std::uint64_t seed, std::uint64_t stream) noexcept;

  std::uint32_t next_u32() noexcept;
  /// Uniform on (0, 1): never returns exactly 0 or 1.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  double normal() noexcept;
  /// Uniform point on the unit sphere S^m embedded in R^{m+1}.
  Point on_sphere(int m) noexcept;
  /// Uniform point in the open Euclidean unit ball of R^d.
  Point in_ball(int d, double radius = 1.0) noexcept;

  /// Raw block function, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace bubblescope
