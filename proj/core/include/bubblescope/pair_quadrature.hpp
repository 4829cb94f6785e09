#pragma once

#include <cstddef>
#include <cstdint>

#include "bubblescope/discrete_map.hpp"

namespace bubblescope {

enum class TargetDistanceMode { geodesic, chord };

/// Integrand of a double integral over domain x domain:
///   numerator(f(x), f(y)) / dist(x, y)^alpha.
/// chord_power:      |f(y) - f(x)|^p (ambient chord)
/// truncated_power:  (d_N(f(y), f(x)) - eps)_+^p, with p = 0 meaning the
///                   indicator of d_N > eps
struct PairKernel {
  enum class Numerator { chord_power, truncated_power };
  Numerator numerator = Numerator::chord_power;
  double p = 2.0;
  double eps = 0.0;
  TargetDistanceMode target_mode = TargetDistanceMode::geodesic;
  double alpha = 2.0;
  DistanceMode domain_mode = DistanceMode::chord;
};

struct QuadratureOptions {
  int threads = 1;
  /// Adaptive near-field subdivision depth; 0 gives the plain vertex-pair sum.
  int refine_depth = 0;
  /// A cell is subdivided while dist(x, centroid) < kappa * cell radius.
  double refine_kappa = 8.0;
  /// Recompute at half resolution and report the difference.
  bool estimate_error = true;
};

struct PairSum {
  double value = 0.0;
  std::uint64_t evaluations = 0;
  double exclusion_radius = 0.0;
  /// |value - half-resolution value|; NaN when no coarser rule exists.
  double error_estimate = 0.0;
};

/// Weighted double sum over distinct vertex pairs, with optional adaptive
/// refinement of the inner integral near the diagonal. Rows are reduced with
/// a fixed pairwise tree so that the result does not depend on threads.
[[nodiscard]] PairSum pair_integral(const DiscreteMap& f, const PairKernel& kernel,
                                    const QuadratureOptions& options = {});

/// Same, without the error estimate (single evaluation).
[[nodiscard]] PairSum pair_integral_once(const DiscreteMap& f, const PairKernel& kernel,
                                         const QuadratureOptions& options);

}  // namespace bubblescope
