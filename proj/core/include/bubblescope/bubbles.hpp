#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bubblescope/extension.hpp"
#include "bubblescope/topo.hpp"

namespace bubblescope {

/// Distance between two ball centers in the given space. For mstar the
/// base lives on the flat unit torus of dimension `m`.
[[nodiscard]] double space_distance(Space space, const Ball& a, const Ball& b, int m = 1);

/// Greedy maximal separated subset, scanning points in the given order.
/// Returns indices of the selected points. Poincare points must satisfy |z| < 1.
[[nodiscard]] std::vector<std::size_t> separated_net(const std::vector<Point>& points,
                                                     double separation, Space space);

/// Same for points of M* over the flat torus of dimension m.
[[nodiscard]] std::vector<std::size_t> separated_net_mstar(const std::vector<MStarPoint>& points,
                                                           double separation, int m);

/// Replaces overlapping closed balls by disjoint ones with no larger radius sum.
/// Balls are inserted in index order; an inserted ball repeatedly absorbs the
/// lowest-index overlapping ball of the current disjoint family.
/// Supports euclidean, poincare and mstar (base of dimension m).
[[nodiscard]] std::vector<Ball> merge_balls(const std::vector<Ball>& balls, Space space,
                                            int m = 1);

/// Single merge of two overlapping balls: the smallest ball on the geodesic
/// through both centers containing both, or the larger one under containment.
[[nodiscard]] Ball merge_pair(const Ball& a, const Ball& b, Space space, int m = 1);

struct HoroballMerge {
  std::vector<Ball> balls;
  double T = 1.0;
  /// 1/2 ln(1/T), accumulated additively so that absorption is exact.
  double half_log_inv_T = 0.0;
  int absorbed = 0;
};

/// Merges M* balls among themselves and into the horoball M x (T, inf).
/// A ball of radius r centered at height t reaches height t e^r; when that is
/// >= T the ball is absorbed and T becomes T e^{-2r}.
[[nodiscard]] HoroballMerge merge_with_horoball(const std::vector<Ball>& balls, double T, int m);

/// 1/2 ln(1/T) + sum of radii.
[[nodiscard]] double horoball_quantity(const HoroballMerge& h);

/// Samples Pi o F on the boundary of a Poincare ball, parametrized by the
/// vertices of `sphere` through the isometry sending 0 to the center.
/// Throws DecompositionFailure naming the first point outside the tube.
[[nodiscard]] DiscreteMap bubble_boundary_map(const ExtensionField& F, const Ball& ball,
                                              std::shared_ptr<const Domain> sphere);

struct DecomposeParams {
  /// 0 means the target's delta*.
  double delta = 0.0;
  LatticeSpec lattice{};
  /// Boundary sampling: circle points (m = 1) or icosphere level (m = 2).
  int boundary_resolution = 0;
  /// Rounding residual above which a bubble degree is rejected.
  double max_residual = 0.2;
};

struct BubbleReport {
  Ball ball{};
  DiscreteMap boundary;
  std::optional<DegreeResult> degree;
  double lipschitz = 0.0;            // discrete Lipschitz constant of the boundary map
  double lipschitz_over_sinh = 0.0;  // lipschitz / sinh(radius)
};

struct DecompositionReport {
  std::vector<Ball> balls;
  std::vector<BubbleReport> bubbles;
  std::optional<DegreeResult> total_degree;
  long degree_sum = 0;
  double delta = 0.0;
  double rho = 0.0;
  std::size_t singular_samples = 0;
  std::size_t net_size = 0;
  double singular_measure = 0.0;
  [[nodiscard]] std::size_t count() const noexcept { return bubbles.size(); }
  /// Degree sum equals the total degree (sphere targets of matching dimension).
  [[nodiscard]] bool degree_additive() const noexcept;
};

/// detect_singular -> separated net (2 rho) -> balls of radius 2 rho ->
/// merge_balls -> boundary maps and degrees.
[[nodiscard]] DecompositionReport decompose(const DiscreteMap& f, const DecomposeParams& params = {});

struct CountVsGap {
  std::size_t k = 0;
  double lambda = 0.0;
  double ratio = 0.0;  // k / lambda
  bool vacuous = false;
  bool violation = false;  // lambda = 0 with k > 0
};

/// lambda = gap_potential(f, eps, p = 0).
[[nodiscard]] CountVsGap count_vs_gap(const DiscreteMap& f, double eps,
                                      const DecompositionReport& report,
                                      const QuadratureOptions& q = {});

struct MStarDecomposition {
  std::vector<MStarPoint> samples;
  std::vector<Ball> balls;  // merged, below the horoball
  double T = 0.0;           // final horoball level
  double initial_T = 0.0;
  /// Level map x -> Pi o F(x, T) on the torus grid; empty when some point
  /// leaves the tube.
  std::optional<DiscreteMap> residual;
  double quantity_before = 0.0;
  double quantity_after = 0.0;
};

struct MStarParams {
  double delta = 0.0;  // 0 means delta*
  double sigma = 0.0;  // lattice spacing; 0 means rho / 2
  std::size_t max_points = 2'000'000;
  int threads = 1;
};

/// Decomposition over M* = T^m x (0, inf) for maps on the flat torus: sample
/// heights below the blend level, net, merge with the horoball above it.
[[nodiscard]] MStarDecomposition decompose_mstar(const DiscreteMap& f, const MStarParams& p = {});

}  // namespace bubblescope
