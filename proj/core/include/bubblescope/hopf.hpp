#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "bubblescope/discrete_map.hpp"
#include "bubblescope/energy.hpp"
#include "bubblescope/pair_quadrature.hpp"

namespace bubblescope {

// ---------------------------------------------------------------------------
// Hurewicz pairing against gap potentials

struct HurewiczMember {
  std::string label;
  DiscreteMap map;
};

enum class HurewiczGapMode {
  /// (d(f(y), f(x)) - eps)_+ / |y - x|^{2m}, geodesic target distance.
  truncated,
  /// eps^m times the indicator of d >= eps; only meaningful for m >= 2.
  scaled,
};

struct HurewiczRow {
  std::string label;
  double eps = 0.0;
  /// |<Hur(f), omega>| for the volume form, or |k1| + |k2| for torus loops.
  double hurewicz = 0.0;
  double gap = 0.0;
  double ratio = 0.0;  // hurewicz / gap
  /// Zero pairing: the row carries no information about the constant.
  bool vacuous = false;
};

struct HurewiczGapTable {
  HurewiczGapMode mode = HurewiczGapMode::truncated;
  std::vector<HurewiczRow> rows;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  /// max_ratio / min_ratio over non-vacuous rows (1 when fewer than two).
  [[nodiscard]] double spread() const noexcept;
  [[nodiscard]] bool within_factor(double factor) const noexcept { return spread() <= factor; }
};

[[nodiscard]] double hurewicz_magnitude(const DiscreteMap& f);

/// Evaluates every member at every eps. The scaled mode requires m >= 2.
[[nodiscard]] HurewiczGapTable hurewicz_gap_check(const std::vector<HurewiczMember>& family,
                                                  const std::vector<double>& eps_list,
                                                  HurewiczGapMode mode,
                                                  const QuadratureOptions& q = {});

// ---------------------------------------------------------------------------
// Hopf family S^3 -> S^2

/// The Hopf fibration (2 Re(z1 conj z2), 2 Im(z1 conj z2), |z1|^2 - |z2|^2)
/// with z1 = x0 + i x1, z2 = x2 + i x3.
[[nodiscard]] Point hopf_point(const Point& x) noexcept;

/// power_map_s2(k) composed with the Hopf map, evaluated pointwise.
[[nodiscard]] Point hopf_family_point(int k, const Point& x) noexcept;

struct HopfMap {
  DiscreteMap map;
  int k = 0;
  /// k^2 by construction. Never estimated from samples.
  long nominal_invariant = 0;
};

[[nodiscard]] HopfMap hopf_family(int k, std::shared_ptr<const Domain> mesh);

struct HopfMCOptions {
  std::uint64_t samples = 2'000'000;
  std::uint64_t seed = 1;
  int threads = 1;
  /// Independent batches (one RNG stream each), resampled by the bootstrap.
  int batches = 64;
  int bootstrap = 400;
};

/// Monte Carlo estimate of the indicator gap potential of f_k on S^3 x S^3,
/// kernel |y - x|^{-6}, chord distance in the target.
struct HopfGapEstimate {
  int k = 0;
  double value = 0.0;
  double std_error = 0.0;
  std::vector<double> batch_means;
};

[[nodiscard]] HopfGapEstimate hopf_gap_mc(int k, double eps, const HopfMCOptions& o);

struct HopfGrowth {
  std::vector<HopfGapEstimate> estimates;
  /// False when fewer than two distinct k were given; no fit is attempted.
  bool fitted = false;
  /// Slope of log gap against log of the nominal invariant k^2.
  double exponent = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t samples = 0;
  [[nodiscard]] double ci_width() const noexcept { return ci_high - ci_low; }
};

/// Throws InvalidArgument when samples < 10^6 or when the 95% bootstrap
/// interval of the exponent is wider than 0.3.
[[nodiscard]] HopfGrowth hopf_growth_check(const std::vector<int>& k_list, double eps,
                                           const HopfMCOptions& o);

}  // namespace bubblescope
