#pragma once

#include <string>
#include <vector>

#include "bubblescope/energy.hpp"

namespace bubblescope {

/// J_p(eps): the truncated-power gap potential with geodesic target distance.
[[nodiscard]] EnergyReport truncated_energy(const DiscreteMap& f, double eps, double p,
                                            const QuadratureOptions& q = {});

/// 2^{(p-1)_+ - (m-1)}.
[[nodiscard]] double halving_factor(int m, double p);

struct HalvingResult {
  double j_eps = 0.0;
  double j_half = 0.0;
  double ratio = 0.0;  // j_eps / j_half, 0 when vacuous
  double bound = 0.0;  // halving_factor * (1 + slack)
  bool vacuous = false;
  bool pass = false;
};

/// Checks J_p(eps) <= 2^{(p-1)_+ - (m-1)} (1 + slack) J_p(eps/2).
[[nodiscard]] HalvingResult halving_ratio(const DiscreteMap& f, double eps, double p,
                                          const QuadratureOptions& q = {}, double slack = 0.05);

struct ScalingRow {
  double eps = 0.0;
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Largest target distance between adjacent vertices, divided by 2^refine_depth.
[[nodiscard]] double resolvable_gap(const DiscreteMap& f, int refine_depth);

/// J_p at each eps. Throws ResolutionError when some eps < 3 * resolvable_gap.
[[nodiscard]] std::vector<ScalingRow> scaling_curve(const DiscreteMap& f, double p,
                                                    const std::vector<double>& eps_list,
                                                    const QuadratureOptions& q = {});

/// Least-squares slope of y against x.
[[nodiscard]] double fit_slope(const std::vector<double>& x, const std::vector<double>& y);
/// Slope of log J against log eps.
[[nodiscard]] double loglog_slope(const std::vector<ScalingRow>& rows);
/// Slope of J against log(1/eps).
[[nodiscard]] double log_growth_slope(const std::vector<ScalingRow>& rows);

struct PQComparison {
  double lhs = 0.0;  // J_p(eps)
  double rhs = 0.0;  // eps^{p-q} J_q(eta eps)
  double ratio = 0.0;
  bool vacuous = false;
};

/// Requires m >= 2, p < m, 0 < eta < 1.
[[nodiscard]] PQComparison compare_pq(const DiscreteMap& f, double p, double q, double eps,
                                      double eta, const QuadratureOptions& opts = {});

struct TruncatedPowerCheck {
  double max_ratio = 0.0;
  double argmax_s = 0.0;
  double argmax_t = 0.0;
  int evaluated = 0;
  /// (s, t) points skipped because s = 0 and q >= p.
  std::vector<std::pair<double, double>> excluded;
};

/// sup over the grid of (t - s)^p / integral_{eta s}^{t} (t - r)^q r^{p-q-1} dr.
[[nodiscard]] TruncatedPowerCheck truncated_power_bound_check(
    double p, double q, double eta, const std::vector<std::pair<double, double>>& grid);

/// Grid of (s, t) with s in s_values and t = s * ratio, ratio log-spaced in
/// [1, max_ratio] with `count` entries.
[[nodiscard]] std::vector<std::pair<double, double>> ratio_grid(const std::vector<double>& s_values,
                                                                double max_ratio, int count);

}  // namespace bubblescope
