#pragma once

#include <cstdint>

#include "bubblescope/discrete_map.hpp"
#include "bubblescope/pair_quadrature.hpp"

namespace bubblescope {

struct EnergyReport {
  double value = 0.0;
  std::uint64_t pairs = 0;
  double exclusion_radius = 0.0;
  double error_estimate = 0.0;
  /// Cylinder form only: analytic bound on the part beyond the band.
  double tail_bound = 0.0;
};

/// Power p = 0 is the indicator of d > eps.
struct GapParams {
  double eps = 0.0;
  double p = 0.0;
  TargetDistanceMode mode = TargetDistanceMode::geodesic;
  /// Sphere domains only; torus domains always use the flat wrapped distance.
  DistanceMode domain_mode = DistanceMode::chord;
};

/// E^{s,p}(f) = double integral of |f(y) - f(x)|^p / |y - x|^{m + sp}.
[[nodiscard]] EnergyReport sobolev_energy(const DiscreteMap& f, double s, double p,
                                          const QuadratureOptions& q = {});

/// Integral of |Df|^m for m in {1, 2}.
[[nodiscard]] EnergyReport dirichlet_energy(const DiscreteMap& f);

/// Double integral of (d(f(y), f(x)) - eps)_+^p / |y - x|^{2m}.
[[nodiscard]] EnergyReport gap_potential(const DiscreteMap& f, const GapParams& gp,
                                         const QuadratureOptions& q = {});

struct CylinderOptions {
  double band = 8.0;
  /// Step in the cylinder coordinate; 0 picks a default from the mesh.
  double ds = 0.0;
  /// Circle points for m = 2; 0 picks a default.
  int nz = 0;
  int threads = 1;
  bool estimate_error = true;
};

/// E^{s,p} with sp = m computed on the Mercator cylinder S^{m-1} x [-band, band],
/// where the kernel becomes |F(w,t) - F(z,s)|^p / ((2 sinh((t-s)/2))^2 + |w-z|^2)^m.
/// Throws InvalidArgument when the tail bound exceeds 10% of the value.
[[nodiscard]] EnergyReport cylinder_energy(const DiscreteMap& f, double s, double p,
                                           const CylinderOptions& c = {});

/// Integral over S^m of |y - x|^q for a fixed x (q > -m).
[[nodiscard]] double sphere_chord_moment(int m, double q);

}  // namespace bubblescope
