#pragma once

#include <cstddef>
#include <vector>

#include "bubblescope/discrete_map.hpp"
#include "bubblescope/energy.hpp"
#include "bubblescope/hyperbolic.hpp"

namespace bubblescope {

/// F(z) = sum w_y K(z,y) f(y) / sum w_y K(z,y) with K = (1-|z|^2)^m / |z-y|^{2m},
/// for a map on S^m sampled by a sphere mesh.
class ExtensionField {
 public:
  explicit ExtensionField(DiscreteMap f);

  struct Evaluation {
    Point value{};
    double mass = 0.0;       // raw kernel mass, normalized so that it is 1 analytically
    double dominance = 0.0;  // largest single-vertex share of the mass
  };
  [[nodiscard]] Evaluation evaluate(const PoincarePoint& z) const noexcept;

  /// Throws InvalidArgument for |z| > 0.9999 and ResolutionError when one
  /// vertex carries more than 99% of the kernel mass.
  [[nodiscard]] Point operator()(const PoincarePoint& z) const;

  /// F(z) together with the kernel-weighted spread sum p_y |f(y) - F(z)|.
  /// The normalized weights satisfy |grad log p_y| <= 2m hyperbolically, so
  /// |DF| <= 2m exp(2m r) * spread on the hyperbolic r-ball about z.
  struct Spread {
    Point value{};
    double spread = 0.0;
  };
  [[nodiscard]] Spread evaluate_spread(const PoincarePoint& z) const noexcept;

  /// Ambient distance from F(z) to the target manifold.
  [[nodiscard]] double distance_to_target(const PoincarePoint& z) const noexcept;

  [[nodiscard]] const DiscreteMap& map() const noexcept { return f_; }
  [[nodiscard]] int dim() const noexcept { return m_; }

 private:
  DiscreteMap f_;
  int m_;
  double inv_area_;
};

[[nodiscard]] inline Point hyperharmonic_extend(const ExtensionField& F, const PoincarePoint& z) {
  return F(z);
}

/// Raw kernel mass (1-|z|^2)^m / |S^m| * sum w_y |z-y|^{-2m}.
[[nodiscard]] double kernel_mass(const Domain& mesh, const PoincarePoint& z);

struct LipschitzReport {
  double max_norm = 0.0;  // hyperbolic operator norm of DF
  double bound = 0.0;     // m * ambient oscillation
  Point argmax{};
  bool pass = false;      // max_norm <= bound * 1.05
};

/// Central differences with a Euclidean step, rescaled by (1 - |z|^2) / 2.
[[nodiscard]] LipschitzReport lipschitz_check(const ExtensionField& F,
                                              const std::vector<PoincarePoint>& samples,
                                              double step = 1e-4);

struct SingularSample {
  Point point{};
  double distance = 0.0;  // lower bound for samples inside certified cells
  double volume = 0.0;    // hyperbolic volume of the lattice cell
  bool certified = false;
};

struct LatticeSpec {
  /// Leaf cell radius; 0 means rho / 2.
  double sigma = 0.0;
  /// Hyperbolic cutoff radius; 0 means 2 artanh(1 - h) with h the mesh spacing.
  double r_max = 0.0;
  /// Split certified cells down to radius rho instead of reporting them whole.
  bool expand_certified = false;
  /// Global Lipschitz constant of dist(F, N) in the hyperbolic metric; 0
  /// means 1.05 * m * ambient oscillation. Cells also use the local bound
  /// from ExtensionField::evaluate_spread when it is smaller.
  double lipschitz = 0.0;
  int threads = 1;
  std::size_t max_cells = 20'000'000;
};

struct SingularSet {
  std::vector<SingularSample> samples;
  double measure = 0.0;
  double rho = 0.0;
  double sigma = 0.0;
  double r_max = 0.0;
  std::size_t evaluations = 0;
};

/// rho = delta* / (2 m diam N).
[[nodiscard]] double net_scale(const Target& target, int m);

/// Cells of a hyperbolic polar lattice where dist(F, N) >= delta. Cells are
/// refined until either a Lipschitz bound decides them or they reach leaf
/// size, where the center decides.
[[nodiscard]] SingularSet detect_singular(const ExtensionField& F, double delta,
                                          const LatticeSpec& spec = {});

struct MeasureBound {
  double measure = 0.0;
  double gap = 0.0;    // double integral of (|f(y)-f(x)| - eps)_+ / |y-x|^{2m}
  double ratio = 0.0;  // measure * (delta - eps) / gap
  bool vacuous = false;
};

[[nodiscard]] MeasureBound measure_bound_check(const ExtensionField& F, double delta, double eps,
                                               const LatticeSpec& spec = {},
                                               const QuadratureOptions& q = {});

/// Chart scale on the torus for the M* kernel.
inline constexpr double kMStarDelta = 0.25;

/// Bump phi(u) = c * smoothstep(1 - u) on [0, 1), normalized on R^m.
[[nodiscard]] double mstar_bump(double u, int m) noexcept;
/// Blend weight: 0 for t <= delta/3, 1 for t >= 2 delta/3.
[[nodiscard]] double mstar_blend(double t) noexcept;

/// Normalized kernel average over the flat torus at height t.
[[nodiscard]] Point extend_mstar(const DiscreteMap& f, const MStarPoint& x);

}  // namespace bubblescope
