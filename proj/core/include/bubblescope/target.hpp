#pragma once

#include <optional>
#include <utility>
#include <string>

#include "bubblescope/vec.hpp"

namespace bubblescope {

enum class TargetKind { sphere, clifford_torus };

/// Embedded target manifold N: the unit sphere S^n in R^{n+1} or the Clifford
/// torus (cos a, sin a, cos b, sin b)/sqrt(2) in R^4.
class Target {
 public:
  [[nodiscard]] static Target sphere(int n);
  [[nodiscard]] static Target clifford_torus();

  [[nodiscard]] TargetKind kind() const noexcept { return kind_; }
  /// Intrinsic dimension (n for S^n, 2 for the torus).
  [[nodiscard]] int dim() const noexcept { return n_; }
  /// Embedding dimension nu.
  [[nodiscard]] int nu() const noexcept { return kind_ == TargetKind::sphere ? n_ + 1 : 4; }
  [[nodiscard]] double tube_radius() const noexcept { return tube_; }
  /// Geodesic diameter.
  [[nodiscard]] double diameter() const noexcept;
  [[nodiscard]] double injectivity_radius() const noexcept;
  [[nodiscard]] std::string name() const;

  /// Geodesic distance between points on the manifold (checked to 1e-6).
  [[nodiscard]] double distance(const Point& p, const Point& q) const;
  /// Same without the on-manifold check, for inner loops.
  [[nodiscard]] double geodesic_unchecked(const Point& p, const Point& q) const noexcept;
  /// Euclidean distance from y to the embedded manifold.
  [[nodiscard]] double distance_to_manifold(const Point& y) const noexcept;
  [[nodiscard]] bool contains(const Point& y, double tol = 1e-9) const noexcept {
    return distance_to_manifold(y) <= tol;
  }

  /// Nearest-point retraction on the delta*-tube; throws TubeViolation outside.
  [[nodiscard]] Point retract(const Point& y) const;
  [[nodiscard]] std::optional<Point> try_retract(const Point& y) const noexcept;

  /// Riemannian logarithm at b in a fixed frame: returns the tangent vector
  /// in ambient coordinates. Defined off the cut locus of b.
  [[nodiscard]] Point log(const Point& b, const Point& y) const noexcept;
  [[nodiscard]] Point exp(const Point& b, const Point& v) const noexcept;

  /// Embedded point from intrinsic coordinates (spherical or torus angles).
  [[nodiscard]] static Point torus_point(double a, double b) noexcept;
  /// Angles (a, b) of a point near the Clifford torus.
  [[nodiscard]] static std::pair<double, double> torus_angles(const Point& y) noexcept;

  bool operator==(const Target& o) const noexcept { return kind_ == o.kind_ && n_ == o.n_; }

 private:
  Target(TargetKind k, int n, double tube) : kind_(k), n_(n), tube_(tube) {}
  TargetKind kind_;
  int n_;
  double tube_;
};

[[nodiscard]] std::string to_string(TargetKind kind);

}  // namespace bubblescope
