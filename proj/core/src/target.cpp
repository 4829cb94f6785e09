#include "bubblescope/target.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bubblescope/error.hpp"

namespace bubblescope {

namespace {
constexpr double kPi = std::numbers::pi;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double wrap_angle(double a) noexcept {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}
}  // namespace

std::string to_string(TargetKind kind) {
  return kind == TargetKind::sphere ? "sphere" : "clifford_torus";
}

Target Target::sphere(int n) {
  if (n < 1 || n > 3) throw InvalidArgument("sphere targets exist for n in {1, 2, 3}");
  return Target(TargetKind::sphere, n, 0.5);
}

Target Target::clifford_torus() { return Target(TargetKind::clifford_torus, 2, 0.25); }

double Target::diameter() const noexcept { return kPi; }

double Target::injectivity_radius() const noexcept {
  return kind_ == TargetKind::sphere ? kPi : kPi * kInvSqrt2;
}

std::string Target::name() const {
  return kind_ == TargetKind::sphere ? "S^" + std::to_string(n_) : "clifford_torus";
}

Point Target::torus_point(double a, double b) noexcept {
  return make_point(kInvSqrt2 * std::cos(a), kInvSqrt2 * std::sin(a), kInvSqrt2 * std::cos(b),
                    kInvSqrt2 * std::sin(b));
}

std::pair<double, double> Target::torus_angles(const Point& y) noexcept {
  return {std::atan2(y[1], y[0]), std::atan2(y[3], y[2])};
}

double Target::geodesic_unchecked(const Point& p, const Point& q) const noexcept {
  if (kind_ == TargetKind::sphere) {
    return 2.0 * std::asin(std::min(1.0, 0.5 * bubblescope::distance(p, q)));
  }
  const double t1 = std::atan2(p[0] * q[1] - p[1] * q[0], p[0] * q[0] + p[1] * q[1]);
  const double t2 = std::atan2(p[2] * q[3] - p[3] * q[2], p[2] * q[2] + p[3] * q[3]);
  return std::sqrt(t1 * t1 + t2 * t2) * kInvSqrt2;
}

double Target::distance(const Point& p, const Point& q) const {
  if (!contains(p, 1e-6) || !contains(q, 1e-6))
    throw InvalidArgument("target_distance: point off the target manifold");
  return geodesic_unchecked(p, q);
}

double Target::distance_to_manifold(const Point& y) const noexcept {
  if (kind_ == TargetKind::sphere) return std::fabs(norm(y) - 1.0);
  const double u = std::hypot(y[0], y[1]) - kInvSqrt2;
  const double v = std::hypot(y[2], y[3]) - kInvSqrt2;
  return std::sqrt(u * u + v * v);
}

std::optional<Point> Target::try_retract(const Point& y) const noexcept {
  if (kind_ == TargetKind::sphere) {
    const double n = norm(y);
    if (!(std::fabs(n - 1.0) < tube_)) return std::nullopt;
    return (1.0 / n) * y;
  }
  const double a = std::hypot(y[0], y[1]);
  const double b = std::hypot(y[2], y[3]);
  const double u = a - kInvSqrt2, v = b - kInvSqrt2;
  if (!(std::sqrt(u * u + v * v) < tube_)) return std::nullopt;
  return make_point(kInvSqrt2 * y[0] / a, kInvSqrt2 * y[1] / a, kInvSqrt2 * y[2] / b,
                    kInvSqrt2 * y[3] / b);
}

Point Target::retract(const Point& y) const {
  if (auto r = try_retract(y)) return *r;
  throw TubeViolation(y, distance_to_manifold(y), tube_);
}

Point Target::log(const Point& b, const Point& y) const noexcept {
  if (kind_ == TargetKind::sphere) {
    const double c = dot(b, y);
    Point w = y - c * b;
    const double s = norm(w);
    const double theta = std::atan2(s, c);
    if (s == 0.0) return Point{};
    return (theta / s) * w;
  }
  const auto [ab, bb] = torus_angles(b);
  const auto [ay, by] = torus_angles(y);
  const double d1 = wrap_angle(ay - ab), d2 = wrap_angle(by - bb);
  // Tangent vector in ambient coordinates: derivative of torus_point.
  return make_point(-kInvSqrt2 * std::sin(ab) * d1, kInvSqrt2 * std::cos(ab) * d1,
                    -kInvSqrt2 * std::sin(bb) * d2, kInvSqrt2 * std::cos(bb) * d2);
}

Point Target::exp(const Point& b, const Point& v) const noexcept {
  if (kind_ == TargetKind::sphere) {
    const double t = norm(v);
    if (t == 0.0) return b;
    return std::cos(t) * b + (std::sin(t) / t) * v;
  }
  const auto [ab, bb] = torus_angles(b);
  // Invert the tangent map above: d1 = sqrt(2) (v . (-sin, cos)) in each factor.
  const double d1 = std::sqrt(2.0) * (-std::sin(ab) * v[0] + std::cos(ab) * v[1]);
  const double d2 = std::sqrt(2.0) * (-std::sin(bb) * v[2] + std::cos(bb) * v[3]);
  return torus_point(ab + d1, bb + d2);
}

}  // namespace bubblescope
