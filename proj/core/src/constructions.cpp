#include "bubblescope/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bubblescope/error.hpp"
#include "bubblescope/mercator.hpp"
#include "bubblescope/sampler.hpp"

namespace bubblescope {

namespace {
constexpr double kPi = std::numbers::pi;

Point cross3(const Point& a, const Point& b) noexcept {
  return make_point(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0]);
}

// Rotation of R^3 sending u to v (both unit), applied to x.
Point rotate_onto(const Point& u, const Point& v, const Point& x) noexcept {
  const double c = dot(u, v);
  if (c < -1.0 + 1e-15) {
    // Half turn about any axis orthogonal to u.
    Point axis = std::fabs(u[0]) < 0.9 ? make_point(1, 0, 0) : make_point(0, 1, 0);
    axis = normalized(axis - dot(axis, u) * u);
    return 2.0 * dot(axis, x) * axis - x;
  }
  const Point w = cross3(u, v);
  const Point wx = cross3(w, x);
  return x + wx + (1.0 / (1.0 + c)) * cross3(w, wx);
}

void require_sphere_domain(const Domain& d, int m, const char* what) {
  if (d.kind != DomainKind::sphere || d.dim != m)
    throw InvalidArgument(std::string(what) + " needs an S^" + std::to_string(m) + " domain");
}

Point north(int m) noexcept {
  Point p{};
  p[m] = 1.0;
  return p;
}
}  // namespace

DiscreteMap winding_map(int k, std::shared_ptr<const Domain> mesh) {
  const Domain& d = *mesh;
  std::vector<Point> v;
  v.reserve(d.size());
  if (d.kind == DomainKind::sphere && d.dim == 1) {
    for (const Point& x : d.vertices) {
      const double a = k * std::atan2(x[1], x[0]);
      v.push_back(make_point(std::cos(a), std::sin(a)));
    }
  } else if (d.kind == DomainKind::torus && d.dim == 1) {
    for (const Point& x : d.vertices) {
      const double a = 2.0 * kPi * k * x[0];
      v.push_back(make_point(std::cos(a), std::sin(a)));
    }
  } else {
    throw InvalidArgument("winding_map needs a circle or 1-torus domain");
  }
  return make_map(std::move(mesh), Target::sphere(1), std::move(v));
}

DiscreteMap identity_map(std::shared_ptr<const Domain> mesh) {
  if (mesh->kind != DomainKind::sphere) throw InvalidArgument("identity_map needs a sphere domain");
  const int m = mesh->dim;
  std::vector<Point> v = mesh->vertices;
  return make_map(std::move(mesh), Target::sphere(m), std::move(v));
}

DiscreteMap antipodal_map(std::shared_ptr<const Domain> mesh) {
  if (mesh->kind != DomainKind::sphere) throw InvalidArgument("antipodal_map needs a sphere domain");
  const int m = mesh->dim;
  std::vector<Point> v;
  for (const Point& x : mesh->vertices) v.push_back(-x);
  return make_map(std::move(mesh), Target::sphere(m), std::move(v));
}

Point dilation_point(double lambda, const Point& x, int m) noexcept {
  const double denom = 1.0 - x[m];
  if (denom < 1e-15) return x;
  // stereographic chart from the north pole, scaled by lambda
  Point q{};
  double q2 = 0.0;
  for (int i = 0; i < m; ++i) {
    q[i] = lambda * x[i] / denom;
    q2 += q[i] * q[i];
  }
  Point y{};
  for (int i = 0; i < m; ++i) y[i] = 2.0 * q[i] / (q2 + 1.0);
  y[m] = (q2 - 1.0) / (q2 + 1.0);
  return y;
}

DiscreteMap dilation_map(double lambda, std::shared_ptr<const Domain> mesh) {
  if (mesh->kind != DomainKind::sphere) throw InvalidArgument("dilation_map needs a sphere domain");
  if (!(lambda > 0.0)) throw InvalidArgument("dilation_map needs lambda > 0");
  const int m = mesh->dim;
  std::vector<Point> v;
  v.reserve(mesh->size());
  for (const Point& x : mesh->vertices) v.push_back(normalized(dilation_point(lambda, x, m)));
  return make_map(std::move(mesh), Target::sphere(m), std::move(v));
}

DiscreteMap torus_loop(int k1, int k2, std::shared_ptr<const Domain> mesh) {
  require_sphere_domain(*mesh, 1, "torus_loop");
  std::vector<Point> v;
  v.reserve(mesh->size());
  for (const Point& x : mesh->vertices) {
    const double theta = std::atan2(x[1], x[0]);
    v.push_back(Target::torus_point(k1 * theta, k2 * theta));
  }
  return make_map(std::move(mesh), Target::clifford_torus(), std::move(v));
}

DiscreteMap flat_identity(std::shared_ptr<const Domain> cube) {
  if (cube->kind != DomainKind::cube) throw InvalidArgument("flat_identity needs a cube domain");
  const double s = std::sqrt(2.0);
  std::vector<Point> v;
  for (const Point& x : cube->vertices) v.push_back(Target::torus_point(s * x[0], s * x[1]));
  return make_map(std::move(cube), Target::clifford_torus(), std::move(v));
}

DiscreteMap torus_linear_map(std::shared_ptr<const Domain> torus,
                             const std::array<std::array<int, 2>, 2>& w) {
  if (torus->kind != DomainKind::torus) throw InvalidArgument("torus_linear_map needs a torus");
  const int m = torus->dim;
  std::vector<Point> v;
  for (const Point& x : torus->vertices) {
    double a = 0.0, b = 0.0;
    for (int c = 0; c < m; ++c) {
      a += w[0][c] * x[c];
      b += w[1][c] * x[c];
    }
    v.push_back(Target::torus_point(2.0 * kPi * a, 2.0 * kPi * b));
  }
  return make_map(std::move(torus), Target::clifford_torus(), std::move(v));
}

Point power_map_point(int k, const Point& x, double collapse) noexcept {
  double theta = std::atan2(std::hypot(x[0], x[1]), x[2]);
  if (collapse > 0.0) theta = kPi * std::clamp((theta - collapse) / (kPi - 2.0 * collapse), 0.0, 1.0);
  const double phi = k * std::atan2(x[1], x[0]);
  const double s = std::sin(theta);
  return make_point(s * std::cos(phi), s * std::sin(phi), std::cos(theta));
}

double power_map_collapse(int k, double spacing) noexcept {
  return std::abs(k) >= 3 ? std::abs(k) * spacing : 0.0;
}

DiscreteMap power_map_s2(int k, std::shared_ptr<const Domain> mesh) {
  require_sphere_domain(*mesh, 2, "power_map_s2");
  const double c = power_map_collapse(k, mesh->spacing());
  std::vector<Point> v;
  v.reserve(mesh->size());
  for (const Point& x : mesh->vertices) v.push_back(power_map_point(k, x, c));
  return make_map(std::move(mesh), Target::sphere(2), std::move(v));
}

DiscreteMap bubble_map(const std::vector<Bubble>& bubbles, const Point& basepoint,
                       std::shared_ptr<const Domain> mesh) {
  const Domain& d = *mesh;
  if (d.kind != DomainKind::sphere || (d.dim != 1 && d.dim != 2))
    throw InvalidArgument("bubble_map needs an S^1 or S^2 domain");
  const int m = d.dim;
  const Target target = Target::sphere(m);
  if (!target.contains(basepoint, 1e-9)) throw InvalidArgument("basepoint is off the target");
  const double h = 2.0 * std::asin(std::min(1.0, 0.5 * d.spacing()));
  for (std::size_t i = 0; i < bubbles.size(); ++i) {
    if (std::fabs(norm(bubbles[i].center) - 1.0) > 1e-9)
      throw InvalidArgument("bubble center must be a unit vector");
    if (!(bubbles[i].radius > 3.0 * h))
      throw InvalidArgument("bubble radius must exceed three mesh spacings");
    if (!(bubbles[i].radius < kPi)) throw InvalidArgument("bubble radius must be below pi");
    for (std::size_t j = 0; j < i; ++j)
      if (unit_angle(bubbles[i].center, bubbles[j].center) <=
          bubbles[i].radius + bubbles[j].radius)
        throw InvalidArgument("bubble caps overlap");
  }
  std::vector<Point> v(d.size(), basepoint);
  for (const Bubble& b : bubbles) {
    const Point& a = b.center;
    const double collapse = power_map_collapse(b.degree, h * kPi / b.radius);
    Point e1{}, e2{};
    if (m == 2) {
      e1 = std::fabs(a[0]) < 0.9 ? make_point(1, 0, 0) : make_point(0, 1, 0);
      e1 = normalized(e1 - dot(e1, a) * a);
      e2 = cross3(a, e1);
    }
    for (std::size_t i = 0; i < d.size(); ++i) {
      const Point& x = d.vertices[i];
      const double alpha = unit_angle(a, x);
      if (!(alpha < b.radius)) continue;
      if (m == 1) {
        const double phi = std::atan2(det2(a, x), dot(a, x));
        const double turn = b.degree * (kPi * phi / b.radius + kPi);
        const double c = std::cos(turn), s = std::sin(turn);
        v[i] = make_point(c * basepoint[0] - s * basepoint[1], s * basepoint[0] + c * basepoint[1]);
      } else {
        const double theta = kPi * alpha / b.radius;
        const double az = std::atan2(dot(x, e2), dot(x, e1));
        const Point q = make_point(std::sin(theta) * std::cos(az), std::sin(theta) * std::sin(az),
                                   std::cos(theta));
        const Point w = power_map_point(b.degree, q, collapse);
        v[i] = normalized(rotate_onto(make_point(0, 0, -1), basepoint, w));
      }
    }
  }
  return make_map(std::move(mesh), target, std::move(v));
}

double pinch_cutoff(double t) noexcept {
  if (t <= -2.0) return 0.0;
  if (t >= -1.0) return 1.0;
  const double u = t + 2.0;
  return u * u * (3.0 - 2.0 * u);
}

double pinch_expansion_constant(const Target&) noexcept { return pinch_cutoff_slope(); }

Point pinch_point(const Target& target, const Point& b, double lambda, const Point& y) {
  if (!(lambda > 0.0)) throw InvalidArgument("pinch needs lambda > 0");
  const Point v = target.log(b, y);
  const double r = norm(v);
  if (r == 0.0) return b;
  const double inj = target.injectivity_radius();
  if (r >= inj) return y;
  const double e = pinch_cutoff(lambda * std::log(r / inj));
  if (e == 1.0) return y;
  if (e == 0.0) return b;
  return target.retract(target.exp(b, e * v));
}

DiscreteMap pinch(const DiscreteMap& f, const Point& b, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("pinch needs lambda > 0");
  if (!f.target.contains(b, 1e-9)) throw InvalidArgument("pinch point is off the target");
  DiscreteMap g = f;
  for (auto& y : g.values) y = pinch_point(f.target, b, lambda, y);
  return g;
}

Point TargetPath::operator()(double tau) const {
  const std::size_t n = samples.size();
  if (n == 1) return samples.front();
  const double u = std::clamp(0.5 * (tau + 1.0), 0.0, 1.0) * static_cast<double>(n - 1);
  const std::size_t i = std::min(static_cast<std::size_t>(u), n - 2);
  const double t = u - static_cast<double>(i);
  if (t == 0.0) return samples[i];
  if (t == 1.0) return samples[i + 1];
  return target.retract((1.0 - t) * samples[i] + t * samples[i + 1]);
}

TargetPath geodesic_path(const Target& target, const Point& p, const Point& q, int samples) {
  if (samples < 2) throw InvalidArgument("a path needs at least two samples");
  if (!target.contains(p, 1e-6) || !target.contains(q, 1e-6))
    throw InvalidArgument("path endpoints must lie on the target");
  const Point v = target.log(p, q);
  if (target.kind() == TargetKind::sphere && norm(v) >= kPi - 1e-9 && distance(p, q) > 1e-9)
    throw InvalidArgument("no unique geodesic between antipodal points");
  TargetPath path{target, {}};
  for (int i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / (samples - 1);
    path.samples.push_back(i == 0 ? p : (i == samples - 1 ? q : target.exp(p, t * v)));
  }
  return path;
}

double constant_cap_radius(const DiscreteMap& f, const Point& pole, const Point& value) {
  const Domain& d = f.mesh();
  double nearest = kPi;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (distance(f.values[i], value) > 1e-12)
      nearest = std::min(nearest, unit_angle(pole, d.vertices[i]));
  const double h = 2.0 * std::asin(std::min(1.0, 0.5 * d.spacing()));
  return std::max(0.0, nearest - h);
}

GlueResult glue_cylinder(const DiscreteMap& f_plus, const DiscreteMap& f_minus,
                         const TargetPath& gamma, double lambda,
                         std::shared_ptr<const Domain> mesh) {
  if (!(lambda > 0.0)) throw InvalidArgument("glue_cylinder needs lambda > 0");
  const int m = mesh->dim;
  require_sphere_domain(*mesh, m, "glue_cylinder");
  require_sphere_domain(f_plus.mesh(), m, "glue_cylinder");
  require_sphere_domain(f_minus.mesh(), m, "glue_cylinder");
  if (!(f_plus.target == f_minus.target) || !(gamma.target == f_plus.target))
    throw InvalidArgument("glue_cylinder: maps and path must share the target");
  const MapSampler plus(f_plus), minus(f_minus);
  const Point a = north(m);
  const Point c_plus = plus(-a);    // constant of f_plus near the south pole
  const Point c_minus = minus(a);   // constant of f_minus near the north pole
  if (distance(gamma(-1.0), c_minus) > 1e-6 || distance(gamma(1.0), c_plus) > 1e-6)
    throw InvalidArgument("glue_cylinder: path endpoints do not match the constant values");
  const double r_plus = constant_cap_radius(f_plus, -a, c_plus);
  const double r_minus = constant_cap_radius(f_minus, a, c_minus);
  if (!(r_plus > 0.0)) throw InvalidArgument("f_plus is not constant near the south pole");
  if (!(r_minus > 0.0)) throw InvalidArgument("f_minus is not constant near the north pole");
  GlueResult out{DiscreteMap{mesh, f_plus.target, {}}, std::atanh(std::cos(r_plus)),
                 std::atanh(std::cos(r_minus))};
  const Point top = plus(a);
  const Point bottom = minus(-a);
  out.map.values.reserve(mesh->size());
  for (const Point& x : mesh->vertices) {
    Point zpart = x;
    zpart[m] = 0.0;
    if (norm(zpart) < 1e-300) {
      out.map.values.push_back(x[m] > 0.0 ? top : bottom);
      continue;
    }
    const CylinderPoint c = inverse_mercator(x, m);
    if (c.s <= -2.0 * lambda) {
      out.map.values.push_back(minus(mercator(c.z, c.s + 2.0 * lambda + out.s_minus, m)));
    } else if (c.s >= 2.0 * lambda) {
      out.map.values.push_back(plus(mercator(c.z, c.s - 2.0 * lambda - out.s_plus, m)));
    } else {
      out.map.values.push_back(gamma(c.s / lambda));
    }
  }
  if (auto why = validate_map(out.map); !why.empty())
    throw ResolutionError("glued map is invalid: " + why);
  return out;
}

DiscreteMap random_lipschitz_map(std::shared_ptr<const Domain> cube, double L, Philox& rng) {
  if (cube->kind != DomainKind::cube || cube->dim != 2)
    throw InvalidArgument("random_lipschitz_map needs a [0,1]^2 grid");
  double A[2][2];
  for (auto& row : A)
    for (double& e : row) e = rng.normal();
  struct Mode {
    double c[2];
    int k[2];
    double phase;
  };
  Mode modes[3];
  double bound = std::sqrt(A[0][0] * A[0][0] + A[0][1] * A[0][1] + A[1][0] * A[1][0] +
                           A[1][1] * A[1][1]);
  for (Mode& md : modes) {
    md.c[0] = rng.normal();
    md.c[1] = rng.normal();
    do {
      md.k[0] = static_cast<int>(rng.next_u32() % 5) - 2;
      md.k[1] = static_cast<int>(rng.next_u32() % 5) - 2;
    } while (md.k[0] == 0 && md.k[1] == 0);
    md.phase = rng.uniform(0.0, 2.0 * kPi);
    bound += std::hypot(md.c[0], md.c[1]) * 2.0 * kPi * std::hypot(md.k[0], md.k[1]);
  }
  const double scale = L * rng.uniform(0.6, 1.0) / bound;
  const double v0[2] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  const Target s2 = Target::sphere(2);
  const Point pole = make_point(0, 0, 1);
  std::vector<Point> v;
  v.reserve(cube->size());
  for (const Point& x : cube->vertices) {
    double t[2] = {v0[0], v0[1]};
    for (int r = 0; r < 2; ++r)
      t[r] += scale * (A[r][0] * (x[0] - 0.5) + A[r][1] * (x[1] - 0.5));
    for (const Mode& md : modes) {
      const double s = std::sin(2.0 * kPi * (md.k[0] * x[0] + md.k[1] * x[1]) + md.phase);
      t[0] += scale * md.c[0] * s;
      t[1] += scale * md.c[1] * s;
    }
    v.push_back(normalized(s2.exp(pole, make_point(t[0], t[1], 0.0))));
  }
  return make_map(std::move(cube), s2, std::move(v));
}

}  // namespace bubblescope
