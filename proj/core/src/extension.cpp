#include "bubblescope/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "bubblescope/error.hpp"
#include "bubblescope/parallel.hpp"

namespace bubblescope {

namespace {

double smoothstep(double x) noexcept {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * (3.0 - 2.0 * x);
}

}  // namespace

ExtensionField::ExtensionField(DiscreteMap f) : f_(std::move(f)) {
  const Domain& d = f_.mesh();
  if (d.kind != DomainKind::sphere) throw InvalidArgument("extension needs a sphere domain");
  m_ = d.dim;
  inv_area_ = 1.0 / sphere_volume(m_);
}

ExtensionField::Evaluation ExtensionField::evaluate(const PoincarePoint& z) const noexcept {
  const Domain& d = f_.mesh();
  const std::size_t n = d.size();
  Point acc{};
  double mass = 0.0, top = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double r2 = distance2(z, d.vertices[j]);
    double k = 1.0 / r2;
    if (m_ == 2) k *= k;
    else if (m_ == 3) k = k * k * k;
    k *= d.weights[j];
    mass += k;
    top = std::max(top, k);
    for (int c = 0; c < kMaxDim; ++c) acc[c] += k * f_.values[j][c];
  }
  Evaluation e;
  e.value = (1.0 / mass) * acc;
  e.dominance = top / mass;
  e.mass = std::pow(1.0 - norm2(z), m_) * inv_area_ * mass;
  return e;
}

Point ExtensionField::operator()(const PoincarePoint& z) const {
  if (norm(z) > 0.9999) throw InvalidArgument("extension point too close to the boundary");
  const Evaluation e = evaluate(z);
  if (e.dominance > 0.99)
    throw ResolutionError("one vertex carries " + std::to_string(e.dominance) +
                          " of the kernel mass");
  return e.value;
}

ExtensionField::Spread ExtensionField::evaluate_spread(const PoincarePoint& z) const noexcept {
  const Domain& d = f_.mesh();
  const std::size_t n = d.size();
  std::vector<double> k(n);
  Point acc{};
  double mass = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double kj = 1.0 / distance2(z, d.vertices[j]);
    if (m_ == 2) kj *= kj;
    else if (m_ == 3) kj = kj * kj * kj;
    kj *= d.weights[j];
    k[j] = kj;
    mass += kj;
    for (int c = 0; c < kMaxDim; ++c) acc[c] += kj * f_.values[j][c];
  }
  Spread s;
  s.value = (1.0 / mass) * acc;
  double w = 0.0;
  for (std::size_t j = 0; j < n; ++j) w += k[j] * distance(f_.values[j], s.value);
  s.spread = w / mass;
  return s;
}

double ExtensionField::distance_to_target(const PoincarePoint& z) const noexcept {
  return f_.target.distance_to_manifold(evaluate(z).value);
}

double kernel_mass(const Domain& mesh, const PoincarePoint& z) {
  if (mesh.kind != DomainKind::sphere) throw InvalidArgument("kernel_mass needs a sphere mesh");
  const int m = mesh.dim;
  double s = 0.0;
  for (std::size_t j = 0; j < mesh.size(); ++j)
    s += mesh.weights[j] * std::pow(distance2(z, mesh.vertices[j]), -m);
  return std::pow(1.0 - norm2(z), m) / sphere_volume(m) * s;
}

LipschitzReport lipschitz_check(const ExtensionField& F, const std::vector<PoincarePoint>& samples,
                                double step) {
  if (!(step > 1e-10)) throw InvalidArgument("finite-difference step below float resolution");
  const int m = F.dim();
  const int cols = m + 1;
  const int nu = F.map().target.nu();
  LipschitzReport r;
  r.bound = m * oscillation(F.map()).ambient;
  for (const Point& z : samples) {
    if (norm(z) > 0.99) throw InvalidArgument("lipschitz_check samples need |z| <= 0.99");
    Eigen::MatrixXd J(nu, cols);
    for (int c = 0; c < cols; ++c) {
      Point e{};
      e[c] = step;
      const Point a = F.evaluate(z + e).value, b = F.evaluate(z - e).value;
      for (int i = 0; i < nu; ++i) J(i, c) = (a[i] - b[i]) / (2.0 * step);
    }
    const double op = Eigen::JacobiSVD<Eigen::MatrixXd>(J).singularValues()(0);
    const double hyp = op * 0.5 * (1.0 - norm2(z));
    if (hyp > r.max_norm) {
      r.max_norm = hyp;
      r.argmax = z;
    }
  }
  r.pass = r.max_norm <= r.bound * 1.05;
  return r;
}

double net_scale(const Target& target, int m) {
  return target.tube_radius() / (2.0 * m * target.diameter());
}

namespace {

struct PolarCell {
  double r1 = 0.0, r2 = 0.0;
  // m = 1: angular interval in a[0], a[1]; m = 2: spherical triangle corners.
  Point a{}, b{}, c{};
  double lower = 0.0;  // certified lower bound of the distance (certified cells)
  bool certified = false;
};

struct CellInfo {
  Point center{};
  double radius = 0.0;
  double angular = 0.0;
  double volume = 0.0;
};

CellInfo describe(const PolarCell& cell, int m) {
  CellInfo info;
  const double rc = 0.5 * (cell.r1 + cell.r2);
  const double er = std::tanh(0.5 * rc);
  Point dir{};
  if (m == 1) {
    const double phi = 0.5 * (cell.a[0] + cell.a[1]);
    dir = Point{std::cos(phi), std::sin(phi), 0, 0};
    info.angular = 0.5 * (cell.a[1] - cell.a[0]);
    info.volume = (cell.a[1] - cell.a[0]) * (std::cosh(cell.r2) - std::cosh(cell.r1));
  } else {
    dir = normalized(cell.a + cell.b + cell.c);
    info.angular = std::max({unit_angle(dir, cell.a), unit_angle(dir, cell.b), unit_angle(dir, cell.c)});
    const double omega = std::fabs(spherical_triangle_area(cell.a, cell.b, cell.c));
    auto g = [](double r) { return 0.25 * (std::sinh(2.0 * r) - 2.0 * r); };
    info.volume = omega * (g(cell.r2) - g(cell.r1));
  }
  info.center = er * dir;
  // Move along the sphere of radius rc, then radially.
  info.radius = 0.5 * (cell.r2 - cell.r1) + std::sinh(rc) * info.angular;
  return info;
}

void split(const PolarCell& cell, const CellInfo& info, int m, std::vector<PolarCell>& out) {
  const double radial = cell.r2 - cell.r1;
  if (radial >= 2.0 * std::sinh(0.5 * (cell.r1 + cell.r2)) * info.angular) {
    PolarCell lo = cell, hi = cell;
    const double mid = 0.5 * (cell.r1 + cell.r2);
    lo.r2 = mid;
    hi.r1 = mid;
    out.push_back(lo);
    out.push_back(hi);
    return;
  }
  if (m == 1) {
    PolarCell lo = cell, hi = cell;
    const double mid = 0.5 * (cell.a[0] + cell.a[1]);
    lo.a[1] = mid;
    hi.a[0] = mid;
    out.push_back(lo);
    out.push_back(hi);
    return;
  }
  const Point ab = normalized(cell.a + cell.b), bc = normalized(cell.b + cell.c),
              ca = normalized(cell.c + cell.a);
  const Point tri[4][3] = {{cell.a, ab, ca}, {ab, cell.b, bc}, {ca, bc, cell.c}, {ab, bc, ca}};
  for (const auto& t : tri) {
    PolarCell child = cell;
    child.a = t[0];
    child.b = t[1];
    child.c = t[2];
    out.push_back(child);
  }
}

}  // namespace

SingularSet detect_singular(const ExtensionField& F, double delta, const LatticeSpec& spec) {
  const DiscreteMap& f = F.map();
  const int m = F.dim();
  if (m != 1 && m != 2) throw InvalidArgument("detect_singular supports m in {1,2}");
  if (!(delta > 0.0) || delta > f.target.tube_radius() + 1e-12)
    throw InvalidArgument("delta must lie in (0, delta*]");
  SingularSet out;
  out.rho = net_scale(f.target, m);
  out.sigma = spec.sigma > 0.0 ? spec.sigma : 0.5 * out.rho;
  if (out.sigma > out.rho + 1e-12)
    throw InvalidArgument("lattice too coarse: sigma " + std::to_string(out.sigma) +
                          " exceeds rho " + std::to_string(out.rho));
  const double h = f.mesh().spacing();
  out.r_max = spec.r_max > 0.0 ? spec.r_max : 2.0 * std::atanh(std::max(0.0, 1.0 - h));
  const double L =
      spec.lipschitz > 0.0 ? spec.lipschitz : 1.05 * m * oscillation(f, spec.threads).ambient;
  if (L == 0.0) {
    // Constant map: F is the constant itself, which lies on the target.
    return out;
  }

  std::vector<PolarCell> gen;
  const int shells = std::max(1, static_cast<int>(std::ceil(out.r_max)));
  for (int s = 0; s < shells; ++s) {
    PolarCell base;
    base.r1 = out.r_max * s / shells;
    base.r2 = out.r_max * (s + 1) / shells;
    if (m == 1) {
      for (int k = 0; k < 8; ++k) {
        PolarCell c = base;
        c.a[0] = 2.0 * std::numbers::pi * k / 8;
        c.a[1] = 2.0 * std::numbers::pi * (k + 1) / 8;
        gen.push_back(c);
      }
    } else {
      const Domain ico = make_sphere_mesh(2, 0);
      for (std::size_t t = 0; t < ico.cell_count(); ++t) {
        const std::uint32_t* v = ico.cell(t);
        PolarCell c = base;
        c.a = ico.vertices[v[0]];
        c.b = ico.vertices[v[1]];
        c.c = ico.vertices[v[2]];
        gen.push_back(c);
      }
    }
  }

  std::size_t total = 0;
  while (!gen.empty()) {
    total += gen.size();
    if (total > spec.max_cells)
      throw ResolutionError("singular-set lattice exceeded " + std::to_string(spec.max_cells) +
                            " cells");
    std::vector<CellInfo> info(gen.size());
    std::vector<double> dist(gen.size(), 0.0), lip(gen.size(), L);
    parallel_for(gen.size(), spec.threads, [&](std::size_t i) {
      info[i] = describe(gen[i], m);
      if (gen[i].certified) return;
      const ExtensionField::Spread e = F.evaluate_spread(info[i].center);
      dist[i] = f.target.distance_to_manifold(e.value);
      const double local = 2.0 * m * std::exp(2.0 * m * info[i].radius) * e.spread;
      lip[i] = std::min(L, local);
    });
    std::vector<PolarCell> next;
    for (std::size_t i = 0; i < gen.size(); ++i) {
      const PolarCell& cell = gen[i];
      const CellInfo& ci = info[i];
      const bool leaf = ci.radius <= out.sigma;
      if (cell.certified) {
        // Certified interiors only need net resolution, not leaf resolution.
        if (ci.radius <= out.rho) out.samples.push_back({ci.center, cell.lower, ci.volume, true});
        else split(cell, ci, m, next);
        continue;
      }
      ++out.evaluations;
      const double d = dist[i];
      const double Li = lip[i];
      if (d + Li * ci.radius < delta) continue;
      if (d - Li * ci.radius >= delta) {
        if (ci.radius <= out.rho || !spec.expand_certified) {
          out.samples.push_back({ci.center, d, ci.volume, true});
        } else {
          const std::size_t first = next.size();
          split(cell, ci, m, next);
          for (std::size_t k = first; k < next.size(); ++k) {
            next[k].certified = true;
            next[k].lower = d - Li * ci.radius;
          }
        }
        continue;
      }
      if (leaf) {
        if (d >= delta) out.samples.push_back({ci.center, d, ci.volume, false});
        continue;
      }
      split(cell, ci, m, next);
    }
    gen = std::move(next);
  }
  std::vector<double> vols;
  vols.reserve(out.samples.size());
  for (const auto& s : out.samples) vols.push_back(s.volume);
  out.measure = pairwise_sum(vols);
  return out;
}

MeasureBound measure_bound_check(const ExtensionField& F, double delta, double eps,
                                 const LatticeSpec& spec, const QuadratureOptions& q) {
  if (!(delta > eps)) throw InvalidArgument("measure_bound_check requires delta > eps");
  MeasureBound r;
  r.measure = detect_singular(F, delta, spec).measure;
  GapParams gp;
  gp.eps = eps;
  gp.p = 1.0;
  gp.mode = TargetDistanceMode::chord;
  r.gap = gap_potential(F.map(), gp, q).value;
  if (r.gap == 0.0) {
    r.vacuous = true;
    return r;
  }
  r.ratio = r.measure * (delta - eps) / r.gap;
  return r;
}

double mstar_bump(double u, int m) noexcept {
  if (u >= 1.0) return 0.0;
  const double c = m == 1 ? 35.0 / 48.0 : 2.0 / std::numbers::pi;
  return c * smoothstep(1.0 - u);
}

double mstar_blend(double t) noexcept {
  const double third = kMStarDelta / 3.0;
  return smoothstep((t - third) / third);
}

Point extend_mstar(const DiscreteMap& f, const MStarPoint& x) {
  const Domain& d = f.mesh();
  if (d.kind != DomainKind::torus) throw InvalidArgument("extend_mstar needs a torus domain");
  if (!(x.t > 0.0)) throw InvalidArgument("extend_mstar needs t > 0");
  const int m = d.dim;
  const double eta = mstar_blend(x.t);
  const double h = 1.0 / d.grid_n;
  if (eta < 1.0 && x.t < kMStarDelta && h > x.t / 3.0)
    throw ResolutionError("torus grid spacing " + std::to_string(h) + " exceeds t/3 = " +
                          std::to_string(x.t / 3.0));
  Point acc{};
  double mass = 0.0;
  auto add = [&](std::size_t j) {
    const double dist = d.distance(d.vertices[j], x.base);
    const double k = (1.0 - eta) * mstar_bump(dist * dist / (x.t * x.t), m) + eta;
    if (k == 0.0) return;
    mass += d.weights[j] * k;
    acc += (d.weights[j] * k) * f.values[j];
  };
  const int reach = static_cast<int>(std::ceil(x.t * d.grid_n)) + 1;
  if (eta > 0.0 || 2 * reach + 1 >= d.grid_n) {
    for (std::size_t j = 0; j < d.size(); ++j) add(j);
  } else {
    // Only vertices within distance t of the base point matter.
    const int n = d.grid_n;
    const int ci = static_cast<int>(std::lround(x.base[0] * n));
    const int cj = m == 2 ? static_cast<int>(std::lround(x.base[1] * n)) : 0;
    auto wrap = [n](int i) { return ((i % n) + n) % n; };
    for (int dj = (m == 2 ? -reach : 0); dj <= (m == 2 ? reach : 0); ++dj)
      for (int di = -reach; di <= reach; ++di) {
        const std::size_t j = m == 1 ? static_cast<std::size_t>(wrap(ci + di))
                                     : static_cast<std::size_t>(wrap(cj + dj)) * n + wrap(ci + di);
        add(j);
      }
  }
  if (!(mass > 0.0)) throw ResolutionError("no torus vertex inside the kernel support");
  return (1.0 / mass) * acc;
}

}  // namespace bubblescope
