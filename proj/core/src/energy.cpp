#include "bubblescope/energy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bubblescope/error.hpp"
#include "bubblescope/mercator.hpp"
#include "bubblescope/parallel.hpp"
#include "bubblescope/sampler.hpp"

namespace bubblescope {

namespace {

EnergyReport from_sum(const PairSum& s) {
  EnergyReport r;
  r.value = s.value;
  r.pairs = s.evaluations;
  r.exclusion_radius = s.exclusion_radius;
  r.error_estimate = s.error_estimate;
  return r;
}

// Frobenius norm squared of the affine map sending the triangle (P0,P1,P2)
// onto (F0,F1,F2), times the flat triangle area.
double triangle_dirichlet(const Point& p0, const Point& p1, const Point& p2, const Point& f0,
                          const Point& f1, const Point& f2) {
  const Point e1 = p1 - p0, e2 = p2 - p0;
  const Point d1 = f1 - f0, d2 = f2 - f0;
  const double g11 = dot(e1, e1), g12 = dot(e1, e2), g22 = dot(e2, e2);
  const double det = g11 * g22 - g12 * g12;
  if (!(det > 0.0)) return 0.0;
  const double h11 = dot(d1, d1), h12 = dot(d1, d2), h22 = dot(d2, d2);
  // trace(G^{-1} H)
  const double tr = (g22 * h11 - 2.0 * g12 * h12 + g11 * h22) / det;
  return tr * 0.5 * std::sqrt(det);
}

}  // namespace

EnergyReport sobolev_energy(const DiscreteMap& f, double s, double p, const QuadratureOptions& q) {
  const int m = f.mesh().dim;
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("sobolev_energy: s must lie in (0,1)");
  if (!(p >= 1.0)) throw InvalidArgument("sobolev_energy: p must be >= 1");
  if (s * p > m + 1 + 1e-12) throw InvalidArgument("sobolev_energy: requires sp <= m + 1");
  PairKernel k;
  k.numerator = PairKernel::Numerator::chord_power;
  k.p = p;
  k.alpha = m + s * p;
  k.domain_mode = DistanceMode::chord;
  return from_sum(pair_integral(f, k, q));
}

EnergyReport dirichlet_energy(const DiscreteMap& f) {
  const Domain& d = f.mesh();
  if (d.dim != 1 && d.dim != 2) throw InvalidArgument("dirichlet_energy supports m in {1,2}");
  if (d.corners == 0) throw InvalidArgument("dirichlet_energy needs cells");
  std::vector<double> terms(d.cell_count());
  for (std::size_t c = 0; c < d.cell_count(); ++c) {
    const std::uint32_t* v = d.cell(c);
    if (d.dim == 1) {
      terms[c] = f.target.geodesic_unchecked(f.values[v[0]], f.values[v[1]]);
      continue;
    }
    Point P[4]{};
    for (int k = 0; k < d.corners; ++k) P[k] = unwrap_near(d, d.vertices[v[k]], d.vertices[v[0]]);
    const Point* F[4]{};
    for (int k = 0; k < d.corners; ++k) F[k] = &f.values[v[k]];
    if (d.corners == 3) {
      terms[c] = triangle_dirichlet(P[0], P[1], P[2], *F[0], *F[1], *F[2]);
    } else {
      terms[c] = triangle_dirichlet(P[0], P[1], P[2], *F[0], *F[1], *F[2]) +
                 triangle_dirichlet(P[0], P[2], P[3], *F[0], *F[2], *F[3]);
    }
  }
  EnergyReport r;
  r.value = pairwise_sum(terms);
  r.pairs = terms.size();
  r.exclusion_radius = 0.0;
  r.error_estimate = 0.0;
  return r;
}

EnergyReport gap_potential(const DiscreteMap& f, const GapParams& gp, const QuadratureOptions& q) {
  if (!(gp.eps >= 0.0) || !(gp.p >= 0.0)) throw InvalidArgument("gap_potential: eps, p >= 0");
  if (gp.p == 0.0 && !(gp.eps > 0.0))
    throw InvalidArgument("gap_potential: eps must be positive for the indicator");
  PairKernel k;
  k.numerator = PairKernel::Numerator::truncated_power;
  k.p = gp.p;
  k.eps = gp.eps;
  k.target_mode = gp.mode;
  k.alpha = 2.0 * f.mesh().dim;
  k.domain_mode = gp.domain_mode;
  return from_sum(pair_integral(f, k, q));
}

double sphere_chord_moment(int m, double q) {
  if (!(q > -m)) throw InvalidArgument("sphere_chord_moment: q must exceed -m");
  if (m == 1) {
    // 2^{q+1} * integral_0^pi sin^q u du
    return std::pow(2.0, q + 1.0) * std::sqrt(std::numbers::pi) * std::tgamma(0.5 * (q + 1.0)) /
           std::tgamma(0.5 * q + 1.0);
  }
  if (m == 2) return 2.0 * std::numbers::pi * std::pow(2.0, q + 2.0) / (q + 2.0);
  throw InvalidArgument("sphere_chord_moment supports m in {1,2}");
}

namespace {

struct CylinderGrid {
  std::vector<Point> z;   // points of S^{m-1}
  std::vector<double> s;  // cylinder coordinate
  std::vector<double> w;  // weights
  std::vector<double> ep;  // exp(s/2)
  std::vector<double> em;  // exp(-s/2)
  std::vector<Point> value;
};

CylinderGrid build_cylinder(const DiscreteMap& f, double band, double ds, int nz) {
  const int m = f.mesh().dim;
  CylinderGrid g;
  const int ns = static_cast<int>(std::ceil(2.0 * band / ds));
  const double step = 2.0 * band / ns;
  std::vector<Point> zs;
  double zw = 1.0;
  if (m == 1) {
    zs = {Point{1, 0, 0, 0}, Point{-1, 0, 0, 0}};
  } else {
    for (int i = 0; i < nz; ++i) {
      const double a = 2.0 * std::numbers::pi * i / nz;
      zs.push_back(Point{std::cos(a), std::sin(a), 0, 0});
    }
    zw = 2.0 * std::numbers::pi / nz;
  }
  MapSampler sample(f);
  for (const Point& z : zs) {
    for (int i = 0; i <= ns; ++i) {
      const double s = -band + i * step;
      const double trap = (i == 0 || i == ns) ? 0.5 : 1.0;
      g.z.push_back(z);
      g.s.push_back(s);
      g.w.push_back(zw * step * trap);
      g.ep.push_back(std::exp(0.5 * s));
      g.em.push_back(std::exp(-0.5 * s));
      g.value.push_back(sample(mercator(z, s, m)));
    }
  }
  return g;
}

double cylinder_sum(const CylinderGrid& g, int m, double p, int threads, std::uint64_t& pairs) {
  const std::size_t n = g.s.size();
  const bool p2 = p == 2.0, p4 = p == 4.0;
  const double half = 0.5 * p;
  pairs = static_cast<std::uint64_t>(n) * (n - 1);
  return parallel_sum(n, threads, [&](std::size_t i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double c2 = distance2(g.value[i], g.value[j]);
      if (c2 == 0.0) continue;
      const double num = p2 ? c2 : p4 ? c2 * c2 : std::pow(c2, half);
      const double sh = g.ep[j] * g.em[i] - g.em[j] * g.ep[i];
      const double base = sh * sh + distance2(g.z[i], g.z[j]);
      const double den = m == 1 ? base : base * base;
      row += g.w[j] * num / den;
    }
    return g.w[i] * row;
  });
}

}  // namespace

EnergyReport cylinder_energy(const DiscreteMap& f, double s, double p, const CylinderOptions& c) {
  const Domain& d = f.mesh();
  const int m = d.dim;
  if (d.kind != DomainKind::sphere || (m != 1 && m != 2))
    throw InvalidArgument("cylinder_energy needs an S^1 or S^2 domain");
  if (std::fabs(s * p - m) > 1e-9) throw InvalidArgument("cylinder_energy requires sp = m");
  if (!(c.band > 0.0)) throw InvalidArgument("cylinder_energy: band must be positive");
  int nz = c.nz;
  double ds = c.ds;
  if (m == 2) {
    if (nz <= 0) nz = 96;
    if (ds <= 0.0) ds = 2.0 * std::numbers::pi / nz;
  } else if (ds <= 0.0) {
    ds = std::max(0.25 * d.spacing(), 1e-3);
  }
  const CylinderGrid g = build_cylinder(f, c.band, ds, nz);
  EnergyReport r;
  r.value = cylinder_sum(g, m, p, c.threads, r.pairs);
  r.exclusion_radius = 0.5 * ds;

  // Pairs with a point beyond the band: both caps have |x - pole| small.
  const double cap_angle = std::acos(std::tanh(c.band));
  const double cap_measure =
      m == 1 ? 4.0 * cap_angle : 4.0 * std::numbers::pi * (1.0 - std::tanh(c.band));
  // Chordal Lipschitz bound from cell edges (geodesic ratio bounds it).
  const double lip = std::max(discrete_lipschitz(f), 1e-300);
  r.tail_bound = 2.0 * cap_measure * std::pow(lip, p) * sphere_chord_moment(m, p - 2.0 * m);

  if (c.estimate_error) {
    const CylinderGrid h = build_cylinder(f, c.band, 2.0 * ds, m == 2 ? nz / 2 : nz);
    std::uint64_t unused = 0;
    r.error_estimate = std::fabs(r.value - cylinder_sum(h, m, p, c.threads, unused));
  } else {
    r.error_estimate = std::nan("");
  }
  if (r.tail_bound > 0.1 * r.value && r.value > 0.0)
    throw InvalidArgument("cylinder_energy: band too small, tail bound " +
                          std::to_string(r.tail_bound) + " exceeds 10% of the value");
  return r;
}

}  // namespace bubblescope
