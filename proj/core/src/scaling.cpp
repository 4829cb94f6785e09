#include "bubblescope/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "bubblescope/error.hpp"

namespace bubblescope {

EnergyReport truncated_energy(const DiscreteMap& f, double eps, double p,
                              const QuadratureOptions& q) {
  GapParams gp;
  gp.eps = eps;
  gp.p = p;
  gp.mode = TargetDistanceMode::geodesic;
  return gap_potential(f, gp, q);
}

double halving_factor(int m, double p) {
  return std::pow(2.0, std::max(p - 1.0, 0.0) - (m - 1));
}

HalvingResult halving_ratio(const DiscreteMap& f, double eps, double p, const QuadratureOptions& q,
                            double slack) {
  const Domain& d = f.mesh();
  if (d.kind == DomainKind::torus) throw InvalidArgument("halving_ratio needs a convex patch or a sphere");
  HalvingResult r;
  r.j_eps = truncated_energy(f, eps, p, q).value;
  r.j_half = truncated_energy(f, 0.5 * eps, p, q).value;
  r.bound = halving_factor(d.dim, p) * (1.0 + slack);
  if (r.j_half == 0.0) {
    r.vacuous = true;
    r.pass = true;
    return r;
  }
  r.ratio = r.j_eps / r.j_half;
  r.pass = r.ratio <= r.bound;
  return r;
}

double resolvable_gap(const DiscreteMap& f, int refine_depth) {
  const Domain& d = f.mesh();
  double gap = 0.0;
  if (d.corners == 0) {
    // Point clouds: nearest-neighbour value gaps are not available; use the
    // Lipschitz bound times the spacing.
    gap = discrete_lipschitz(f) * d.spacing();
  } else {
    for (std::size_t c = 0; c < d.cell_count(); ++c) {
      const std::uint32_t* v = d.cell(c);
      for (int a = 0; a < d.corners; ++a) {
        const int b = (a + 1) % d.corners;
        gap = std::max(gap, f.target.geodesic_unchecked(f.values[v[a]], f.values[v[b]]));
      }
    }
  }
  return gap / std::ldexp(1.0, refine_depth);
}

std::vector<ScalingRow> scaling_curve(const DiscreteMap& f, double p,
                                      const std::vector<double>& eps_list,
                                      const QuadratureOptions& q) {
  const double gap = resolvable_gap(f, q.refine_depth);
  for (double e : eps_list)
    if (e < 3.0 * gap)
      throw ResolutionError("eps = " + std::to_string(e) + " is below 3x the resolvable gap " +
                            std::to_string(gap));
  std::vector<ScalingRow> rows;
  for (double e : eps_list) {
    const EnergyReport r = truncated_energy(f, e, p, q);
    rows.push_back({e, r.value, r.error_estimate});
  }
  return rows;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw InvalidArgument("fit_slope needs two or more points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double loglog_slope(const std::vector<ScalingRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    if (!(r.value > 0.0)) throw InvalidArgument("loglog_slope: nonpositive value");
    x.push_back(std::log(r.eps));
    y.push_back(std::log(r.value));
  }
  return fit_slope(x, y);
}

double log_growth_slope(const std::vector<ScalingRow>& rows) {
  std::vector<double> x, y;
  for (const auto& r : rows) {
    x.push_back(std::log(1.0 / r.eps));
    y.push_back(r.value);
  }
  return fit_slope(x, y);
}

PQComparison compare_pq(const DiscreteMap& f, double p, double q, double eps, double eta,
                        const QuadratureOptions& opts) {
  const int m = f.mesh().dim;
  if (m < 2) throw InvalidArgument("compare_pq needs m >= 2");
  if (!(p < m)) throw InvalidArgument("compare_pq: the estimate fails for p >= m");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("compare_pq: eta must lie in (0,1)");
  PQComparison c;
  c.lhs = truncated_energy(f, eps, p, opts).value;
  c.rhs = std::pow(eps, p - q) * truncated_energy(f, eta * eps, q, opts).value;
  if (c.rhs == 0.0) {
    c.vacuous = true;
    return c;
  }
  c.ratio = c.lhs / c.rhs;
  return c;
}

TruncatedPowerCheck truncated_power_bound_check(
    double p, double q, double eta, const std::vector<std::pair<double, double>>& grid) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidArgument("eta must lie in (0,1)");
  if (!(p > 0.0) || !(q >= 0.0)) throw InvalidArgument("need p > 0 and q >= 0");
  boost::math::quadrature::tanh_sinh<double> integrator;
  TruncatedPowerCheck out;
  for (const auto& [s, t] : grid) {
    if (!(s >= 0.0 && t >= s)) throw InvalidArgument("grid points need 0 <= s <= t");
    if (s == 0.0 && q >= p) {
      out.excluded.emplace_back(s, t);
      continue;
    }
    ++out.evaluated;
    const double lhs = std::pow(t - s, p);
    if (lhs == 0.0) continue;
    const double a = eta * s;
    const auto g = [&](double r) { return std::pow(t - r, q) * std::pow(r, p - q - 1.0); };
    const double rhs = integrator.integrate(g, a, t);
    const double ratio = lhs / rhs;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax_s = s;
      out.argmax_t = t;
    }
  }
  return out;
}

std::vector<std::pair<double, double>> ratio_grid(const std::vector<double>& s_values,
                                                  double max_ratio, int count) {
  std::vector<std::pair<double, double>> g;
  for (double s : s_values)
    for (int i = 0; i < count; ++i) {
      const double r = count == 1 ? 1.0 : std::pow(max_ratio, static_cast<double>(i) / (count - 1));
      g.emplace_back(s, s * r);
    }
  return g;
}

}  // namespace bubblescope
