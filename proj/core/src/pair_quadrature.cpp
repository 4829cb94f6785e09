#include "bubblescope/pair_quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_set>
#include <vector>

#include "bubblescope/error.hpp"
#include "bubblescope/parallel.hpp"

namespace bubblescope {

namespace {

// s^(a/2) for a squared quantity s, with fast paths for small integer a.
struct PowerOfSquare {
  double half;
  int mode;
  explicit PowerOfSquare(double a) : half(0.5 * a) {
    if (a == 0.0) mode = 0;
    else if (a == 1.0) mode = 1;
    else if (a == 2.0) mode = 2;
    else if (a == 3.0) mode = 3;
    else if (a == 4.0) mode = 4;
    else if (a == 6.0) mode = 6;
    else mode = -1;
  }
  double operator()(double s) const noexcept {
    switch (mode) {
      case 0: return 1.0;
      case 1: return std::sqrt(s);
      case 2: return s;
      case 3: return s * std::sqrt(s);
      case 4: return s * s;
      case 6: return s * s * s;
      default: return std::pow(s, half);
    }
  }
};

// x^p for x >= 0.
struct Power {
  double p;
  int mode;
  explicit Power(double e) : p(e) {
    if (e == 0.0) mode = 0;
    else if (e == 1.0) mode = 1;
    else if (e == 2.0) mode = 2;
    else mode = -1;
  }
  double operator()(double x) const noexcept {
    switch (mode) {
      case 0: return 1.0;
      case 1: return x;
      case 2: return x * x;
      default: return std::pow(x, p);
    }
  }
};

struct ChordPowerNum {
  static constexpr bool kTruncated = false;
  PowerOfSquare pw;
  double operator()(const Point& a, const Point& b) const noexcept { return pw(distance2(a, b)); }
};

struct TruncatedNum {
  static constexpr bool kTruncated = true;
  Power pw;
  double eps;
  double chord_threshold2;  // squared chord equivalent of eps on spheres
  bool sphere;
  bool geodesic;
  const Target* target;
  double operator()(const Point& a, const Point& b) const noexcept {
    if (sphere) {
      const double c2 = distance2(a, b);
      if (!(c2 > chord_threshold2)) return 0.0;
      if (pw.mode == 0) return 1.0;
      const double c = std::sqrt(c2);
      const double d = geodesic ? 2.0 * std::asin(std::min(1.0, 0.5 * c)) : c;
      return pw(d - eps);
    }
    const double d = geodesic ? target->geodesic_unchecked(a, b) : distance(a, b);
    if (!(d > eps)) return 0.0;
    return pw(d - eps);
  }
};

struct ChordDist2 {
  double operator()(const Point& a, const Point& b) const noexcept { return distance2(a, b); }
};
struct GeodesicSphereDist2 {
  double operator()(const Point& a, const Point& b) const noexcept {
    const double g = 2.0 * std::asin(std::min(1.0, 0.5 * distance(a, b)));
    return g * g;
  }
};
struct TorusDist2 {
  int dim;
  double operator()(const Point& a, const Point& b) const noexcept {
    double s = 0.0;
    for (int i = 0; i < dim; ++i) {
      double d = std::fabs(a[i] - b[i]);
      d -= std::floor(d);
      d = std::min(d, 1.0 - d);
      s += d * d;
    }
    return s;
  }
};

template <class Num, class Dist>
struct Integrand {
  Num num;
  Dist dist2;
  PowerOfSquare den;
  static constexpr bool kTruncated = Num::kTruncated;
  double kernel(const Point& x, const Point& y, double n) const noexcept {
    if (n == 0.0) return 0.0;
    const double d2 = dist2(x, y);
    if (d2 == 0.0) return 0.0;
    return n / den(d2);
  }
  double operator()(const Point& x, const Point& y, const Point& fx, const Point& fy) const noexcept {
    return kernel(x, y, num(fx, fy));
  }
};

struct CellGeometry {
  std::vector<Point> centroid;
  std::vector<double> radius;
  std::vector<double> measure;
  std::vector<std::vector<std::uint32_t>> incident;  // vertex -> cells
};

template <class G>
class Engine {
 public:
  Engine(const DiscreteMap& f, G g, const QuadratureOptions& o)
      : f_(f), d_(f.mesh()), g_(g), opt_(o) {
    if (opt_.refine_depth > 0) {
      if (d_.corners == 0) throw InvalidArgument("refined quadrature needs cells");
      build_geometry();
    }
  }

  PairSum run() {
    const std::size_t n = d_.size();
    std::atomic<std::uint64_t> evals{0};
    PairSum out;
    out.value = parallel_sum(n, opt_.threads, [&](std::size_t i) {
      std::uint64_t local = 0;
      const double r = row(i, local);
      evals.fetch_add(local, std::memory_order_relaxed);
      return r;
    });
    out.evaluations = evals.load();
    out.exclusion_radius = 0.5 * d_.spacing() / std::ldexp(1.0, opt_.refine_depth);
    return out;
  }

 private:
  double row(std::size_t i, std::uint64_t& evals) const {
    const Point& x = d_.vertices[i];
    const Point& fx = f_.values[i];
    const std::size_t n = d_.size();
    const bool refine = opt_.refine_depth > 0;
    // For truncated numerators, remember where the truncation is active so
    // that cells crossing the cutoff can be refined.
    std::vector<unsigned char> active;
    if (refine && G::kTruncated) active.assign(n, 0);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double num = g_.num(fx, f_.values[j]);
      if (!active.empty()) active[j] = num > 0.0;
      s += d_.weights[j] * g_.kernel(x, d_.vertices[j], num);
    }
    evals += n - 1;
    if (!refine) return d_.weights[i] * s;
    std::vector<std::uint32_t> cells = near_cells(i);
    if (!active.empty()) {
      for (std::size_t c = 0; c < d_.cell_count(); ++c) {
        const std::uint32_t* v = d_.cell(c);
        bool any_on = false, any_off = false;
        for (int k = 0; k < d_.corners; ++k) (active[v[k]] ? any_on : any_off) = true;
        if (any_on && any_off) cells.push_back(static_cast<std::uint32_t>(c));
      }
      std::sort(cells.begin(), cells.end());
      cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }
    // Replace the vertex rule on selected cells by an adaptive rule.
    double corr = 0.0;
    for (std::uint32_t c : cells) {
      const std::uint32_t* v = d_.cell(c);
      Point P[4], F[4];
      for (int k = 0; k < d_.corners; ++k) {
        P[k] = unwrap_near(d_, d_.vertices[v[k]], d_.vertices[v[0]]);
        F[k] = f_.values[v[k]];
      }
      const double share = geom_.measure[c] / d_.corners;
      for (int k = 0; k < d_.corners; ++k)
        if (v[k] != i) corr -= share * g_(x, P[k], fx, F[k]);
      corr += adapt(x, fx, P, F, geom_.measure[c], 0, evals);
    }
    return d_.weights[i] * (s + corr);
  }

  std::vector<std::uint32_t> near_cells(std::size_t i) const {
    const Point& x = d_.vertices[i];
    std::vector<std::uint32_t> out;
    std::unordered_set<std::uint32_t> seen;
    std::vector<std::uint32_t> frontier(geom_.incident[i].begin(), geom_.incident[i].end());
    for (std::uint32_t c : frontier) seen.insert(c);
    while (!frontier.empty()) {
      const std::uint32_t c = frontier.back();
      frontier.pop_back();
      if (!(d_.distance(x, geom_.centroid[c]) < opt_.refine_kappa * geom_.radius[c])) continue;
      out.push_back(c);
      const std::uint32_t* v = d_.cell(c);
      for (int k = 0; k < d_.corners; ++k)
        for (std::uint32_t c2 : geom_.incident[v[k]])
          if (seen.insert(c2).second) frontier.push_back(c2);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Point mid_value(const Point& a, const Point& b) const {
    if (auto r = f_.target.try_retract(0.5 * (a + b))) return *r;
    return a;
  }
  Point mid_value4(const Point* F) const {
    if (auto r = f_.target.try_retract(0.25 * (F[0] + F[1] + F[2] + F[3]))) return *r;
    return F[0];
  }

  double adapt(const Point& x, const Point& fx, const Point* P, const Point* F, double measure,
               int depth, std::uint64_t& evals) const {
    const int nc = d_.corners;
    Point centroid{};
    for (int k = 0; k < nc; ++k) centroid += P[k];
    centroid = (1.0 / nc) * centroid;
    if (d_.kind == DomainKind::sphere) centroid = normalized(centroid);
    double radius = 0.0;
    for (int k = 0; k < nc; ++k) radius = std::max(radius, distance(centroid, P[k]));
    bool split = false;
    if (depth < opt_.refine_depth) {
      split = d_.distance(x, centroid) < opt_.refine_kappa * radius;
      if (!split && G::kTruncated) {
        bool any_on = false, any_off = false;
        for (int k = 0; k < nc; ++k) (g_.num(fx, F[k]) > 0.0 ? any_on : any_off) = true;
        split = any_on && any_off;
      }
    }
    if (split) {
      double s = 0.0;
      auto child = [&](const Point* cp, const Point* cf) {
        s += adapt(x, fx, cp, cf, cell_measure(d_, cp), depth + 1, evals);
      };
      if (nc == 2) {
        const Point m = domain_midpoint(d_, P[0], P[1]);
        const Point fm = mid_value(F[0], F[1]);
        const Point a[2] = {P[0], m}, fa[2] = {F[0], fm};
        const Point b[2] = {m, P[1]}, fb[2] = {fm, F[1]};
        child(a, fa);
        child(b, fb);
      } else if (nc == 3) {
        const Point ab = domain_midpoint(d_, P[0], P[1]), bc = domain_midpoint(d_, P[1], P[2]),
                    ca = domain_midpoint(d_, P[2], P[0]);
        const Point fab = mid_value(F[0], F[1]), fbc = mid_value(F[1], F[2]),
                    fca = mid_value(F[2], F[0]);
        const Point t0[3] = {P[0], ab, ca}, f0[3] = {F[0], fab, fca};
        const Point t1[3] = {P[1], bc, ab}, f1[3] = {F[1], fbc, fab};
        const Point t2[3] = {P[2], ca, bc}, f2[3] = {F[2], fca, fbc};
        const Point t3[3] = {ab, bc, ca}, f3[3] = {fab, fbc, fca};
        child(t0, f0);
        child(t1, f1);
        child(t2, f2);
        child(t3, f3);
      } else {
        // Square with corners (00, 10, 11, 01).
        const Point e0 = 0.5 * (P[0] + P[1]), e1 = 0.5 * (P[1] + P[2]), e2 = 0.5 * (P[2] + P[3]),
                    e3 = 0.5 * (P[3] + P[0]), cc = 0.25 * (P[0] + P[1] + P[2] + P[3]);
        const Point g0 = mid_value(F[0], F[1]), g1 = mid_value(F[1], F[2]),
                    g2 = mid_value(F[2], F[3]), g3 = mid_value(F[3], F[0]), gc = mid_value4(F);
        const Point q0[4] = {P[0], e0, cc, e3}, h0[4] = {F[0], g0, gc, g3};
        const Point q1[4] = {e0, P[1], e1, cc}, h1[4] = {g0, F[1], g1, gc};
        const Point q2[4] = {cc, e1, P[2], e2}, h2[4] = {gc, g1, F[2], g2};
        const Point q3[4] = {e3, cc, e2, P[3]}, h3[4] = {g3, gc, g2, F[3]};
        child(q0, h0);
        child(q1, h1);
        child(q2, h2);
        child(q3, h3);
      }
      return s;
    }
    const double share = measure / nc;
    double s = 0.0;
    for (int k = 0; k < nc; ++k) {
      if (d_.distance(x, P[k]) == 0.0) continue;
      s += share * g_(x, P[k], fx, F[k]);
    }
    evals += static_cast<std::uint64_t>(nc);
    return s;
  }

  void build_geometry() {
    const std::size_t nc = d_.cell_count();
    geom_.centroid.resize(nc);
    geom_.radius.resize(nc);
    geom_.measure.resize(nc);
    geom_.incident.assign(d_.size(), {});
    for (std::size_t c = 0; c < nc; ++c) {
      const std::uint32_t* v = d_.cell(c);
      Point P[4];
      Point cen{};
      for (int k = 0; k < d_.corners; ++k) {
        P[k] = unwrap_near(d_, d_.vertices[v[k]], d_.vertices[v[0]]);
        cen += P[k];
        geom_.incident[v[k]].push_back(static_cast<std::uint32_t>(c));
      }
      cen = (1.0 / d_.corners) * cen;
      if (d_.kind == DomainKind::sphere) cen = normalized(cen);
      double r = 0.0;
      for (int k = 0; k < d_.corners; ++k) r = std::max(r, distance(cen, P[k]));
      geom_.centroid[c] = cen;
      geom_.radius[c] = r;
      geom_.measure[c] = cell_measure(d_, P);
    }
  }

  const DiscreteMap& f_;
  const Domain& d_;
  G g_;
  QuadratureOptions opt_;
  CellGeometry geom_;
};

template <class Num>
PairSum dispatch_domain(const DiscreteMap& f, Num num, const PairKernel& k,
                        const QuadratureOptions& o) {
  const Domain& d = f.mesh();
  const PowerOfSquare den(k.alpha);
  if (d.kind == DomainKind::torus) {
    Engine e(f, Integrand<Num, TorusDist2>{num, TorusDist2{d.dim}, den}, o);
    return e.run();
  }
  if (d.kind == DomainKind::sphere && k.domain_mode == DistanceMode::geodesic) {
    Engine e(f, Integrand<Num, GeodesicSphereDist2>{num, {}, den}, o);
    return e.run();
  }
  Engine e(f, Integrand<Num, ChordDist2>{num, {}, den}, o);
  return e.run();
}

}  // namespace

PairSum pair_integral_once(const DiscreteMap& f, const PairKernel& k, const QuadratureOptions& o) {
  if (f.values.size() != f.mesh().size()) throw InvalidArgument("map and mesh sizes differ");
  if (k.numerator == PairKernel::Numerator::chord_power) {
    return dispatch_domain(f, ChordPowerNum{PowerOfSquare(k.p)}, k, o);
  }
  const bool sphere = f.target.kind() == TargetKind::sphere;
  const double c = 2.0 * std::sin(0.5 * std::min(k.eps, std::numbers::pi));
  const bool geo = k.target_mode == TargetDistanceMode::geodesic;
  const double thr = geo ? c : k.eps;
  TruncatedNum num{Power(k.p), k.eps, k.eps >= 0.0 ? thr * thr : -1.0, sphere, geo, &f.target};
  if (sphere && geo && k.eps >= std::numbers::pi) num.chord_threshold2 = 4.0;
  return dispatch_domain(f, num, k, o);
}

PairSum pair_integral(const DiscreteMap& f, const PairKernel& k, const QuadratureOptions& o) {
  PairSum out = pair_integral_once(f, k, o);
  if (!o.estimate_error) {
    out.error_estimate = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  if (o.refine_depth > 0) {
    QuadratureOptions half = o;
    half.refine_depth -= 1;
    out.error_estimate = std::fabs(out.value - pair_integral_once(f, k, half).value);
    return out;
  }
  if (auto c = coarsen(f.mesh())) {
    const DiscreteMap g = restrict_to(f, *c);
    out.error_estimate = std::fabs(out.value - pair_integral_once(g, k, o).value);
  } else {
    out.error_estimate = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace bubblescope
