#include "bubblescope/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <set>
#include <utility>

#include "bubblescope/constructions.hpp"
#include "bubblescope/error.hpp"
#include "bubblescope/parallel.hpp"
#include "bubblescope/random.hpp"
#include "bubblescope/scaling.hpp"
#include "bubblescope/topo.hpp"

namespace bubblescope {

namespace {

constexpr double kPi = std::numbers::pi;

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double mean(const std::vector<double>& v) {
  return pairwise_sum(v) / static_cast<double>(v.size());
}

}  // namespace

double HurewiczGapTable::spread() const noexcept {
  return min_ratio > 0.0 ? max_ratio / min_ratio : 1.0;
}

double hurewicz_magnitude(const DiscreteMap& f) {
  if (f.target.kind() == TargetKind::clifford_torus) {
    const auto [a, b] = hurewicz_torus_pair(f);
    return static_cast<double>(std::labs(a) + std::labs(b));
  }
  return std::fabs(hurewicz_pairing(f, FormSpec::sphere_volume(f.target.dim())));
}

HurewiczGapTable hurewicz_gap_check(const std::vector<HurewiczMember>& family,
                                    const std::vector<double>& eps_list, HurewiczGapMode mode,
                                    const QuadratureOptions& q) {
  HurewiczGapTable t;
  t.mode = mode;
  bool any = false;
  for (const double eps : eps_list) {
    if (!(eps > 0.0)) throw InvalidArgument("hurewicz_gap_check: eps must be positive");
    for (const HurewiczMember& mem : family) {
      const int m = mem.map.mesh().dim;
      if (mode == HurewiczGapMode::scaled && m < 2)
        throw InvalidArgument("scaled Hurewicz estimate needs m >= 2");
      HurewiczRow r;
      r.label = mem.label;
      r.eps = eps;
      r.hurewicz = hurewicz_magnitude(mem.map);
      GapParams gp;
      gp.eps = eps;
      gp.p = mode == HurewiczGapMode::truncated ? 1.0 : 0.0;
      gp.mode = TargetDistanceMode::geodesic;
      r.gap = gap_potential(mem.map, gp, q).value;
      if (mode == HurewiczGapMode::scaled) r.gap *= std::pow(eps, m);
      r.vacuous = std::lround(r.hurewicz) == 0;
      if (!r.vacuous) {
        r.ratio = r.gap > 0.0 ? r.hurewicz / r.gap : std::numeric_limits<double>::infinity();
        if (!any) {
          t.min_ratio = t.max_ratio = r.ratio;
          any = true;
        } else {
          t.min_ratio = std::min(t.min_ratio, r.ratio);
          t.max_ratio = std::max(t.max_ratio, r.ratio);
        }
      }
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

Point hopf_point(const Point& x) noexcept {
  // z1 conj(z2) = (x0 x2 + x1 x3) + i (x1 x2 - x0 x3)
  return make_point(2.0 * (x[0] * x[2] + x[1] * x[3]), 2.0 * (x[1] * x[2] - x[0] * x[3]),
                    x[0] * x[0] + x[1] * x[1] - x[2] * x[2] - x[3] * x[3]);
}

Point hopf_family_point(int k, const Point& x) noexcept {
  return k == 1 ? hopf_point(x) : power_map_point(k, hopf_point(x));
}

HopfMap hopf_family(int k, std::shared_ptr<const Domain> mesh) {
  if (mesh->kind != DomainKind::sphere || mesh->dim != 3)
    throw InvalidArgument("hopf_family needs an S^3 domain");
  std::vector<Point> v;
  v.reserve(mesh->size());
  for (const Point& x : mesh->vertices) v.push_back(hopf_family_point(k, x));
  HopfMap h{make_map(std::move(mesh), Target::sphere(2), std::move(v)), k,
            static_cast<long>(k) * k};
  return h;
}

HopfGapEstimate hopf_gap_mc(int k, double eps, const HopfMCOptions& o) {
  if (!(eps > 0.0 && eps < 2.0)) throw InvalidArgument("hopf_gap_mc: eps must lie in (0, 2)");
  if (o.batches < 2) throw InvalidArgument("hopf_gap_mc: need at least two batches");
  // Hopf map is 2-Lipschitz, the power map max(|k|, 1)-Lipschitz (geodesic),
  // so pairs at angle below theta0 never reach eps.
  const double theta0 = eps / (2.0 * std::max(std::abs(k), 1));
  const double a = std::pow(theta0, -3.0);
  const double b = std::pow(kPi, -3.0);
  const double norm_g = 3.0 / (a - b);
  const double vol = sphere_volume(3);
  const double eps2 = eps * eps;

  const auto nb = static_cast<std::size_t>(o.batches);
  HopfGapEstimate est;
  est.k = k;
  est.batch_means.assign(nb, 0.0);
  parallel_for(nb, o.threads, [&](std::size_t bi) {
    const std::uint64_t lo = o.samples * bi / nb;
    const std::uint64_t hi = o.samples * (bi + 1) / nb;
    Philox rng(o.seed, (static_cast<std::uint64_t>(std::abs(k)) << 32) + bi);
    std::vector<double> terms;
    terms.reserve(hi - lo);
    for (std::uint64_t s = lo; s < hi; ++s) {
      const Point x = rng.on_sphere(3);
      Point u = make_point(rng.normal(), rng.normal(), rng.normal(), rng.normal());
      u = normalized(u - dot(u, x) * x);
      // theta has density proportional to theta^-4 on [theta0, pi]
      const double theta = std::pow(a - rng.uniform() * (a - b), -1.0 / 3.0);
      const Point y = std::cos(theta) * x + std::sin(theta) * u;
      if (distance2(hopf_family_point(k, x), hopf_family_point(k, y)) < eps2) {
        terms.push_back(0.0);
        continue;
      }
      const double chord = 2.0 * std::sin(0.5 * theta);
      const double st = std::sin(theta);
      const double density = norm_g * std::pow(theta, -4.0);
      terms.push_back(vol * 4.0 * kPi * st * st / std::pow(chord, 6) / density);
    }
    est.batch_means[bi] = terms.empty() ? 0.0 : mean(terms);
  });
  est.value = mean(est.batch_means);
  double var = 0.0;
  for (const double v : est.batch_means) var += (v - est.value) * (v - est.value);
  var /= static_cast<double>(nb - 1);
  est.std_error = std::sqrt(var / static_cast<double>(nb));
  return est;
}

HopfGrowth hopf_growth_check(const std::vector<int>& k_list, double eps, const HopfMCOptions& o) {
  if (o.samples < 1'000'000) throw InvalidArgument("hopf_growth_check needs at least 1e6 pairs");
  HopfGrowth g;
  g.samples = o.samples;
  std::set<int> distinct;
  for (const int k : k_list) {
    if (k < 1) throw InvalidArgument("hopf_growth_check: k must be positive");
    distinct.insert(k);
  }
  for (const int k : distinct) g.estimates.push_back(hopf_gap_mc(k, eps, o));
  if (distinct.size() < 2) return g;

  std::vector<double> lx;
  std::vector<double> ly;
  for (const auto& e : g.estimates) {
    if (!(e.value > 0.0)) throw ResolutionError("hopf_growth_check: zero gap estimate");
    lx.push_back(std::log(static_cast<double>(e.k) * e.k));
    ly.push_back(std::log(e.value));
  }
  g.fitted = true;
  g.exponent = fit_slope(lx, ly);

  Philox rng(o.seed, 0xb007ULL << 40);
  std::vector<double> slopes;
  slopes.reserve(static_cast<std::size_t>(o.bootstrap));
  for (int r = 0; r < o.bootstrap; ++r) {
    std::vector<double> ry;
    for (const auto& e : g.estimates) {
      const std::size_t n = e.batch_means.size();
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += e.batch_means[std::min(n - 1, static_cast<std::size_t>(rng.uniform() * n))];
      ry.push_back(std::log(std::max(s / static_cast<double>(n), 1e-300)));
    }
    slopes.push_back(fit_slope(lx, ry));
  }
  g.ci_low = percentile(slopes, 0.025);
  g.ci_high = percentile(slopes, 0.975);
  if (g.ci_width() > 0.3)
    throw ResolutionError("hopf_growth_check: bootstrap interval wider than 0.3; raise samples");
  return g;
}

}  // namespace bubblescope
