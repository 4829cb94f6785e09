#include "scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "bubblescope/bubblescope.hpp"

namespace bubblescope::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

/// Reads keys with defaults and records the effective value of each.
class Params {
 public:
  Params(json in, json& out) : in_(std::move(in)), out_(out) {
    if (!in_.is_object()) throw ConfigError("config must be a JSON object");
  }

  template <class T>
  T get(const std::string& key, T def) {
    T v = std::move(def);
    if (in_.contains(key)) {
      try {
        v = in_.at(key).get<T>();
      } catch (const json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
      }
    }
    out_[key] = v;
    used_.insert(key);
    return v;
  }

  void finish() const {
    for (const auto& item : in_.items())
      if (!used_.contains(item.key())) throw ConfigError("unknown config key '" + item.key() + "'");
  }

 private:
  json in_;
  json& out_;
  std::set<std::string> used_;
};

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row_strings(header); }
  Csv& add(std::initializer_list<std::string> cells) {
    row_strings(std::vector<std::string>(cells));
    return *this;
  }
  [[nodiscard]] std::string text() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::ostringstream out_;
};

std::string num(double x) { return format_double(x); }
std::string num(long x) { return std::to_string(x); }

void check(ScenarioRun& run, std::string name, bool pass, std::string detail) {
  run.assertions.push_back({std::move(name), pass, std::move(detail)});
}

QuadratureOptions quad(const RunOptions& o, int depth = 0, double kappa = 8.0) {
  QuadratureOptions q;
  q.threads = o.threads;
  q.refine_depth = depth;
  q.refine_kappa = kappa;
  return q;
}

std::vector<int> int_range(const std::vector<int>& r, const char* key) {
  if (r.size() != 2 || r[0] > r[1]) throw ConfigError(std::string(key) + " must be [lo, hi]");
  std::vector<int> out;
  for (int k = r[0]; k <= r[1]; ++k) out.push_back(k);
  return out;
}

/// max/min over positive entries; 1 for fewer than two.
double spread_of(const std::vector<double>& v) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  int n = 0;
  for (const double x : v) {
    if (!(x > 0.0)) continue;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
    ++n;
  }
  return n < 2 ? 1.0 : hi / lo;
}

// ---------------------------------------------------------------------------

void degree_gap(Params& P, const RunOptions& o, ScenarioRun& run) {
  const auto include = P.get<std::vector<std::string>>("include", {"s1", "s2"});
  const auto windings = int_range(P.get<std::vector<int>>("winding_range", {-10, 10}), "winding_range");
  const int circle_n = P.get("circle_n", 1024);
  const auto powers = int_range(P.get<std::vector<int>>("power_range", {-3, 3}), "power_range");
  const int level = P.get("icosphere_level", 4);
  const auto gap_eps = P.get<std::vector<double>>("gap_eps", {0.5});
  const double s2_tol = P.get("s2_tolerance", 0.05);
  P.finish();
  const auto has = [&](const char* s) {
    return std::find(include.begin(), include.end(), s) != include.end();
  };

  Csv table({"family", "k", "raw", "rounded", "residual"});
  if (has("s1")) {
    auto circle = share(make_sphere_mesh(1, circle_n));
    bool ok = true;
    double worst = 0.0;
    Csv gaps({"k", "eps", "gap", "ratio"});
    json gap_rows = json::array();
    for (const int k : windings) {
      const DiscreteMap f = winding_map(k, circle);
      const DegreeResult d = degree_s1(f);
      table.add({"winding", num(static_cast<long>(k)), num(d.raw), num(d.rounded), num(d.residual)});
      ok = ok && d.rounded == k && d.residual < 1e-9;
      worst = std::max(worst, d.residual);
      if (k == 0) continue;
      for (const double eps : gap_eps) {
        GapParams gp;
        gp.eps = eps;
        const double lambda = gap_potential(f, gp, quad(o)).value;
        const double ratio = std::abs(k) / lambda;
        gaps.add({num(static_cast<long>(k)), num(eps), num(lambda), num(ratio)});
        gap_rows.push_back({{"k", k}, {"eps", eps}, {"gap", lambda}, {"ratio", ratio}});
      }
    }
    run.results["s1"] = {{"maps", windings.size()}, {"max_residual", worst}, {"gap_table", gap_rows}};
    if (!gap_eps.empty()) run.tables.emplace_back("degree_gap_s1.csv", gaps.text());
    check(run, "s1 winding degree exact", ok,
          "max residual " + fmt(worst) + " over " + std::to_string(windings.size()) + " maps");
  }
  if (has("s2")) {
    auto sphere = share(make_sphere_mesh(2, level));
    bool ok = true;
    double worst = 0.0;
    for (const int k : powers) {
      const DegreeResult d = degree_kronecker_s2(power_map_s2(k, sphere));
      table.add({"power", num(static_cast<long>(k)), num(d.raw), num(d.rounded), num(d.residual)});
      const double err = std::abs(d.raw - k);
      ok = ok && d.rounded == k && err < s2_tol;
      worst = std::max(worst, err);
    }
    run.results["s2"] = {{"maps", powers.size()}, {"max_error", worst}};
    check(run, "s2 power-map degree", ok, "max |raw - k| " + fmt(worst));
  }
  run.tables.emplace_back("degree.csv", table.text());
}

// ---------------------------------------------------------------------------

void scaling(Params& P, const RunOptions& o, ScenarioRun& run) {
  const auto domains = P.get<std::vector<std::string>>("domains", {"sphere1", "sphere2"});
  const double eps_min = P.get("eps_min", 0.02);
  const double eps_max = P.get("eps_max", 0.2);
  const int eps_count = P.get("eps_count", 6);
  const int circle_n = P.get("circle_n", 2048);
  const int level = P.get("icosphere_level", 4);
  const int cube_n = P.get("cube_n", 65);
  const int depth_m1 = P.get("refine_depth_m1", 0);
  const int depth_m2 = P.get("refine_depth_m2", 4);
  const double kappa = P.get("refine_kappa", 8.0);
  const double tol = P.get("slope_tolerance", 0.15);
  P.finish();
  if (eps_count < 2 || !(eps_min > 0.0) || !(eps_max > eps_min))
    throw ConfigError("scaling needs 0 < eps_min < eps_max and eps_count >= 2");
  std::vector<double> eps;
  for (int i = 0; i < eps_count; ++i)
    eps.push_back(eps_min * std::pow(eps_max / eps_min, static_cast<double>(i) / (eps_count - 1)));

  for (const std::string& dom : domains) {
    const int m = (dom == "sphere1" || dom == "cube1") ? 1 : 2;
    const DiscreteMap f = [&] {
      if (dom == "sphere1") return identity_map(share(make_sphere_mesh(1, circle_n)));
      if (dom == "sphere2") return identity_map(share(make_sphere_mesh(2, level)));
      if (dom == "cube1" || dom == "cube2") return flat_identity(share(make_cube_grid(m, cube_n)));
      throw ConfigError("unknown scaling domain '" + dom + "'");
    }();
    const auto rows = scaling_curve(f, 0.0, eps, quad(o, m == 1 ? depth_m1 : depth_m2, kappa));
    const double slope = loglog_slope(rows);
    Csv csv({"eps", "value", "error_estimate"});
    json jr = json::array();
    for (const auto& r : rows) {
      csv.add({num(r.eps), num(r.value), num(r.error_estimate)});
      jr.push_back({{"eps", r.eps}, {"value", r.value}, {"error_estimate", r.error_estimate}});
    }
    run.tables.emplace_back("scaling_" + dom + ".csv", csv.text());
    run.results[dom] = {{"slope", slope}, {"expected", -m}, {"rows", jr}};
    check(run, dom + " log-log slope", std::abs(slope + m) <= tol,
          "slope " + fmt(slope) + " vs " + std::to_string(-m));
  }
}

// ---------------------------------------------------------------------------

void halving(Params& P, const RunOptions& o, ScenarioRun& run) {
  const int maps = P.get("maps", 20);
  const double lip = P.get("lipschitz", 2.0);
  const int grid_n = P.get("grid_n", 33);
  const auto p_list = P.get<std::vector<double>>("p_values", {0.0, 1.0, 2.0});
  const double eps_fraction = P.get("eps_fraction", 0.25);
  const double slack = P.get("slack", 0.05);
  const int max_depth = P.get("max_refine_depth", 4);
  P.finish();
  auto cube = share(make_cube_grid(2, grid_n));
  Csv csv({"map", "eps", "p", "j_eps", "j_half", "ratio", "bound", "vacuous", "pass"});
  bool ok = true;
  int vacuous = 0;
  double worst = 0.0;
  for (int i = 0; i < maps; ++i) {
    Philox rng(o.seed, static_cast<std::uint64_t>(i));
    const DiscreteMap f = random_lipschitz_map(cube, lip, rng);
    // eps scales with the map's range so that neither level is empty
    const double eps = eps_fraction * oscillation(f, o.threads).geodesic;
    int depth = 0;
    while (depth < max_depth && 6.0 * resolvable_gap(f, depth) > eps) ++depth;
    for (const double p : p_list) {
      const HalvingResult h = halving_ratio(f, eps, p, quad(o, depth), slack);
      csv.add({num(static_cast<long>(i)), num(eps), num(p), num(h.j_eps), num(h.j_half), num(h.ratio),
               num(h.bound), h.vacuous ? "1" : "0", h.pass ? "1" : "0"});
      ok = ok && h.pass;
      vacuous += h.vacuous ? 1 : 0;
      if (!h.vacuous) worst = std::max(worst, h.ratio / h.bound);
    }
  }
  run.tables.emplace_back("halving.csv", csv.text());
  run.results["cases"] = maps * static_cast<int>(p_list.size());
  run.results["vacuous"] = vacuous;
  run.results["worst_ratio_over_bound"] = worst;
  check(run, "halving inequality", ok, "worst ratio/bound " + fmt(worst) + ", vacuous " +
                                           std::to_string(vacuous));
}

// ---------------------------------------------------------------------------

void pq_compare(Params& P, const RunOptions& o, ScenarioRun& run) {
  const int grid_n = P.get("grid_n", 65);
  const double p = P.get("p", 1.0);
  const double q = P.get("q", 0.0);
  const double eta = P.get("eta", 0.5);
  const auto eps_list = P.get<std::vector<double>>("eps", {0.05, 0.1, 0.2, 0.4});
  const int depth = P.get("refine_depth", 2);
  const double max_spread = P.get("max_spread", 3.0);
  P.finish();
  const DiscreteMap f = flat_identity(share(make_cube_grid(2, grid_n)));
  Csv csv({"eps", "lhs", "rhs", "ratio"});
  std::vector<double> ratios;
  for (const double e : eps_list) {
    const PQComparison c = compare_pq(f, p, q, e, eta, quad(o, depth));
    csv.add({num(e), num(c.lhs), num(c.rhs), num(c.ratio)});
    if (!c.vacuous) ratios.push_back(c.ratio);
  }
  const double spread = spread_of(ratios);
  run.tables.emplace_back("pq_compare.csv", csv.text());
  run.results["ratios"] = ratios;
  run.results["spread"] = spread;
  check(run, "p-q ratio spread", spread < max_spread, "max/min " + fmt(spread));
}

// ---------------------------------------------------------------------------

void conformal(Params& P, const RunOptions& o, ScenarioRun& run) {
  const int circle_n = P.get("circle_n", 2048);
  const double s1_s = P.get("s1_s", 0.5);
  const double s1_p = P.get("s1_p", 2.0);
  const int level = P.get("icosphere_level", 4);
  const double s2_s = P.get("s2_s", 0.5);
  const double s2_p = P.get("s2_p", 4.0);
  const double dil = P.get("dilation", 2.0);
  const double band = P.get("band", 8.0);
  const int nz = P.get("nz", 0);
  const double ds = P.get("ds", 0.0);
  const int depth = P.get("refine_depth", 0);
  const double tol = P.get("tolerance", 0.03);
  P.finish();
  CylinderOptions co;
  co.band = band;
  co.nz = nz;
  co.ds = ds;
  co.threads = o.threads;
  Csv csv({"map", "sphere", "cylinder", "tail_bound", "rel_diff"});
  const auto compare = [&](const std::string& label, const DiscreteMap& f, double s, double p,
                           double analytic) {
    const EnergyReport es = sobolev_energy(f, s, p, quad(o, depth));
    const EnergyReport ec = cylinder_energy(f, s, p, co);
    const double diff = std::abs(es.value - ec.value);
    csv.add({label, num(es.value), num(ec.value), num(ec.tail_bound), num(diff / es.value)});
    json r = {{"sphere", es.value}, {"sphere_error_estimate", es.error_estimate},
              {"cylinder", ec.value}, {"tail_bound", ec.tail_bound}};
    check(run, label + " sphere vs cylinder", diff <= tol * es.value + ec.tail_bound,
          "sphere " + fmt(es.value) + " cylinder " + fmt(ec.value) + " tail " + fmt(ec.tail_bound));
    if (analytic > 0.0) {
      r["analytic"] = analytic;
      check(run, label + " vs analytic", std::abs(es.value - analytic) <= tol * analytic,
            "sphere " + fmt(es.value) + " analytic " + fmt(analytic));
    }
    run.results[label] = r;
    return es.value;
  };
  auto circle = share(make_sphere_mesh(1, circle_n));
  compare("s1_identity", identity_map(circle), s1_s, s1_p,
          s1_s == 0.5 && s1_p == 2.0 ? 4.0 * kPi * kPi : 0.0);
  auto sphere = share(make_sphere_mesh(2, level));
  const double e_id = compare("s2_identity", identity_map(sphere), s2_s, s2_p, 0.0);
  const double e_dil = compare("s2_dilation", dilation_map(dil, sphere), s2_s, s2_p, 0.0);
  // conformal invariance of the sp = m energy, reported only
  run.results["s2_dilation_vs_identity"] = e_dil / e_id;
  run.tables.emplace_back("conformal.csv", csv.text());
}

// ---------------------------------------------------------------------------

void glue(Params& P, const RunOptions& o, ScenarioRun& run) {
  const auto pairs = P.get<std::vector<std::vector<int>>>("pairs", {{1, 2}, {1, -1}});
  const int circle_n = P.get("circle_n", 1024);
  const double pinch_lambda = P.get("pinch_lambda", 0.5);
  const double s_max = P.get("graded_s_max", 16.0);
  const double ds = P.get("graded_ds", 0.01);
  const auto lambdas = P.get<std::vector<double>>("lambdas", {0.5, 1.0, 2.0, 3.0});
  const double s = P.get("s", 0.5);
  const double p = P.get("p", 2.0);
  const double slack = P.get("slack", 0.1);
  P.finish();
  auto circle = share(make_sphere_mesh(1, circle_n));
  auto graded = share(make_graded_circle(s_max, ds));
  const Point a = make_point(0.0, 1.0);
  Csv csv({"k_plus", "k_minus", "lambda", "energy", "bound", "degree"});
  for (const auto& pr : pairs) {
    if (pr.size() != 2) throw ConfigError("glue pairs must have two entries");
    const DiscreteMap w_plus = winding_map(pr[0], circle);
    const DiscreteMap w_minus = winding_map(pr[1], circle);
    const DiscreteMap f_plus = pinch(w_plus, MapSampler(w_plus)(-a), pinch_lambda);
    const DiscreteMap f_minus = pinch(w_minus, MapSampler(w_minus)(a), pinch_lambda);
    const Point c_plus = MapSampler(f_plus)(-a);
    const Point c_minus = MapSampler(f_minus)(a);
    const TargetPath gamma = geodesic_path(f_plus.target, c_minus, c_plus);
    const double e_plus = sobolev_energy(f_plus, s, p, quad(o)).value;
    const double e_minus = sobolev_energy(f_minus, s, p, quad(o)).value;
    const double bound = (e_plus + e_minus) * (1.0 + slack);
    const std::string tag = std::to_string(pr[0]) + "," + std::to_string(pr[1]);
    double best = std::numeric_limits<double>::infinity();
    bool additive = true;
    json rows = json::array();
    for (const double lam : lambdas) {
      const GlueResult g = glue_cylinder(f_plus, f_minus, gamma, lam, graded);
      const double e = sobolev_energy(g.map, s, p, quad(o)).value;
      const long deg = degree_s1(g.map).rounded;
      additive = additive && deg == pr[0] + pr[1];
      best = std::min(best, e);
      csv.add({num(static_cast<long>(pr[0])), num(static_cast<long>(pr[1])), num(lam), num(e),
               num(bound), num(deg)});
      rows.push_back({{"lambda", lam}, {"energy", e}, {"degree", deg}});
    }
    run.results["pair_" + tag] = {{"e_plus", e_plus}, {"e_minus", e_minus}, {"min_energy", best},
                                  {"rows", rows}};
    check(run, "glue (" + tag + ") energy bound", best <= bound,
          "min E(g) " + fmt(best) + " vs " + fmt(e_plus) + " + " + fmt(e_minus) + " + " +
              fmt(100 * slack) + "%");
    check(run, "glue (" + tag + ") degree additivity", additive, "");
  }
  run.tables.emplace_back("glue.csv", csv.text());
}

// ---------------------------------------------------------------------------

void extension_bound(Params& P, const RunOptions& o, ScenarioRun& run) {
  const int circle_n = P.get("circle_n", 1024);
  const int level = P.get("icosphere_level", 5);
  const int points = P.get("points", 200);
  const double mass_radius = P.get("mass_radius", 0.9);
  const double mass_tol = P.get("mass_tolerance", 0.01);
  const double bdry_radius = P.get("boundary_radius", 0.999);
  const double bdry_tol = P.get("boundary_tolerance", 0.05);
  const double lip_radius = P.get("lipschitz_radius", 0.95);
  const auto windings = P.get<std::vector<int>>("measure_windings", {1, 2, 3, 4, 5, 6});
  const double delta = P.get("delta", 0.5);
  const double eps = P.get("eps", 0.25);
  const double band = P.get("band", 4.0);
  P.finish();
  auto circle = share(make_sphere_mesh(1, circle_n));
  auto sphere = share(make_sphere_mesh(2, level));
  Philox rng(o.seed, 0x7e5);

  double mass_err = 0.0;
  for (const auto& mesh : {circle, sphere})
    for (int i = 0; i < points; ++i) {
      const Point z = rng.in_ball(mesh->dim + 1, mass_radius);
      mass_err = std::max(mass_err, std::abs(1.0 - kernel_mass(*mesh, z)));
    }
  run.results["mass_max_error"] = mass_err;
  check(run, "kernel mass", mass_err < mass_tol, "max |1 - mass| " + fmt(mass_err));

  double bdry_err = 0.0;
  for (const auto& mesh : {circle, sphere}) {
    const ExtensionField F(identity_map(mesh));
    for (int i = 0; i < points; ++i) {
      const Point u = rng.on_sphere(mesh->dim);
      bdry_err = std::max(bdry_err, distance(F.evaluate(bdry_radius * u).value, u));
    }
  }
  run.results["boundary_max_error"] = bdry_err;
  check(run, "boundary trace", bdry_err < bdry_tol, "sup error " + fmt(bdry_err));

  std::vector<std::pair<std::string, DiscreteMap>> lip_maps = {
      {"winding3", winding_map(3, circle)},
      {"s2_identity", identity_map(sphere)},
      {"s2_power2", power_map_s2(2, sphere)}};
  bool lip_ok = true;
  json lip = json::object();
  for (const auto& [label, f] : lip_maps) {
    const ExtensionField F(f);
    std::vector<PoincarePoint> zs;
    for (int i = 0; i < points; ++i) zs.push_back(rng.in_ball(f.mesh().dim + 1, lip_radius));
    const LipschitzReport r = lipschitz_check(F, zs);
    lip[label] = {{"max_norm", r.max_norm}, {"bound", r.bound}};
    lip_ok = lip_ok && r.pass;
  }
  run.results["lipschitz"] = lip;
  check(run, "hyperbolic Lipschitz bound", lip_ok, lip.dump());

  Csv csv({"k", "measure", "gap", "ratio"});
  std::vector<double> ratios;
  LatticeSpec ls;
  ls.threads = o.threads;
  for (const int k : windings) {
    const ExtensionField F(winding_map(k, circle));
    const MeasureBound mb = measure_bound_check(F, delta, eps, ls, quad(o));
    csv.add({num(static_cast<long>(k)), num(mb.measure), num(mb.gap), num(mb.ratio)});
    if (!mb.vacuous) ratios.push_back(mb.ratio);
  }
  const double spread = spread_of(ratios);
  run.tables.emplace_back("measure_bound.csv", csv.text());
  run.results["measure_ratios"] = ratios;
  check(run, "singular measure vs gap band", spread <= band, "max/min " + fmt(spread));
}

// ---------------------------------------------------------------------------

std::vector<Ball> random_balls(Space space, Philox& rng) {
  const int n = 2 + static_cast<int>(rng.uniform() * 11);
  std::vector<Ball> out;
  for (int i = 0; i < n; ++i) {
    Ball b;
    b.space = space;
    if (space == Space::euclidean) {
      b.center = make_point(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      b.radius = rng.uniform(0.02, 0.4);
    } else {
      b.center = rng.in_ball(2, 0.9);
      b.radius = rng.uniform(0.05, 1.0);
    }
    out.push_back(b);
  }
  return out;
}

bool ball_contains(const Ball& b, const Point& x) {
  return b.space == Space::euclidean ? distance(b.center, x) <= b.radius
                                     : poincare_distance(b.center, x) <= b.radius;
}

Point sample_in_ball(const Ball& b, Philox& rng) {
  if (b.space == Space::euclidean) return b.center + rng.in_ball(2, b.radius);
  const EuclideanSphere e = hyperbolic_sphere(b.center, b.radius, 2);
  return e.center + rng.in_ball(2, e.radius);
}

void merge_part(const json& cfg, const RunOptions& o, ScenarioRun& run) {
  const int trials = cfg.at("trials");
  const int cover = cfg.at("coverage_points");
  json res = json::object();
  for (const Space space : {Space::euclidean, Space::poincare}) {
    Philox rng(o.seed, space == Space::euclidean ? 0x3e1 : 0x3e2);
    long disjoint_fail = 0, sum_fail = 0, misses = 0, merges = 0;
    for (int t = 0; t < trials; ++t) {
      const auto balls = random_balls(space, rng);
      const auto merged = merge_balls(balls, space);
      merges += static_cast<long>(balls.size() - merged.size());
      for (std::size_t i = 0; i < merged.size(); ++i)
        for (std::size_t j = i + 1; j < merged.size(); ++j)
          if (!(space_distance(space, merged[i], merged[j]) > merged[i].radius + merged[j].radius))
            ++disjoint_fail;
      double before = 0.0, after = 0.0;
      for (const Ball& b : balls) before += b.radius;
      for (const Ball& b : merged) after += b.radius;
      if (after > before) ++sum_fail;
      for (int s = 0; s < cover; ++s) {
        const Ball& b = balls[std::min(balls.size() - 1,
                                       static_cast<std::size_t>(rng.uniform() * balls.size()))];
        const Point x = sample_in_ball(b, rng);
        if (std::none_of(merged.begin(), merged.end(),
                         [&](const Ball& mb) { return ball_contains(mb, x); }))
          ++misses;
      }
    }
    const std::string tag = to_string(space);
    res[tag] = {{"trials", trials}, {"merges", merges}, {"disjointness_failures", disjoint_fail},
                {"radius_sum_failures", sum_fail}, {"coverage_misses", misses}};
    check(run, tag + " merge disjoint", disjoint_fail == 0, std::to_string(disjoint_fail) + " failures");
    check(run, tag + " merge radius sum", sum_fail == 0, std::to_string(sum_fail) + " failures");
    check(run, tag + " merge coverage", misses == 0,
          std::to_string(misses) + " misses of " + std::to_string(static_cast<long>(trials) * cover));
  }
  run.results["merge"] = res;
}

void horoball_part(const json& cfg, const RunOptions& o, ScenarioRun& run) {
  const int trials = cfg.at("trials");
  const double tol = cfg.at("tolerance");
  Philox rng(o.seed, 0x4b0);
  long increase = 0, absorb_only = 0, drift = 0, absorbed = 0;
  double worst_drift = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng.uniform() * 9);
    std::vector<Ball> balls;
    double before = 0.0;
    const double T = rng.uniform(0.5, 2.0);
    for (int i = 0; i < n; ++i) {
      Ball b;
      b.space = Space::mstar;
      b.center = make_point(rng.uniform());
      b.height = rng.uniform(0.05, 1.0);
      b.radius = rng.uniform(0.05, 0.8);
      before += b.radius;
      balls.push_back(b);
    }
    before += 0.5 * std::log(1.0 / T);
    const HoroballMerge h = merge_with_horoball(balls, T, 1);
    const double after = horoball_quantity(h);
    absorbed += h.absorbed;
    const double scale = tol * std::max(1.0, std::abs(before));
    if (after > before + scale) ++increase;
    if (h.balls.size() + static_cast<std::size_t>(h.absorbed) == balls.size()) {
      ++absorb_only;
      worst_drift = std::max(worst_drift, std::abs(after - before));
      if (std::abs(after - before) > scale) ++drift;
    }
  }
  run.results["horoball"] = {{"trials", trials}, {"absorbed", absorbed},
                             {"absorb_only_trials", absorb_only}, {"max_drift", worst_drift}};
  check(run, "horoball quantity non-increasing", increase == 0, std::to_string(increase) + " increases");
  check(run, "horoball absorption conserves quantity", drift == 0,
        "max drift " + fmt(worst_drift) + " over " + std::to_string(absorb_only) + " trials");
}

void pipeline_part(const json& cfg, const RunOptions& o, ScenarioRun& run) {
  const auto windings = int_range(cfg.at("winding_range").get<std::vector<int>>(), "winding_range");
  const int circle_n = cfg.at("circle_n");
  const int max_caps = cfg.at("max_caps");
  const double cap_radius = cfg.at("cap_radius");
  const auto powers = int_range(cfg.at("power_range").get<std::vector<int>>(), "power_range");
  const int level = cfg.at("icosphere_level");
  const double sigma_m2 = cfg.at("sigma_over_rho_m2");
  const double eps = cfg.at("gap_eps");
  const double band = cfg.at("band");

  auto circle = share(make_sphere_mesh(1, circle_n));
  auto sphere = share(make_sphere_mesh(2, level));
  Csv csv({"family", "label", "expected", "total", "sum", "count", "gap", "ratio"});
  json res = json::object();
  const auto family = [&](const std::string& fam,
                          const std::vector<std::pair<std::string, std::pair<long, DiscreteMap>>>& maps) {
    bool additive = true;
    std::vector<double> ratios;
    long violations = 0;
    json rows = json::array();
    for (const auto& [label, em] : maps) {
      const auto& [expected, f] = em;
      DecomposeParams dp;
      dp.lattice.threads = o.threads;
      if (f.mesh().dim == 2) dp.lattice.sigma = sigma_m2 * net_scale(f.target, 2);
      const DecompositionReport r = decompose(f, dp);
      const long total = r.total_degree ? r.total_degree->rounded : 0;
      const bool ok = r.degree_additive() && total == expected;
      additive = additive && ok;
      const CountVsGap cg = count_vs_gap(f, eps, r, quad(o));
      if (!cg.vacuous) ratios.push_back(cg.ratio);
      violations += cg.violation ? 1 : 0;
      csv.add({fam, label, num(expected), num(total), num(r.degree_sum),
               num(static_cast<long>(r.count())), num(cg.lambda), num(cg.ratio)});
      json balls = json::array();
      for (const auto& b : r.bubbles)
        balls.push_back({{"radius", b.ball.radius},
                         {"degree", b.degree ? b.degree->rounded : 0},
                         {"lipschitz_over_sinh", b.lipschitz_over_sinh}});
      rows.push_back({{"label", label}, {"total", total}, {"sum", r.degree_sum},
                      {"count", r.count()}, {"gap", cg.lambda}, {"ratio", cg.ratio},
                      {"singular_samples", r.singular_samples}, {"bubbles", balls}});
    }
    const double spread = spread_of(ratios);
    res[fam] = {{"rows", rows}, {"ratio_spread", spread}};
    check(run, fam + " degree additivity", additive, "");
    check(run, fam + " count vs gap band", spread <= band && violations == 0,
          "max/min " + fmt(spread) + ", zero-gap violations " + std::to_string(violations));
  };

  std::vector<std::pair<std::string, std::pair<long, DiscreteMap>>> maps;
  for (const int k : windings) maps.push_back({"winding" + std::to_string(k), {k, winding_map(k, circle)}});
  family("windings", maps);

  maps.clear();
  for (int n = 1; n <= max_caps; ++n) {
    std::vector<Bubble> caps;
    for (int i = 0; i < n; ++i) {
      const double t = 2.0 * kPi * (i + 0.5) / n;
      caps.push_back({make_point(std::cos(t), std::sin(t)), cap_radius, 1});
    }
    maps.push_back({"caps" + std::to_string(n),
                    {n, bubble_map(caps, make_point(1.0, 0.0), circle)}});
  }
  family("bubble_maps", maps);

  maps.clear();
  for (const int k : powers)
    maps.push_back({"power" + std::to_string(k), {k, power_map_s2(k, sphere)}});
  family("power_maps", maps);

  run.tables.emplace_back("bubbles_pipeline.csv", csv.text());
  run.results["pipeline"] = res;
}

void bubbles_pipeline(Params& P, const RunOptions& o, ScenarioRun& run) {
  const auto parts = P.get<std::vector<std::string>>("parts", {"merge", "horoball", "pipeline"});
  json merge_cfg = {{"trials", P.get("merge_trials", 1000)},
                    {"coverage_points", P.get("coverage_points", 10000)}};
  json horo_cfg = {{"trials", P.get("horoball_trials", 1000)},
                   {"tolerance", P.get("horoball_tolerance", 1e-12)}};
  json pipe_cfg = {{"winding_range", P.get<std::vector<int>>("winding_range", {-4, 4})},
                   {"circle_n", P.get("circle_n", 1024)},
                   {"max_caps", P.get("max_caps", 4)},
                   {"cap_radius", P.get("cap_radius", 0.4)},
                   {"power_range", P.get<std::vector<int>>("power_range", {-2, 2})},
                   {"icosphere_level", P.get("icosphere_level", 3)},
                   {"sigma_over_rho_m2", P.get("sigma_over_rho_m2", 1.0)},
                   {"gap_eps", P.get("gap_eps", 0.5)},
                   {"band", P.get("band", 4.0)}};
  P.finish();
  for (const std::string& part : parts) {
    if (part == "merge") merge_part(merge_cfg, o, run);
    else if (part == "horoball") horoball_part(horo_cfg, o, run);
    else if (part == "pipeline") pipeline_part(pipe_cfg, o, run);
    else throw ConfigError("unknown bubbles-pipeline part '" + part + "'");
  }
}

// ---------------------------------------------------------------------------

void hurewicz(Params& P, const RunOptions& o, ScenarioRun& run) {
  const int circle_n = P.get("circle_n", 1024);
  const int level = P.get("icosphere_level", 3);
  const auto vol_windings = int_range(P.get<std::vector<int>>("volume_winding_range", {-3, 3}), "volume_winding_range");
  const auto vol_powers = int_range(P.get<std::vector<int>>("volume_power_range", {-3, 3}), "volume_power_range");
  const auto loops = P.get<std::vector<std::vector<int>>>("torus_loops", {{2, 3}, {1, -1}, {0, 4}, {-2, 5}});
  const auto gap_windings = int_range(P.get<std::vector<int>>("gap_winding_range", {1, 8}), "gap_winding_range");
  const double gap_eps = P.get("gap_eps", 0.5);
  const auto scaled_powers = int_range(P.get<std::vector<int>>("scaled_power_range", {-2, 2}), "scaled_power_range");
  const auto scaled_eps = P.get<std::vector<double>>("scaled_eps", {0.2, 0.3, 0.5});
  const double band = P.get("band", 4.0);
  P.finish();
  auto circle = share(make_sphere_mesh(1, circle_n));
  auto sphere = share(make_sphere_mesh(2, level));

  double worst = 0.0;
  for (const int k : vol_windings) {
    const DiscreteMap f = winding_map(k, circle);
    worst = std::max(worst, std::abs(hurewicz_pairing(f, FormSpec::sphere_volume(1)) - degree(f).raw));
  }
  for (const int k : vol_powers) {
    const DiscreteMap f = power_map_s2(k, sphere);
    worst = std::max(worst, std::abs(hurewicz_pairing(f, FormSpec::sphere_volume(2)) - degree(f).raw));
  }
  run.results["volume_pairing_max_diff"] = worst;
  check(run, "volume-form pairing equals degree", worst <= 1e-9, "max diff " + fmt(worst));

  bool torus_ok = true;
  json pairs = json::array();
  for (const auto& l : loops) {
    if (l.size() != 2) throw ConfigError("torus_loops entries need two integers");
    const auto pr = hurewicz_torus_pair(torus_loop(l[0], l[1], circle));
    torus_ok = torus_ok && pr.first == l[0] && pr.second == l[1];
    pairs.push_back({pr.first, pr.second});
  }
  run.results["torus_pairs"] = pairs;
  check(run, "torus pairing exact", torus_ok, pairs.dump());

  const auto table_json = [](const HurewiczGapTable& t) {
    json rows = json::array();
    for (const auto& r : t.rows)
      rows.push_back({{"label", r.label}, {"eps", r.eps}, {"hurewicz", r.hurewicz},
                      {"gap", r.gap}, {"ratio", r.ratio}, {"vacuous", r.vacuous}});
    return json{{"rows", rows}, {"spread", t.spread()}};
  };
  std::vector<HurewiczMember> fam;
  for (const int k : gap_windings) fam.push_back({"winding" + std::to_string(k), winding_map(k, circle)});
  const auto t1 = hurewicz_gap_check(fam, {gap_eps}, HurewiczGapMode::truncated, quad(o));
  run.results["winding_gap"] = table_json(t1);
  check(run, "winding |Hur|/gap band", t1.within_factor(band), "max/min " + fmt(t1.spread()));

  fam.clear();
  for (const int k : scaled_powers) fam.push_back({"power" + std::to_string(k), power_map_s2(k, sphere)});
  const auto t2 = hurewicz_gap_check(fam, scaled_eps, HurewiczGapMode::scaled, quad(o));
  run.results["scaled_power_gap"] = table_json(t2);
  check(run, "scaled sweep band (m = 2)", t2.within_factor(band), "max/min " + fmt(t2.spread()));

  Csv csv({"family", "label", "eps", "hurewicz", "gap", "ratio"});
  for (const auto* t : {&t1, &t2})
    for (const auto& r : t->rows)
      csv.add({t == &t1 ? "windings" : "powers_scaled", r.label, num(r.eps), num(r.hurewicz),
               num(r.gap), num(r.ratio)});
  run.tables.emplace_back("hurewicz.csv", csv.text());
}

// ---------------------------------------------------------------------------

void freegrp_suite(Params& P, const RunOptions& o, ScenarioRun& run) {
  const int max_len = P.get("max_len", 5);
  const int conj_len = P.get("conjugator_len", 7);
  const auto ks = int_range(P.get<std::vector<int>>("family_k", {2, 4}), "family_k");
  const auto ells = P.get<std::vector<int>>("family_ell", {0, 6});
  const auto genera = P.get<std::vector<int>>("genera", {2, 3});
  P.finish();
  if (ells.size() != 2) throw ConfigError("family_ell must be [lo, hi]");

  const auto words = enumerate_reduced_words(2, max_len);
  const auto conj = enumerate_reduced_words(2, conj_len);
  std::vector<long> disagree(words.size(), 0);
  std::vector<long> positives(words.size(), 0);
  parallel_for(words.size(), o.threads, [&](std::size_t i) {
    std::set<Word> orbit;
    for (const Word& w : conj) orbit.insert(reduce(w * words[i] * inverse(w)));
    for (const Word& v : words) {
      const bool oracle = orbit.contains(v);
      positives[i] += oracle ? 1 : 0;
      if (oracle != conjugate_test(words[i], v)) ++disagree[i];
    }
  });
  long total_disagree = 0, total_pos = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    total_disagree += disagree[i];
    total_pos += positives[i];
  }
  const long pairs = static_cast<long>(words.size() * words.size());
  run.results["exhaustive"] = {{"words", words.size()}, {"pairs", pairs},
                               {"conjugate_pairs", total_pos}, {"discrepancies", total_disagree}};
  check(run, "conjugacy matches brute force", total_disagree == 0,
        std::to_string(total_disagree) + " discrepancies over " + std::to_string(pairs) + " pairs");

  std::vector<FamilyMember> members;
  for (const int k : ks) {
    auto fam = decomposition_family(k, ells[0], ells[1]);
    members.insert(members.end(), fam.begin(), fam.end());
  }
  long conj_pairs = 0;
  bool witnesses = true;
  for (std::size_t i = 0; i < members.size(); ++i) {
    witnesses = witnesses && witness_product(members[i]) == members[i].word;
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (conjugate_test(members[i].word, members[j].word)) ++conj_pairs;
  }
  run.results["family"] = {{"members", members.size()}, {"conjugate_pairs", conj_pairs}};
  check(run, "family pairwise non-conjugate", conj_pairs == 0, std::to_string(conj_pairs) + " conjugate pairs");
  check(run, "family witness products", witnesses, "");

  bool tau_ok = true;
  for (const int g : genera) tau_ok = tau_ok && tau(surface_relator(g)).empty();
  check(run, "tau kills surface relators", tau_ok, "");
}

// ---------------------------------------------------------------------------

void hopf(Params& P, const RunOptions& o, ScenarioRun& run) {
  const auto ks = P.get<std::vector<int>>("k", {1, 2, 3});
  const double eps = P.get("eps", 0.5);
  const auto samples = P.get<std::uint64_t>("samples", 2'000'000);
  const int batches = P.get("batches", 64);
  const int boot = P.get("bootstrap", 400);
  const double lo = P.get("exponent_min", 1.0);
  const double hi = P.get("exponent_max", 1.8);
  const double stab = P.get("stability", 0.1);
  const int s3_points = P.get("s3_points", 4096);
  P.finish();

  auto s3 = share(make_sphere_mesh(3, s3_points));
  const HopfMap h1 = hopf_family(1, s3);
  double unit_err = 0.0;
  for (const Point& y : h1.map.values) unit_err = std::max(unit_err, std::abs(norm(y) - 1.0));
  check(run, "Hopf map has unit values", unit_err < 1e-12, "max |1 - |psi|| " + fmt(unit_err));
  const HopfMap h0 = hopf_family(0, s3);
  double off_circle = 0.0;
  for (const Point& y : h0.map.values) off_circle = std::max(off_circle, std::abs(y[1]));
  check(run, "k = 0 image on one great circle", off_circle < 1e-12, "max |y1| " + fmt(off_circle));

  HopfMCOptions mc;
  mc.samples = samples;
  mc.seed = o.seed;
  mc.threads = o.threads;
  mc.batches = batches;
  mc.bootstrap = boot;
  const HopfGrowth g = hopf_growth_check(ks, eps, mc);
  mc.samples = 2 * samples;
  const HopfGrowth g2 = hopf_growth_check(ks, eps, mc);
  json est = json::array();
  Csv csv({"k", "nominal_invariant", "gap", "std_error"});
  for (const auto& e : g.estimates) {
    est.push_back({{"k", e.k}, {"nominal_invariant", static_cast<long>(e.k) * e.k},
                   {"gap", e.value}, {"std_error", e.std_error}});
    csv.add({num(static_cast<long>(e.k)), num(static_cast<long>(e.k) * e.k), num(e.value),
             num(e.std_error)});
  }
  run.tables.emplace_back("hopf.csv", csv.text());
  run.results["invariant"] = "nominal (k^2 by construction)";
  run.results["estimates"] = est;
  run.results["fitted"] = g.fitted;
  if (!g.fitted) {
    check(run, "Hopf growth exponent", false, "insufficient points for a fit");
    return;
  }
  run.results["exponent"] = g.exponent;
  run.results["ci"] = {g.ci_low, g.ci_high};
  run.results["exponent_doubled"] = g2.exponent;
  check(run, "Hopf growth exponent", g.exponent >= lo && g.exponent <= hi,
        "exponent " + fmt(g.exponent) + " CI [" + fmt(g.ci_low) + ", " + fmt(g.ci_high) + "]");
  check(run, "exponent stable under sample doubling", std::abs(g2.exponent - g.exponent) < stab,
        "shift " + fmt(std::abs(g2.exponent - g.exponent)));
  bool mono = true;
  for (std::size_t i = 1; i < g.estimates.size(); ++i)
    mono = mono && g.estimates[i].value > g.estimates[i - 1].value;
  check(run, "gap increases with k", mono, "");
}

using Runner = std::function<void(Params&, const RunOptions&, ScenarioRun&)>;

const std::map<std::string, Runner>& registry() {
  static const std::map<std::string, Runner> r = {
      {"degree-gap", degree_gap},         {"scaling", scaling},
      {"halving", halving},               {"pq-compare", pq_compare},
      {"conformal", conformal},           {"glue", glue},
      {"extension-bound", extension_bound}, {"bubbles-pipeline", bubbles_pipeline},
      {"hurewicz", hurewicz},             {"hopf", hopf},
      {"freegrp-suite", freegrp_suite}};
  return r;
}

}  // namespace

bool ScenarioRun::passed() const noexcept {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "degree-gap", "scaling",          "halving",  "pq-compare", "conformal",    "glue",
      "extension-bound", "bubbles-pipeline", "hurewicz", "hopf",   "freegrp-suite"};
  return names;
}

ScenarioRun run_scenario(const std::string& name, const json& config, const RunOptions& opts) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw ConfigError("unknown scenario '" + name + "'");
  ScenarioRun run;
  run.name = name;
  Params P(config.is_null() ? json::object() : config, run.config);
  it->second(P, opts, run);
  return run;
}

std::string config_hash(const json& effective) { return fnv1a_hex(effective.dump()); }

json summary_json(const ScenarioRun& run, const RunOptions& opts) {
  json a = json::array();
  for (const auto& x : run.assertions)
    a.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
  return {{"scenario", run.name},
          {"library_version", version()},
          {"config", run.config},
          {"config_hash", config_hash(run.config)},
          {"rng_algorithm", std::string(Philox::algorithm)},
          {"seed", opts.seed},
          {"threads", opts.threads},
          {"results", run.results},
          {"assertions", a},
          {"passed", run.passed()}};
}

}  // namespace bubblescope::cli
