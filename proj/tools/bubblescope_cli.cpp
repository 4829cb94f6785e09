// Command line front end: module subcommands and the named scenarios.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bubblescope/bubblescope.hpp"
#include "lib/map_spec.hpp"
#include "lib/scenarios.hpp"

namespace bs = bubblescope;
using bs::cli::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json point_json(const bs::Point& p, int n) {
  json a = json::array();
  for (int i = 0; i < n; ++i) a.push_back(p[i]);
  return a;
}

json degree_json(const bs::DegreeResult& d) {
  return {{"raw", d.raw}, {"rounded", d.rounded}, {"residual", d.residual}};
}

json energy_json(const bs::EnergyReport& r) {
  return {{"value", r.value},
          {"pairs", r.pairs},
          {"exclusion_radius", r.exclusion_radius},
          {"error_estimate", r.error_estimate},
          {"tail_bound", r.tail_bound}};
}

bs::DiscreteMap load_map(const std::string& path) {
  return bs::map_from_json(bs::read_text_file(path));
}

struct Common {
  int threads = 1;
  std::uint64_t seed = 1;
};

int run_scenario_cmd(const std::string& name, const std::string& config_path, const Common& c,
                     const std::string& out_dir) {
  json cfg = json::object();
  if (!config_path.empty()) {
    try {
      cfg = json::parse(bs::read_text_file(config_path));
    } catch (const json::exception& e) {
      throw bs::cli::ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  const bs::cli::RunOptions opts{c.threads, c.seed};
  const bs::cli::ScenarioRun run = bs::cli::run_scenario(name, cfg, opts);
  const json summary = bs::cli::summary_json(run, opts);
  if (out_dir.empty()) {
    emit(summary);
  } else {
    std::filesystem::create_directories(out_dir);
    bs::write_text_file(out_dir + "/" + name + ".json", summary.dump(2) + "\n");
    for (const auto& [file, text] : run.tables) bs::write_text_file(out_dir + "/" + file, text);
  }
  for (const auto& a : run.assertions)
    std::fprintf(stderr, "%s  %s  %s\n", a.pass ? "PASS" : "FAIL", a.name.c_str(), a.detail.c_str());
  return run.passed() ? kExitOk : kExitInvariant;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bubblescope: fractional energies, degrees and bubble decompositions"};
  app.set_version_flag("--version", std::string(bs::version()));
  app.require_subcommand(1);

  Common common;
  std::string out_dir;
  std::string config_path;
  int exit_code = kExitOk;
  std::function<int()> action;

  // named scenarios (hurewicz and hopf double as module commands below)
  for (const std::string& name : bs::cli::scenario_names()) {
    if (name == "hurewicz" || name == "hopf") continue;
    auto* sc = app.add_subcommand(name, "run the '" + name + "' scenario");
    sc->add_option("--config", config_path, "JSON config file");
    sc->add_option("--threads", common.threads, "worker threads (1 = serial reference path)");
    sc->add_option("--seed", common.seed, "RNG seed");
    sc->add_option("--out", out_dir, "output directory for JSON and CSV");
    sc->callback([&, name] { action = [&, name] { return run_scenario_cmd(name, config_path, common, out_dir); }; });
  }

  // energy
  std::string map_path;
  std::string kind = "sobolev";
  double s = 0.5, p = 2.0, eps = 0.5;
  std::string mode = "geodesic";
  int depth = 0;
  auto* en = app.add_subcommand("energy", "fractional, Dirichlet, gap or cylinder energy of a map");
  en->add_option("--map", map_path, "map JSON file")->required();
  en->add_option("--kind", kind)->check(CLI::IsMember({"sobolev", "dirichlet", "gap", "cylinder"}));
  en->add_option("--s", s);
  en->add_option("--p", p);
  en->add_option("--eps", eps);
  en->add_option("--mode", mode, "target distance for gap")->check(CLI::IsMember({"geodesic", "chord"}));
  en->add_option("--refine-depth", depth);
  en->add_option("--threads", common.threads);
  en->callback([&] {
    action = [&] {
      const auto f = load_map(map_path);
      bs::QuadratureOptions q;
      q.threads = common.threads;
      q.refine_depth = depth;
      bs::EnergyReport r;
      if (kind == "sobolev") r = bs::sobolev_energy(f, s, p, q);
      else if (kind == "dirichlet") r = bs::dirichlet_energy(f);
      else if (kind == "cylinder") r = bs::cylinder_energy(f, s, p);
      else {
        bs::GapParams gp;
        gp.eps = eps;
        gp.p = p;
        gp.mode = mode == "chord" ? bs::TargetDistanceMode::chord : bs::TargetDistanceMode::geodesic;
        r = bs::gap_potential(f, gp, q);
      }
      json j = energy_json(r);
      j["kind"] = kind;
      emit(j);
      return kExitOk;
    };
  });

  // extend
  std::vector<std::vector<double>> at;
  double delta = 0.0, sigma = 0.0;
  bool lattice = false;
  auto* ex = app.add_subcommand("extend", "hyperharmonic extension values or singular set");
  ex->add_option("--map", map_path)->required();
  ex->add_option("--at", at, "evaluation point (repeatable)")->expected(1, 4)->delimiter(',')->allow_extra_args(false);
  ex->add_flag("--lattice", lattice, "detect the singular set on the adaptive lattice");
  ex->add_option("--sigma", sigma, "leaf size (0 = rho / 2)");
  ex->add_option("--delta", delta, "singular threshold (0 = tube radius)");
  ex->add_option("--threads", common.threads);
  ex->callback([&] {
    action = [&] {
      const auto f = load_map(map_path);
      const bs::ExtensionField F(f);
      const int n = f.mesh().dim + 1;
      json out = json::array();
      if (lattice) {
        bs::LatticeSpec ls;
        ls.sigma = sigma;
        ls.threads = common.threads;
        const double d = delta > 0.0 ? delta : f.target.tube_radius();
        const auto set = bs::detect_singular(F, d, ls);
        for (const auto& smp : set.samples)
          out.push_back({{"point", point_json(smp.point, n)}, {"distance", smp.distance},
                         {"volume", smp.volume}, {"certified", smp.certified}});
        emit({{"delta", d}, {"rho", set.rho}, {"sigma", set.sigma}, {"measure", set.measure},
              {"samples", out}});
        return kExitOk;
      }
      for (const auto& z : at) {
        bs::Point pz{};
        for (std::size_t i = 0; i < z.size() && i < 4; ++i) pz[i] = z[i];
        const auto e = F.evaluate(pz);
        out.push_back({{"point", point_json(pz, n)}, {"value", point_json(e.value, f.target.nu())},
                       {"distance", F.distance_to_target(pz)}, {"mass", e.mass}});
      }
      emit(out);
      return kExitOk;
    };
  });

  // bubbles
  std::string balls_csv;
  auto* bu = app.add_subcommand("bubbles", "free homotopy decomposition of a sphere map");
  bu->add_option("--map", map_path)->required();
  bu->add_option("--delta", delta, "0 = tube radius");
  bu->add_option("--eps", eps, "gap potential threshold for the count ratio");
  bu->add_option("--sigma", sigma, "lattice leaf size (0 = rho / 2)");
  bu->add_option("--emit-balls", balls_csv, "CSV of ball centers, radii and degrees");
  bu->add_option("--threads", common.threads);
  bu->callback([&] {
    action = [&] {
      const auto f = load_map(map_path);
      bs::DecomposeParams dp;
      dp.delta = delta;
      dp.lattice.sigma = sigma;
      dp.lattice.threads = common.threads;
      const auto r = bs::decompose(f, dp);
      bs::QuadratureOptions q;
      q.threads = common.threads;
      const auto cg = bs::count_vs_gap(f, eps, r, q);
      const int n = f.mesh().dim + 1;
      json bubbles = json::array();
      std::string csv = "c0,c1,c2,radius,degree\n";
      for (const auto& b : r.bubbles) {
        const long d = b.degree ? b.degree->rounded : 0;
        bubbles.push_back({{"center", point_json(b.ball.center, n)}, {"radius", b.ball.radius},
                           {"degree", b.degree ? json(degree_json(*b.degree)) : json(nullptr)},
                           {"lipschitz", b.lipschitz}, {"lipschitz_over_sinh", b.lipschitz_over_sinh}});
        csv += bs::format_double(b.ball.center[0]) + "," + bs::format_double(b.ball.center[1]) + "," +
               bs::format_double(b.ball.center[2]) + "," + bs::format_double(b.ball.radius) + "," +
               std::to_string(d) + "\n";
      }
      if (!balls_csv.empty()) bs::write_text_file(balls_csv, csv);
      emit({{"delta", r.delta}, {"rho", r.rho}, {"singular_samples", r.singular_samples},
            {"singular_measure", r.singular_measure}, {"net_size", r.net_size},
            {"total_degree", r.total_degree ? json(degree_json(*r.total_degree)) : json(nullptr)},
            {"degree_sum", r.degree_sum}, {"degree_additive", r.degree_additive()},
            {"count", r.count()}, {"gap", cg.lambda}, {"count_over_gap", cg.ratio},
            {"bubbles", bubbles}});
      return r.degree_additive() ? kExitOk : kExitInvariant;
    };
  });

  // degree
  auto* de = app.add_subcommand("degree", "Kronecker degree of a sphere map");
  de->add_option("--map", map_path)->required();
  de->callback([&] {
    action = [&] {
      emit(degree_json(bs::degree(load_map(map_path))));
      return kExitOk;
    };
  });

  // hurewicz: pairing with --map, otherwise the scenario
  std::string form = "volume";
  auto* hu = app.add_subcommand("hurewicz", "Hurewicz pairing of a map, or the hurewicz scenario");
  hu->add_option("--map", map_path);
  hu->add_option("--form", form)->check(CLI::IsMember({"volume", "angle"}));
  hu->add_option("--config", config_path);
  hu->add_option("--threads", common.threads);
  hu->add_option("--seed", common.seed);
  hu->add_option("--out", out_dir);
  hu->callback([&] {
    action = [&] {
      if (map_path.empty()) return run_scenario_cmd("hurewicz", config_path, common, out_dir);
      const auto f = load_map(map_path);
      if (form == "angle") {
        const auto pr = bs::hurewicz_torus_pair(f);
        emit({{"pair", {pr.first, pr.second}}});
      } else {
        emit({{"pair", bs::hurewicz_pairing(f, bs::FormSpec::sphere_volume(f.target.dim()))}});
      }
      return kExitOk;
    };
  });

  // hopf: growth check with --k, otherwise the scenario
  std::vector<int> ks;
  std::uint64_t samples = 2'000'000;
  auto* ho = app.add_subcommand("hopf", "Monte Carlo Hopf-family growth, or the hopf scenario");
  ho->add_option("--k", ks, "k values");
  ho->add_option("--eps", eps);
  ho->add_option("--samples", samples);
  ho->add_option("--config", config_path);
  ho->add_option("--threads", common.threads);
  ho->add_option("--seed", common.seed);
  ho->add_option("--out", out_dir);
  ho->callback([&] {
    action = [&] {
      if (ks.empty()) return run_scenario_cmd("hopf", config_path, common, out_dir);
      bs::HopfMCOptions o;
      o.samples = samples;
      o.seed = common.seed;
      o.threads = common.threads;
      const auto g = bs::hopf_growth_check(ks, eps, o);
      json est = json::array();
      for (const auto& e : g.estimates)
        est.push_back({{"k", e.k}, {"nominal_invariant", static_cast<long>(e.k) * e.k},
                       {"gap", e.value}, {"std_error", e.std_error}});
      json out = {{"estimates", est}, {"fitted", g.fitted}, {"invariant", "nominal"}};
      if (g.fitted) {
        out["exponent"] = g.exponent;
        out["ci"] = {g.ci_low, g.ci_high};
      }
      emit(out);
      return kExitOk;
    };
  });

  // freegrp
  std::vector<std::string> conj_pair;
  std::vector<int> family;
  auto* fg = app.add_subcommand("freegrp", "free-group conjugacy and the non-conjugate family");
  fg->add_option("--check-conjugate", conj_pair, "two words, e.g. \"a1 a2^-1\" \"a2^-1 a1\"")->expected(2);
  fg->add_option("--family", family, "k and ell_max")->expected(2);
  fg->callback([&] {
    action = [&] {
      json out = json::object();
      if (conj_pair.size() == 2) {
        const auto u = bs::parse_word(conj_pair[0]);
        const auto v = bs::parse_word(conj_pair[1]);
        out["u"] = bs::to_string(bs::reduce(u));
        out["v"] = bs::to_string(bs::reduce(v));
        out["conjugate"] = bs::conjugate_test(u, v);
      }
      if (family.size() == 2) {
        json rows = json::array();
        for (const auto& m : bs::decomposition_family(family[0], 0, family[1])) {
          json conj = json::array();
          for (const auto& b : m.conjugators) conj.push_back(bs::to_string(b));
          rows.push_back({{"k", m.k}, {"ell", m.ell}, {"word", bs::to_string(m.word)},
                          {"conjugators", conj}});
        }
        out["family"] = rows;
      }
      if (out.empty()) throw bs::cli::ConfigError("freegrp needs --check-conjugate or --family");
      emit(out);
      return kExitOk;
    };
  });

  // make-map
  std::string spec_text, map_kind, out_file;
  int k = 1, dim = 1, resolution = 1024;
  double lambda = 2.0;
  auto* mm = app.add_subcommand("make-map", "write a constructed map as JSON");
  mm->add_option("--spec", spec_text, "JSON map spec");
  mm->add_option("--kind", map_kind, "identity, antipodal, winding, power, dilation, hopf, ...");
  mm->add_option("--k", k);
  mm->add_option("--dim", dim);
  mm->add_option("--resolution", resolution);
  mm->add_option("--lambda", lambda);
  mm->add_option("--seed", common.seed);
  mm->add_option("-o,--out", out_file, "output file (stdout if omitted)");
  mm->callback([&] {
    action = [&] {
      json spec;
      if (!spec_text.empty()) {
        spec = json::parse(spec_text);
      } else {
        if (map_kind.empty()) throw bs::cli::ConfigError("make-map needs --spec or --kind");
        spec = {{"kind", map_kind}, {"k", k}, {"lambda", lambda},
                {"mesh", {{"domain", "sphere"}, {"dim", dim}, {"resolution", resolution}}}};
      }
      const std::string text = bs::map_to_json(bs::cli::map_from_spec(spec, common.seed));
      if (out_file.empty()) std::cout << text << '\n';
      else bs::write_text_file(out_file, text);
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }
  try {
    exit_code = action ? action() : kExitConfig;
  } catch (const bs::cli::ConfigError& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const json::exception& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return kExitConfig;
  } catch (const bs::InvalidArgument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInvariant;
  }
  return exit_code;
}
