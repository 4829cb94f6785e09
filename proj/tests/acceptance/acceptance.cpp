// Runs the acceptance criteria through the scenario layer and prints one
// PASS/FAIL line per criterion. A criterion passes only when every scenario
// assertion holds and the run finishes inside its time budget.
//
// Usage: bubblescope_acceptance [--threads N] [criterion ...]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <string>
#include <vector>

#include "scenarios.hpp"

using bubblescope::cli::json;

namespace {

struct Criterion {
  int id;
  const char* title;
  const char* scenario;
  json config;
  double budget_s;
};

std::vector<Criterion> criteria() {
  return {
      {1, "degree exactness on S^1", "degree-gap",
       {{"include", {"s1"}}, {"winding_range", {-10, 10}}, {"circle_n", 1024}, {"gap_eps", json::array()}}, 1.0},
      {2, "degree exactness on S^2", "degree-gap",
       {{"include", {"s2"}}, {"power_range", {-3, 3}}, {"icosphere_level", 4}, {"gap_eps", json::array()}}, 10.0},
      {3, "conformal cylinder identity", "conformal", json::object(), 60.0},
      {4, "gap potential scaling", "scaling", json::object(), 120.0},
      {5, "halving inequality", "halving", json::object(), 120.0},
      {6, "p-q comparison", "pq-compare", json::object(), 60.0},
      {7, "extension properties", "extension-bound", json::object(), 120.0},
      {8, "merging invariants", "bubbles-pipeline", {{"parts", {"merge", "horoball"}}}, 30.0},
      {9, "bubbling pipeline", "bubbles-pipeline", {{"parts", {"pipeline"}}}, 600.0},
      {10, "gluing energy bound", "glue", json::object(), 120.0},
      {11, "Hurewicz pairing", "hurewicz", json::object(), 120.0},
      {12, "free group suite", "freegrp-suite", json::object(), 60.0},
      {13, "Hopf growth", "hopf", json::object(), 900.0},
  };
}

}  // namespace

int main(int argc, char** argv) {
  bubblescope::cli::RunOptions opts;
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--threads" && i + 1 < argc) opts.threads = std::atoi(argv[++i]);
    else only.insert(std::atoi(argv[i]));
  }

  int failed = 0;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string why;
    try {
      const auto run = bubblescope::cli::run_scenario(c.scenario, c.config, opts);
      ok = run.passed();
      for (const auto& a : run.assertions)
        if (!a.pass) why += "\n    failed: " + a.name + "  " + a.detail;
    } catch (const std::exception& e) {
      why = std::string("\n    error: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      ok = false;
      why += "\n    over budget";
    }
    std::printf("criterion %2d: %s  %-28s %8.2f s (budget %.0f s)%s\n", c.id, ok ? "PASS" : "FAIL", c.title,
                secs, c.budget_s, why.c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  return failed == 0 ? 0 : 1;
}
