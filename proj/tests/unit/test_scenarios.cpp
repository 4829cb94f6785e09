#include <gtest/gtest.h>

#include "map_spec.hpp"
#include "scenarios.hpp"

#include <bubblescope/topo.hpp>

using namespace bubblescope::cli;

namespace {
json small_degree_gap() {
  return json{{"include", {"s1"}}, {"winding_range", {-3, 3}}, {"circle_n", 256}, {"gap_eps", json::array()}};
}
}  // namespace

TEST(Scenarios, NamesAreRegistered) {
  const auto& names = scenario_names();
  EXPECT_EQ(names.size(), 11u);
  EXPECT_NE(std::find(names.begin(), names.end(), "hopf"), names.end());
}

TEST(Scenarios, UnknownKeyIsRejected) {
  json cfg = small_degree_gap();
  cfg["windng_range"] = {0, 1};
  EXPECT_THROW((void)run_scenario("degree-gap", cfg, {}), ConfigError);
}

TEST(Scenarios, UnknownScenarioIsRejected) {
  EXPECT_THROW((void)run_scenario("no-such-thing", json::object(), {}), ConfigError);
}

TEST(Scenarios, WrongTypeIsRejected) {
  json cfg = small_degree_gap();
  cfg["circle_n"] = "many";
  EXPECT_ANY_THROW((void)run_scenario("degree-gap", cfg, {}));
}

TEST(Scenarios, EffectiveConfigEchoesDefaults) {
  const auto run = run_scenario("degree-gap", small_degree_gap(), {});
  EXPECT_TRUE(run.passed());
  EXPECT_EQ(run.config.at("circle_n"), 256);
  EXPECT_TRUE(run.config.contains("s2_tolerance"));
}

TEST(Scenarios, SummaryIsDeterministicAcrossThreads) {
  RunOptions one{1, 5}, two{2, 5};
  const auto a = summary_json(run_scenario("degree-gap", small_degree_gap(), one), one);
  const auto b = summary_json(run_scenario("degree-gap", small_degree_gap(), two), two);
  EXPECT_EQ(a.at("results").dump(), b.at("results").dump());
  EXPECT_EQ(a.at("config_hash"), b.at("config_hash"));
}

TEST(Scenarios, ConfigHashTracksContent) {
  EXPECT_EQ(config_hash(json{{"a", 1}}), config_hash(json{{"a", 1}}));
  EXPECT_NE(config_hash(json{{"a", 1}}), config_hash(json{{"a", 2}}));
}

TEST(MapSpec, BuildsNamedMaps) {
  const auto f = map_from_spec(json{{"kind", "power"}, {"k", -2}, {"mesh", {{"domain", "sphere"}, {"dim", 2}, {"resolution", 3}}}}, 1);
  EXPECT_EQ(bubblescope::degree(f).rounded, -2);
}
