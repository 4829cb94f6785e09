#include <benchmark/benchmark.h>

#include <bubblescope/constructions.hpp>
#include <bubblescope/energy.hpp>
#include <bubblescope/extension.hpp>
#include <bubblescope/freegrp.hpp>
#include <bubblescope/random.hpp>
#include <bubblescope/topo.hpp>

using namespace bubblescope;

static void BM_SobolevCircle(benchmark::State& state) {
  const auto f = winding_map(2, share(make_sphere_mesh(1, static_cast<int>(state.range(0)))));
  QuadratureOptions q;
  q.estimate_error = false;
  for (auto _ : state) benchmark::DoNotOptimize(sobolev_energy(f, 0.5, 2.0, q).value);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SobolevCircle)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);

static void BM_GapSphere(benchmark::State& state) {
  const auto f = power_map_s2(2, share(make_sphere_mesh(2, static_cast<int>(state.range(0)))));
  GapParams gp;
  gp.eps = 0.5;
  QuadratureOptions q;
  q.estimate_error = false;
  for (auto _ : state) benchmark::DoNotOptimize(gap_potential(f, gp, q).value);
}
BENCHMARK(BM_GapSphere)->DenseRange(2, 3)->Unit(benchmark::kMillisecond);

static void BM_DegreeSphere(benchmark::State& state) {
  const auto f = power_map_s2(3, share(make_sphere_mesh(2, static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(degree(f).raw);
}
BENCHMARK(BM_DegreeSphere)->DenseRange(3, 5)->Unit(benchmark::kMicrosecond);

static void BM_ExtensionEvaluate(benchmark::State& state) {
  const ExtensionField F(power_map_s2(2, share(make_sphere_mesh(2, static_cast<int>(state.range(0))))));
  Philox rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(F.evaluate(rng.in_ball(3, 0.9)).value);
}
BENCHMARK(BM_ExtensionEvaluate)->DenseRange(3, 5);

static void BM_Conjugacy(benchmark::State& state) {
  Philox rng(2, 0);
  const int len = static_cast<int>(state.range(0));
  const Word u = random_reduced_word(2, len, rng);
  const Word c = random_reduced_word(2, 7, rng);
  const Word v = reduce(c * u * inverse(c));
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_test(u, v));
}
BENCHMARK(BM_Conjugacy)->RangeMultiplier(4)->Range(8, 512);
BENCHMARK_MAIN();
