#include <benchmark/benchmark.h>

#include "dsavoid/corpus.hpp"
#include "dsavoid/scenario_io.hpp"

namespace {

using namespace dsavoid;

const Scenario& corner_scene() {
  static const Scenario sc = parse_scenario(demo_case("corner_along").text);
  return sc;
}

void eval_at(benchmark::State& state, const Vec3& xi) {
  const Scenario& sc = corner_scene();
  for (auto _ : state) {
    auto mv = eval_modulated(sc.workspace, sc.obstacle, sc.ds, xi, sc.flow, sc.modulation);
    benchmark::DoNotOptimize(mv);
  }
}

void BM_EvalCombined(benchmark::State& state) { eval_at(state, Vec3(0.3, 0.4, 0.2)); }
BENCHMARK(BM_EvalCombined);

void BM_EvalIntersection(benchmark::State& state) {
  const Scenario& sc = corner_scene();
  const Vec3 xi = project_to_intersection(sc.workspace, *sc.obstacle, Vec3(0.95, 0.2, 0.2)).first;
  eval_at(state, xi);
}
BENCHMARK(BM_EvalIntersection);

void BM_EvalFreeIdentity(benchmark::State& state) {
  Scenario sc = corner_scene();
  sc.obstacle.reset();
  const Vec3 xi(0.1, 0.1, 0.1);
  for (auto _ : state) {
    auto mv = eval_modulated(sc.workspace, sc.obstacle, sc.ds, xi, sc.flow, sc.modulation);
    benchmark::DoNotOptimize(mv);
  }
}
BENCHMARK(BM_EvalFreeIdentity);

void BM_Simulate(benchmark::State& state) {
  Scenario sc = parse_scenario(demo_case("wall_full").text);
  sc.integrator.max_steps = static_cast<std::size_t>(state.range(0));
  sc.integrator.goal_tol = 1e-9;
  for (auto _ : state) {
    auto traj = simulate(sc, sc.starts.front());
    benchmark::DoNotOptimize(traj);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(20000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
