#include <benchmark/benchmark.h>

#include "swoco/adversaries.hpp"
#include "swoco/engine.hpp"
#include "swoco/rng.hpp"

namespace {

using namespace swoco;

void BM_ProjectToBall(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BallDomain dom(d, 1.0);
  Rng rng(1);
  std::vector<Vec> points;
  for (int i = 0; i < 256; ++i) {
    points.push_back(rng.on_sphere(d, std::exp(rng.uniform(-1.0, 1.0))));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_to_ball(points[i++ & 255], dom));
  }
}
BENCHMARK(BM_ProjectToBall)->Arg(2)->Arg(8)->Arg(64);

void BM_OgdStep(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const BallDomain dom(d, 1.0);
  Rng rng(2);
  PlayerState st = make_ogd_player(10.0, 2.0, 1.0, 10000, d);
  std::vector<Vec> grads;
  for (int i = 0; i < 256; ++i) grads.push_back(rng.on_sphere(d, 1.0));
  std::size_t i = 0;
  for (auto _ : state) {
    st = ogd_fixed_step(st, grads[i++ & 255], dom);
    benchmark::DoNotOptimize(st.action.data());
  }
}
BENCHMARK(BM_OgdStep)->Arg(2)->Arg(8)->Arg(64);

void BM_OrthogonalPick(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  Rng rng(3);
  std::vector<Vec> ws, Ms;
  for (int i = 0; i < 256; ++i) {
    ws.push_back(rng.in_ball(d, 1.0));
    Ms.push_back(rng.on_sphere(d, rng.uniform(1.0, 100.0)));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const std::size_t k = i++ & 255;
    benchmark::DoNotOptimize(orthogonal_pick(ws[k], Ms[k], 1.0, d));
  }
}
BENCHMARK(BM_OrthogonalPick)->Arg(2)->Arg(8)->Arg(64);

void BM_AdaptiveGame(benchmark::State& state) {
  GameConfig cfg;
  cfg.T = state.range(0);
  cfg.d = 2;
  cfg.D = 2.0;
  cfg.G = 1.0;
  cfg.S = 10.0;
  cfg.player = PlayerKind::kOgd;
  cfg.adversary = AdversaryKind::kAdaptive;
  cfg.seed = 4;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_game(cfg).total_switch);
  }
  state.SetItemsProcessed(state.iterations() * cfg.T);
}
BENCHMARK(BM_AdaptiveGame)->Arg(1000)->Arg(10000);

void BM_LinearRegretClosedForm(benchmark::State& state) {
  GameConfig cfg;
  cfg.T = state.range(0);
  cfg.d = 3;
  cfg.S = 25.0;
  cfg.player = PlayerKind::kOgd;
  cfg.adversary = AdversaryKind::kRandom;
  cfg.seed = 5;
  const Transcript tr = run_game(cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(regret_linear(tr));
  }
}
BENCHMARK(BM_LinearRegretClosedForm)->Arg(1000)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
