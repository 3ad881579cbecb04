#include <benchmark/benchmark.h>

#include "cayfire/ball.hpp"
#include "cayfire/fire.hpp"
#include "cayfire/strategy.hpp"

using namespace cayfire;

namespace {

void BM_EnumerateBall(benchmark::State& state, const char* spec) {
  auto group = make_group(spec);
  const int radius = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Ball ball = Ball::enumerate(group, radius);
    benchmark::DoNotOptimize(ball.size());
  }
  state.SetLabel(spec);
}

void BM_MulGen(benchmark::State& state, const char* spec, int warmup_len) {
  auto group = make_group(spec);
  Element e = group->identity();
  for (int i = 0; i < warmup_len; ++i) {
    e = group->multiply_by_generator(e, i % group->generator_count());
  }
  std::string buf;
  int gen = 0;
  for (auto _ : state) {
    group->mul_gen(e.view(), gen, buf);
    gen = (gen + 1) % group->generator_count();
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetLabel(spec);
}

void BM_OuterBoundary(benchmark::State& state) {
  auto ball = std::make_shared<Ball>(Ball::enumerate(make_group("Z^2"), 60));
  IdSet a(ball->size());
  for (uint32_t id = 0; id < ball->volume(static_cast<int>(state.range(0))); ++id) a.insert(id);
  for (auto _ : state) {
    auto boundary = outer_boundary(*ball, a);
    benchmark::DoNotOptimize(boundary.size());
  }
}

void BM_NullSpread(benchmark::State& state) {
  auto ball = std::make_shared<Ball>(Ball::enumerate(make_group("Z2wrZ"), 12));
  for (auto _ : state) {
    auto null = make_null_strategy();
    Trajectory traj =
        run_simulation(ball, {ball->group().identity()}, *null, BudgetFn::constant(0), 10);
    benchmark::DoNotOptimize(traj.fire_count_after(10));
  }
}

}  // namespace

BENCHMARK_CAPTURE(BM_EnumerateBall, z2, "Z^2")->Arg(30)->Arg(60)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateBall, f2, "F2")->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateBall, lamplighter, "Z2wrZ")->Arg(10)->Arg(13)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_MulGen, z2, "Z^2", 40);
BENCHMARK_CAPTURE(BM_MulGen, f2, "F2", 12);
BENCHMARK_CAPTURE(BM_MulGen, lamplighter, "Z2wrZ", 16);
BENCHMARK(BM_OuterBoundary)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NullSpread)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
