#include <benchmark/benchmark.h>

#include "spdi/cycles.hpp"
#include "spdi/explorer.hpp"
#include "spdi/generator.hpp"
#include "spdi/io.hpp"
#include "spdi/parallel.hpp"
#include "spdi/successor.hpp"

using namespace spdi;

namespace {

const Spdi& instance(std::size_t n) {
  static std::map<std::size_t, Spdi> cache;
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, generate_spdi({n, 7})).first;
  return it->second;
}

std::vector<ReachTask> tasks_for(const Spdi& s, std::size_t count) {
  SeededRng rng(11);
  return generate_tasks(s, count, rng);
}

void BM_ClassifyCycle(benchmark::State& state) {
  SeededRng rng(3);
  std::vector<IntervalMap> maps;
  for (int i = 0; i < 256; ++i) {
    double a = rng.uniform(0.01, 2.0), b = rng.uniform(-1.0, 1.0);
    maps.push_back({{a, b, std::nullopt}, {a, b + 0.01, std::nullopt}, false});
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify_cycle(maps[i++ % maps.size()], {0.3, 0.4}));
  }
}
BENCHMARK(BM_ClassifyCycle);

void BM_SuccInterval(benchmark::State& state) {
  const Spdi& s = instance(50);
  std::vector<std::tuple<std::size_t, EdgeId, EdgeId>> pairs;
  for (std::size_t r = 0; r < s.regions().size(); ++r) {
    const auto& re = s.region_edges(r);
    for (std::size_t i = 0; i < re.size(); ++i) {
      for (std::size_t j = 0; j < re.size(); ++j) {
        if (s.role(r, i) == EdgeRole::kEntry && s.role(r, j) == EdgeRole::kExit) {
          pairs.emplace_back(r, re[i].edge, re[j].edge);
        }
      }
    }
  }
  std::size_t i = 0;
  for (auto _ : state) {
    auto [r, a, b] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(succ_interval(s, r, a, b, {0.2, 0.7}));
  }
}
BENCHMARK(BM_SuccInterval);

void BM_Generate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) benchmark::DoNotOptimize(generate_spdi({n, seed++}));
}
BENCHMARK(BM_Generate)->Arg(10)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_WriteParseSpdi(benchmark::State& state) {
  const Spdi& s = instance(100);
  for (auto _ : state) benchmark::DoNotOptimize(parse_spdi(write_spdi(s)));
}
BENCHMARK(BM_WriteParseSpdi)->Unit(benchmark::kMicrosecond);

void BM_SolveSequential(benchmark::State& state) {
  const Spdi& s = instance(static_cast<std::size_t>(state.range(0)));
  auto tasks = tasks_for(s, 50);
  for (auto _ : state) {
    for (const ReachTask& t : tasks) benchmark::DoNotOptimize(solve_sequential(s, t));
  }
}
BENCHMARK(BM_SolveSequential)->Arg(30)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_SolveParallel(benchmark::State& state) {
  const Spdi& s = instance(100);
  auto tasks = tasks_for(s, 50);
  EngineConfig cfg;
  cfg.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    for (const ReachTask& t : tasks) benchmark::DoNotOptimize(solve_parallel(s, t, cfg));
  }
}
BENCHMARK(BM_SolveParallel)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
