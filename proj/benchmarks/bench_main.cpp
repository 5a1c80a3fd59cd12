#include <benchmark/benchmark.h>

#include <random>

#include "toybit/interpret.hpp"
#include "toybit/normalform.hpp"
#include "toybit/random.hpp"
#include "toybit/rewrite.hpp"

using namespace toybit;

namespace {

std::vector<Diagram> sample(std::size_t count, std::size_t max_nodes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomDiagramOptions o;
  o.max_nodes = max_nodes;
  std::vector<Diagram> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_diagram(rng, o));
  return out;
}

void BM_Interpret(benchmark::State& state) {
  const auto ds = sample(64, static_cast<std::size_t>(state.range(0)), 1);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(interpret(ds[i++ % ds.size()]));
}
BENCHMARK(BM_Interpret)->Arg(8)->Arg(20);

void BM_ToGslo(benchmark::State& state) {
  const auto ds = sample(64, static_cast<std::size_t>(state.range(0)), 2);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(to_gslo(ds[i++ % ds.size()]));
}
BENCHMARK(BM_ToGslo)->Arg(8)->Arg(20);

void BM_ToRgslo(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<Gslo> gs;
  for (int i = 0; i < 64; ++i) gs.push_back(random_gslo(rng, static_cast<std::size_t>(state.range(0))));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(to_rgslo(gs[i++ % gs.size()]));
}
BENCHMARK(BM_ToRgslo)->Arg(4)->Arg(8)->Arg(12);

void BM_DecideEqual(benchmark::State& state) {
  const auto a = sample(64, 14, 4);
  const auto b = sample(64, 14, 5);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_equal(a[i % a.size()], b[i % b.size()]));
    ++i;
  }
}
BENCHMARK(BM_DecideEqual);

void BM_FindAllMatches(benchmark::State& state) {
  const auto ds = sample(64, static_cast<std::size_t>(state.range(0)), 6);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(find_all_matches(ds[i++ % ds.size()]));
}
BENCHMARK(BM_FindAllMatches)->Arg(8)->Arg(20);

void BM_CheckSoundness(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& r : rule_set()) benchmark::DoNotOptimize(check_soundness(r, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CheckSoundness)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
