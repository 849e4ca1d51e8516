#include <benchmark/benchmark.h>

#include "gdesign/cgraph.hpp"
#include "gdesign/experiments.hpp"
#include "gdesign/groups.hpp"
#include "gdesign/pauli.hpp"
#include "gdesign/random.hpp"

using namespace gdesign;

static void BM_PauliMultiply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  std::vector<PauliString> ps;
  for (int i = 0; i < 64; ++i) {
    std::string s;
    for (int q = 0; q < n; ++q) s += "IXYZ"[rng.uniform_int(4)];
    ps.push_back(PauliString::parse(s));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ps[i % 64] * ps[(i + 1) % 64]);
    ++i;
  }
}
BENCHMARK(BM_PauliMultiply)->Arg(4)->Arg(16)->Arg(64);

static void BM_MatchgateCensus(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = matchgate_standard_generators(n);
  for (auto _ : state) benchmark::DoNotOptimize(census(s));
}
BENCHMARK(BM_MatchgateCensus)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

static void BM_ComponentBfs(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto s = matchgate_full_generators(n);
  const auto p = PauliString::single(n, n / 2 - 1, 'X');
  for (auto _ : state) benchmark::DoNotOptimize(component(p, s).size());
}
BENCHMARK(BM_ComponentBfs)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_HaarSample(benchmark::State& state, GroupKind kind) {
  const int n = static_cast<int>(state.range(0));
  const auto g = GroupSpec::make(kind, n);
  std::uint64_t i = 0;
  for (auto _ : state) {
    Rng rng = Rng::stream(7, i++);
    benchmark::DoNotOptimize(sample_haar(g, rng));
  }
}
BENCHMARK_CAPTURE(BM_HaarSample, unitary, GroupKind::unitary)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_HaarSample, orthogonal, GroupKind::orthogonal)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_HaarSample, symplectic, GroupKind::symplectic)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_HaarSample, matchgate, GroupKind::matchgate)->DenseRange(2, 6, 2);

static void BM_MatchgateDepthSample(benchmark::State& state) {
  auto cfg = default_config(ExperimentKind::depth, GroupKind::matchgate, 4);
  cfg.samples = 200;
  for (auto _ : state) benchmark::DoNotOptimize(run_depth_discrimination(cfg).mc_bound);
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.samples));
}
BENCHMARK(BM_MatchgateDepthSample)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
