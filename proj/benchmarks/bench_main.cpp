#include <benchmark/benchmark.h>

#include "nkimit/baseline.hpp"
#include "nkimit/dynamics.hpp"
#include "nkimit/landscape.hpp"
#include "nkimit/rng.hpp"
#include "nkimit/topology.hpp"

using namespace nkimit;

static void BM_LandscapeGenerate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(Landscape::generate(n, 4, ++seed));
}
BENCHMARK(BM_LandscapeGenerate)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_Fitness(benchmark::State& state) {
    const auto ls = Landscape::generate(22, 4, 1);  // above the table limit: computed per call
    Rng rng(1);
    for (auto _ : state) benchmark::DoNotOptimize(ls.fitness_of(static_cast<std::uint32_t>(rng.below(1U << 22))));
}
BENCHMARK(BM_Fitness);

static void BM_Eigenvalue(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(second_largest_eigenvalue(build_matrix(static_cast<int>(state.range(0)))));
}
BENCHMARK(BM_Eigenvalue)->Arg(12)->Arg(24);

static void BM_WattsStrogatz(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(Topology::watts_strogatz(200, 14, 0.5, ++seed));
}
BENCHMARK(BM_WattsStrogatz);

static void BM_Community(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(Topology::community(200, 4, 0.3, 0.001, ++seed));
}
BENCHMARK(BM_Community)->Unit(benchmark::kMillisecond);

static void BM_BarabasiAlbert(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(Topology::barabasi_albert(static_cast<std::size_t>(state.range(0)), ++seed));
}
BENCHMARK(BM_BarabasiAlbert)->Arg(1000)->Arg(10000);

// One search replica; the counter reports agent updates per second.
static void search(benchmark::State& state, const Topology& topo, int k) {
    const auto ls = Landscape::generate(12, k, 1);
    SearchConfig cfg;
    cfg.p = 0.5;
    std::uint64_t updates = 0;
    for (auto _ : state) {
        ++cfg.seed;
        const auto out = run(ls, topo, cfg);
        updates += out.t_star * topo.size();
        benchmark::DoNotOptimize(out);
    }
    state.counters["updates/s"] = benchmark::Counter(static_cast<double>(updates), benchmark::Counter::kIsRate);
}

static void BM_SearchComplete(benchmark::State& state) {
    search(state, Topology::complete(static_cast<std::size_t>(state.range(0))), 0);
}
BENCHMARK(BM_SearchComplete)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_SearchRing(benchmark::State& state) {
    search(state, Topology::ring(static_cast<std::size_t>(state.range(0)), 2), 0);
}
BENCHMARK(BM_SearchRing)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMicrosecond);

static void BM_SearchSmallWorld(benchmark::State& state) {
    search(state, Topology::watts_strogatz(200, 14, 1.0, 1), 4);
}
BENCHMARK(BM_SearchSmallWorld)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
