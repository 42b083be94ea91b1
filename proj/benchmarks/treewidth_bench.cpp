#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "geodesic/treewidth_distance.hpp"

namespace {

using namespace geodesic;

void BM_TreewidthDistance(benchmark::State& state) {
    testing::Rng rng(6);
    const auto k = static_cast<std::size_t>(state.range(0));
    const auto n = static_cast<std::size_t>(state.range(1));
    const auto dg = testing::random_partial_ktree(n, k, rng, 0.8, true, 1, 5);
    TreewidthOptions opts;
    opts.debug_checks = false;
    for (auto _ : state) {
        benchmark::DoNotOptimize(tw_distance_distribution(dg.graph, dg.td, opts));
    }
}
BENCHMARK(BM_TreewidthDistance)
    ->ArgsProduct({{1, 2, 3}, {1 << 9, 1 << 11}})
    ->Unit(benchmark::kMillisecond);

void BM_AllPairsOracle(benchmark::State& state) {
    testing::Rng rng(6);
    const auto dg = testing::random_partial_ktree(static_cast<std::size_t>(state.range(0)), 2, rng, 0.8, true, 1, 5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(distance_distribution_oracle(dg.graph));
    }
}
BENCHMARK(BM_AllPairsOracle)->Arg(1 << 9)->Arg(1 << 11)->Unit(benchmark::kMillisecond);

}  // namespace
