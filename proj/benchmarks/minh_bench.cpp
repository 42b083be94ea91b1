#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "geodesic/minh.hpp"

namespace {

using namespace geodesic;

void BM_MinhTrimDp(benchmark::State& state) {
    testing::Rng rng(7);
    const Tree t = testing::random_tree(200, rng);
    const auto trim = static_cast<std::size_t>(state.range(0));
    const Measure m = Measure::igl();
    for (auto _ : state) {
        benchmark::DoNotOptimize(minh_trim_dp(t, m, 40, trim));
    }
}
BENCHMARK(BM_MinhTrimDp)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_MinhBruteForce(benchmark::State& state) {
    testing::Rng rng(8);
    const Tree t = testing::random_tree(40, rng);
    const Measure m = Measure::igl();
    for (auto _ : state) {
        benchmark::DoNotOptimize(minh_bruteforce(t, m, static_cast<std::size_t>(state.range(0))));
    }
}
BENCHMARK(BM_MinhBruteForce)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

}  // namespace
