#include <benchmark/benchmark.h>

#include "quadrisect/census.hpp"
#include "quadrisect/enumerate.hpp"
#include "quadrisect/factory.hpp"

using namespace quadrisect;

static void BM_CensusBruteforce(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(census_bruteforce(n));
    }
}
BENCHMARK(BM_CensusBruteforce)->Arg(12)->Arg(24)->Arg(48);

static void BM_GeneralPositionCheck(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PolygonalKnot knot = random_gp_knot(n, 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_general_position(knot));
    }
}
BENCHMARK(BM_GeneralPositionCheck)->Arg(8)->Arg(12);

static void BM_EnumerateTrefoil(benchmark::State& state) {
    const PolygonalKnot knot = standard_knot(KnotKind::HexTrefoil);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_quadrisecants(knot));
    }
}
BENCHMARK(BM_EnumerateTrefoil);

static void BM_EnumerateRandom(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PolygonalKnot knot = random_gp_knot(n, 11);
    EnumerationOptions opts;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_quadrisecants(knot, Tolerance{}, opts));
    }
}
BENCHMARK(BM_EnumerateRandom)->Args({10, 1})->Args({12, 1})->Args({12, 4});

BENCHMARK_MAIN();
