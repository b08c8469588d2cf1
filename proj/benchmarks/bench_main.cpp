// Microbenchmarks for the hot paths: structural index computation at huge
// iterates, the jump-tuple scan, unit-spectrum extraction and the numeric
// splitting route.

#include <benchmark/benchmark.h>

#include "sympath/blocks.hpp"
#include "sympath/cijt.hpp"
#include "sympath/config.hpp"
#include "sympath/evaluate.hpp"
#include "sympath/index.hpp"
#include "sympath/spectrum.hpp"
#include "sympath/splitting.hpp"
#include "sympath/verify.hpp"

namespace {

using namespace sympath;

PathSpec mixed_spec() {
    PathSpec p;
    p.blocks = {
        RotationBlock{Angle::exact_pi(2, 3)},
        RotationBlock{Angle::numeric(1.0)},
        QSignBlock{2, -1},
        HyperbolicBlock{0.7},
    };
    return p;
}

void BM_IndexHugeIterate(benchmark::State& state) {
    const Config cfg;
    const PathSpec p = mixed_spec();
    const std::int64_t m = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(index_at_iterate(p, m, cfg));
    }
}
BENCHMARK(BM_IndexHugeIterate)->Arg(1000)->Arg(1000000)->Arg(1000000000);

void BM_JumpScan(benchmark::State& state) {
    Config cfg;
    cfg.epsilon = 1e-3;
    cfg.n_max = state.range(0);
    cfg.want = 1000000; // never satisfied: measures the full scan
    const std::vector<double> means = {2.0, 1.4142135623730951, 3.3333333333333335};
    for (auto _ : state) {
        benchmark::DoNotOptimize(find_jump_tuples(means, 6, cfg.epsilon, cfg.want, cfg.n_max));
    }
}
BENCHMARK(BM_JumpScan)->Arg(10000)->Arg(100000);

void BM_UnitSpectrum(benchmark::State& state) {
    const Config cfg;
    const PathSpec p = mixed_spec();
    const Mat M = end_matrix(p, cfg);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unit_spectrum(M, cfg));
    }
}
BENCHMARK(BM_UnitSpectrum);

void BM_SplitNumeric(benchmark::State& state) {
    const Config cfg;
    const auto specs = make_random_collection(7, 1, cfg, true);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            splitting_numbers(specs[0], Angle::exact_pi(0, 1), cfg, SplitRoute::Numeric));
    }
}
BENCHMARK(BM_SplitNumeric);

} // namespace

BENCHMARK_MAIN();
