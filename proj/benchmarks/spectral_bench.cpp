#include <benchmark/benchmark.h>

#include <random>

#include "qagap/evolution.hpp"
#include "qagap/spectral.hpp"
#include "qagap/walsh_hadamard.hpp"

using namespace qagap;

namespace {

SpectrumTable random_instance(int n) {
    InstanceSpec spec{InstanceKind::RandomPolyBounded, n};
    spec.seed = 5;
    return build_instance(spec);
}

void BM_SecularLowestPair(benchmark::State& state) {
    const auto table = random_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(gap(table, 0.37));
}
BENCHMARK(BM_SecularLowestPair)->DenseRange(6, 18, 6);

void BM_DenseLowestPair(benchmark::State& state) {
    const auto path = make_uniform_projector_path(random_instance(static_cast<int>(state.range(0))));
    for (auto _ : state) benchmark::DoNotOptimize(dense_oracle(path.materialize_dense(0.37)).values[1]);
}
BENCHMARK(BM_DenseLowestPair)->DenseRange(4, 10, 2)->Unit(benchmark::kMillisecond);

void BM_GroverMinGap(benchmark::State& state) {
    const auto table = build_instance({InstanceKind::Grover, static_cast<int>(state.range(0))});
    for (auto _ : state) benchmark::DoNotOptimize(min_gap(table).g_min);
}
BENCHMARK(BM_GroverMinGap)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_WalshHadamard(benchmark::State& state) {
    std::vector<Complex> v(std::size_t{1} << state.range(0));
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    for (auto& x : v) x = {gauss(rng), gauss(rng)};
    for (auto _ : state) {
        walsh_hadamard(std::span<Complex>(v));
        benchmark::DoNotOptimize(v.data());
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(v.size()));
}
BENCHMARK(BM_WalshHadamard)->DenseRange(8, 20, 4);

void BM_EvolveGrover(benchmark::State& state) {
    const auto path = make_uniform_projector_path(build_instance({InstanceKind::Grover, static_cast<int>(state.range(0))}));
    EvolveOptions opts;
    opts.steps = 1000;
    opts.step_doubling = false;
    for (auto _ : state) benchmark::DoNotOptimize(evolve(path, 20.0, opts).success_probability);
}
BENCHMARK(BM_EvolveGrover)->Arg(4)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
