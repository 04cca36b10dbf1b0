#include <benchmark/benchmark.h>

#include "lspec/analysis.hpp"

using namespace lspec;

namespace {

void BM_sample_panel(benchmark::State& state) {
    const int n = int(state.range(0));
    const SimulationConfig cfg{n, 5 * n, 1};
    for (auto _ : state) {
        auto p = sample_panel(cfg, DistributionKind::ComplexGaussian, 1);
        benchmark::DoNotOptimize(p.data.data());
    }
}
BENCHMARK(BM_sample_panel)->Arg(100)->Arg(200);

void BM_build_m_tau(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto p = sample_panel({n, 5 * n, 1}, DistributionKind::ComplexGaussian, 1);
    for (auto _ : state) {
        auto m = build_m_tau(p, 1);
        benchmark::DoNotOptimize(m.a.data());
    }
}
BENCHMARK(BM_build_m_tau)->Arg(100)->Arg(200)->Arg(400);

void BM_hermitian_eigenvalues(benchmark::State& state) {
    const int n = int(state.range(0));
    const auto p = sample_panel({n, 5 * n, 1}, DistributionKind::ComplexGaussian, 1);
    const auto m = build_m_tau(p, 1);
    for (auto _ : state) {
        auto s = hermitian_eigenvalues(m);
        benchmark::DoNotOptimize(s.values.data());
    }
}
BENCHMARK(BM_hermitian_eigenvalues)->Arg(100)->Arg(200)->Arg(400);

void BM_density(benchmark::State& state) {
    const LsdModel model(0.2);
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(model.density(0.1 + x));
    }
}
BENCHMARK(BM_density);

void BM_cdf(benchmark::State& state) {
    const LsdModel model(2.5);
    double x = 0.0;
    for (auto _ : state) {
        x += 1e-6;
        benchmark::DoNotOptimize(model.cdf(0.5 + x));
    }
}
BENCHMARK(BM_cdf);

void BM_stieltjes(benchmark::State& state) {
    const LsdModel model(0.2);
    double u = -2.0;
    for (auto _ : state) {
        u += 1e-6;
        benchmark::DoNotOptimize(model.stieltjes({u, 0.3}));
    }
}
BENCHMARK(BM_stieltjes);

void BM_kolmogorov(benchmark::State& state) {
    const auto p = sample_panel({200, 1000, 1}, DistributionKind::ComplexGaussian, 1);
    const auto F = esd(hermitian_eigenvalues(build_m_tau(p, 1)));
    const LsdModel model(0.2);
    for (auto _ : state) benchmark::DoNotOptimize(kolmogorov_distance(F, model));
}
BENCHMARK(BM_kolmogorov);

} // namespace

BENCHMARK_MAIN();
