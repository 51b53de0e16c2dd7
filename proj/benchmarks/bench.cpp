#include <benchmark/benchmark.h>

#include <random>

#include "sitepi/dynamics.hpp"
#include "sitepi/equilibria.hpp"
#include "sitepi/regimes.hpp"
#include "sitepi/sensitivity.hpp"
#include "sitepi/thresholds.hpp"

using namespace sitepi;

namespace {

ModelParams bench_params() {
    auto p = ModelParams::baseline();
    p.eps = 0.01;
    p.eps_F = 0.02;
    p.lambda_tot = 3700.0;
    return p;
}

void BM_rhs(benchmark::State& state) {
    auto p = bench_params();
    Schedule s;
    auto y = default_initial_conditions(p, s).to_array();
    std::array<double, kFullDim> f{};
    for (auto _ : state) {
        rhs_reduced(p, y.data(), f.data(), true);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_rhs);

void BM_equilibria(benchmark::State& state) {
    auto p = bench_params();
    for (auto _ : state) {
        auto eqs = sit_entomological_equilibria(p);
        benchmark::DoNotOptimize(eqs);
    }
}
BENCHMARK(BM_equilibria);

void BM_thresholds(benchmark::State& state) {
    auto p = bench_params();
    for (auto _ : state) {
        auto b = compute_thresholds(p);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_thresholds);

void BM_spectrum(benchmark::State& state) {
    auto p = bench_params();
    auto eqs = disease_free_equilibria(p);
    for (auto _ : state) {
        auto s = jacobian_spectrum(p, eqs.back().state);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_spectrum);

void BM_integrate_year(benchmark::State& state) {
    auto p = bench_params();
    Schedule s;
    s.horizon = 365.0;
    auto ic = default_initial_conditions(p, s);
    for (auto _ : state) {
        auto tr = integrate(p, s, ic);
        benchmark::DoNotOptimize(tr);
    }
}
BENCHMARK(BM_integrate_year)->Unit(benchmark::kMillisecond);

void BM_prcc(benchmark::State& state) {
    const std::size_t n = 500, k = 18;
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SampleMatrix X(n, std::vector<double>(k));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < k; ++j) X[i][j] = u(rng);
        y[i] = X[i][0] - X[i][1] + 0.2 * u(rng);
    }
    for (auto _ : state) {
        auto r = prcc(X, y, 100, 0.95, 2);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_prcc)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
