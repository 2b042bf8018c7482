#include <benchmark/benchmark.h>

#include "uncervals/conformal.hpp"
#include "uncervals/oracle.hpp"
#include "uncervals/simgen.hpp"
#include "uncervals/turnbull.hpp"
#include "uncervals/weibull_ph.hpp"

using namespace uncervals;

namespace {

sim::SimOutput make_data(std::size_t n, std::uint64_t seed) {
    sim::SimConfig cfg = sim::preset("condcov");
    cfg.n = n;
    cfg.seed = seed;
    return sim::simulate(cfg);
}

void BM_Simulate(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(make_data(n, seed++));
    }
}
BENCHMARK(BM_Simulate)->Arg(500)->Arg(2000);

void BM_TurnbullFit(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)), 3).dataset;
    for (auto _ : state) {
        benchmark::DoNotOptimize(turnbull_fit(data));
    }
}
BENCHMARK(BM_TurnbullFit)->Arg(250)->Arg(1000);

void BM_WeibullPhFit(benchmark::State& state) {
    const auto data = make_data(static_cast<std::size_t>(state.range(0)), 4).dataset;
    for (auto _ : state) {
        benchmark::DoNotOptimize(weibull_ph_fit(data));
    }
}
BENCHMARK(BM_WeibullPhFit)->Arg(250)->Arg(1000);

void BM_BootstrapCalibrate(benchmark::State& state) {
    const auto out = make_data(static_cast<std::size_t>(state.range(0)), 5);
    const OracleModel oracle(2.0, 1.0, Link::abs_linear({-0.3}));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            conformal::calibrate(oracle, out.dataset, 0.1, 1.0, conformal::Mode::estar, seed++));
    }
}
BENCHMARK(BM_BootstrapCalibrate)->Arg(250)->Arg(2000);

void BM_IntervalDistribution(benchmark::State& state) {
    const auto out = make_data(static_cast<std::size_t>(state.range(0)), 6);
    const OracleModel oracle(2.0, 1.0, Link::abs_linear({-0.3}));
    const auto scores = conformal::border_scores(oracle, out.dataset);
    for (auto _ : state) {
        double acc = 0.0;
        for (int k = 1; k < 10; ++k) acc += conformal::interval_distribution(scores, k / 10.0);
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(BM_IntervalDistribution)->Arg(500)->Arg(5000);

}  // namespace

BENCHMARK_MAIN();
