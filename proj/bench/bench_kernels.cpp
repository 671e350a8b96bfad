// Serial reference versus OpenMP kernels on synthetic data.
#include <benchmark/benchmark.h>

#include <map>

#include "fund/backtest.hpp"
#include "fund/calibrate.hpp"
#include "fund/measures.hpp"
#include "fund/optimize.hpp"
#include "synthetic.hpp"

namespace {

using fund::Execution;

const fund::Date kStart = fund::Date::from_ymd(1995, 1, 2);

const fund::CurveHistory& history() {
    static const auto h = fund::synthetic::random_walk(2718, kStart, 18 * 52);
    return h;
}

Execution mode(const benchmark::State& state) { return state.range(0) ? Execution::Parallel : Execution::Serial; }

void set_label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_OptimalRoll(benchmark::State& state) {
    const auto setup = fund::FundingSetup::standard();
    const auto grid = fund::alpha_grid(setup);
    const auto provider = fund::constant_provider(history()[100]);
    for (auto _ : state) {
        auto r = mode(state) == Execution::Parallel ? fund::optimal_roll(provider, setup, grid, Execution::Parallel)
                                                    : fund::optimal_roll_serial(provider, setup, grid);
        benchmark::DoNotOptimize(r.cost);
    }
    set_label(state);
}
BENCHMARK(BM_OptimalRoll)->Arg(0)->Arg(1);

void BM_RealizedCosts(benchmark::State& state) {
    const auto setup = fund::FundingSetup::standard();
    const auto grid = fund::alpha_grid(setup);
    for (auto _ : state) {
        auto costs = fund::realized_costs(history(), setup, grid, history()[100].as_of(), mode(state));
        benchmark::DoNotOptimize(costs.data());
    }
    set_label(state);
}
BENCHMARK(BM_RealizedCosts)->Arg(0)->Arg(1);

void BM_Backtest(benchmark::State& state) {
    const auto setup = fund::FundingSetup::standard();
    const fund::DateRange window{history().first_date(), history().first_date().plus_days(2 * 365)};
    fund::BacktestOptions opts;
    opts.exec = mode(state);
    for (auto _ : state) {
        auto r = fund::run_backtest(history(), setup, fund::PredictorParams{}, window, opts);
        benchmark::DoNotOptimize(r.summary.n);
    }
    set_label(state);
}
BENCHMARK(BM_Backtest)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Calibrate(benchmark::State& state) {
    const auto setup = fund::FundingSetup::standard();
    const std::map<std::string, fund::CurveHistory> histories = {{"SYN", history()}};
    const fund::DateRange window{history().first_date(), history().first_date().plus_days(365)};
    for (auto _ : state) {
        auto r = fund::calibrate(histories, setup, window, fund::ParameterGrid::standard(), {.exec = mode(state)});
        benchmark::DoNotOptimize(r.objective);
    }
    set_label(state);
}
BENCHMARK(BM_Calibrate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
