#include "fund/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fund/error.hpp"
#include "fund/optimize.hpp"
#include "fund/stats.hpp"
#include "parallel.hpp"

namespace fund {

namespace {

constexpr double kBps = 1e4;

double mean_of(std::span<const double> xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

void require_sample(std::span<const double> diffs) {
    if (diffs.size() < 2) {
        fail(ErrorCategory::InsufficientData,
             "t-test needs at least 2 observations, got " + std::to_string(diffs.size()));
    }
}

}  // namespace

TTestResult paired_t_test(std::span<const double> diffs) {
    require_sample(diffs);
    const auto n = static_cast<double>(diffs.size());
    const double mean = mean_of(diffs);
    double ss = 0.0;
    for (double d : diffs) ss += (d - mean) * (d - mean);
    const double variance = ss / (n - 1.0);
    if (!(variance > 0.0)) fail(ErrorCategory::DegenerateSample, "t-test sample has zero variance");

    const double t = mean / std::sqrt(variance / n);
    const double df = n - 1.0;
    return {t, stats::student_t_two_sided_p(t, df), diffs.size() - 1};
}

TTestResult paired_t_test_hac(std::span<const double> diffs, std::size_t lags) {
    require_sample(diffs);
    const std::size_t n = diffs.size();
    const double mean = mean_of(diffs);
    auto autocov = [&](std::size_t lag) {
        double s = 0.0;
        for (std::size_t i = lag; i < n; ++i) s += (diffs[i] - mean) * (diffs[i - lag] - mean);
        return s / static_cast<double>(n);
    };
    double long_run = autocov(0);
    const std::size_t max_lag = std::min(lags, n - 1);
    for (std::size_t l = 1; l <= max_lag; ++l) {
        const double weight = 1.0 - static_cast<double>(l) / static_cast<double>(max_lag + 1);
        long_run += 2.0 * weight * autocov(l);
    }
    if (!(long_run > 0.0)) fail(ErrorCategory::DegenerateSample, "long-run variance is not positive");

    const double t = mean / std::sqrt(long_run / static_cast<double>(n));
    const double df = static_cast<double>(n - 1);
    return {t, stats::student_t_two_sided_p(t, df), n - 1};
}

std::optional<double> efficiency(double mean_q_minus_ewma, double mean_q_minus_evpi) {
    if (!(mean_q_minus_evpi > 0.0)) return std::nullopt;
    return 100.0 * mean_q_minus_ewma / mean_q_minus_evpi;
}

BacktestSummary summarize(const BacktestReport& report, Date from, bool autocorrelation_robust,
                          std::size_t hac_lags) {
    std::vector<double> q_ewma, ewma_evpi, q_evpi;
    for (std::size_t i = 0; i < report.dates.size(); ++i) {
        if (report.dates[i] < from) continue;
        q_ewma.push_back(report.q_cost[i] - report.ewma_cost[i]);
        ewma_evpi.push_back(report.ewma_cost[i] - report.evpi_cost[i]);
        q_evpi.push_back(report.q_cost[i] - report.evpi_cost[i]);
    }

    BacktestSummary summary;
    summary.n = q_ewma.size();
    if (summary.n == 0) return summary;

    const double q_ewma_mean = mean_of(q_ewma);
    const double q_evpi_mean = mean_of(q_evpi);
    summary.mean_q_vs_ewma_bps = q_ewma_mean * kBps;
    summary.mean_ewma_vs_evpi_bps = mean_of(ewma_evpi) * kBps;
    summary.mean_q_vs_evpi_bps = q_evpi_mean * kBps;
    try {
        summary.t_test = autocorrelation_robust ? paired_t_test_hac(q_ewma, hac_lags) : paired_t_test(q_ewma);
    } catch (const Error& e) {
        if (e.category() != ErrorCategory::DegenerateSample &&
            e.category() != ErrorCategory::InsufficientData) {
            throw;
        }
    }
    // Gaps below the optimiser's tie tolerance are rounding, not information.
    if (q_evpi_mean > kTieTolerance) summary.efficiency_pct = efficiency(q_ewma_mean, q_evpi_mean);
    return summary;
}

BacktestReport run_backtest(const CurveHistory& history, const FundingSetup& setup,
                            const PredictorParams& params, const DateRange& window,
                            const BacktestOptions& options) {
    params.validate();
    const auto grid = alpha_grid(setup, options.alpha_step_days);
    const auto forecasts = ewma_forecasts(history, params, setup);

    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (window.contains(history[k].as_of())) rows.push_back(k);
    }
    for (std::size_t k : rows) {
        const Date d = history[k].as_of();
        history.require_coverage(d, offset_date(d, setup.horizon()));
    }

    const std::size_t n = rows.size();
    BacktestReport report;
    report.dates.resize(n);
    report.q_cost.resize(n);
    report.ewma_cost.resize(n);
    report.evpi_cost.resize(n);
    report.q_alpha.resize(n);
    report.ewma_alpha.resize(n);
    report.evpi_alpha.resize(n);
    report.q_vs_ewma_bps.resize(n);
    report.forecasts.resize(n);

    detail::for_each_index(n, options.exec, [&](std::size_t r) {
        const std::size_t k = rows[r];
        const SpotCurve& curve = history[k];
        const Date date = curve.as_of();

        const auto realized = realized_costs(history, setup, grid, date, Execution::Serial);
        const auto q = optimal_roll(q_provider(curve), setup, grid, Execution::Serial);
        const auto ewma = optimal_roll(ewma_provider(curve, forecasts[k]), setup, grid, Execution::Serial);
        const auto evpi = select_optimum(grid, realized);

        report.dates[r] = date;
        report.q_alpha[r] = q.alpha_star;
        report.ewma_alpha[r] = ewma.alpha_star;
        report.evpi_alpha[r] = evpi.alpha_star;
        report.q_cost[r] = realized[q.star_index];
        report.ewma_cost[r] = realized[ewma.star_index];
        // The true minimum, so hindsight dominates exactly even inside a tie band.
        report.evpi_cost[r] = *std::min_element(realized.begin(), realized.end());
        report.q_vs_ewma_bps[r] = (report.q_cost[r] - report.ewma_cost[r]) * kBps;
        report.forecasts[r] = forecasts[k];
    });

    report.summary = summarize(report, options.summary_from.value_or(window.first),
                               options.autocorrelation_robust, options.hac_lags);
    return report;
}

}  // namespace fund
