#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fund/curves.hpp"
#include "fund/date.hpp"
#include "fund/execution.hpp"
#include "fund/measures.hpp"
#include "fund/schedule.hpp"

namespace fund {

struct TTestResult {
    double t_stat = 0.0;
    double p_value = 1.0;  // two-sided
    std::size_t df = 0;
};

/// One-sample t-test of mean(diffs) = 0 with df = n - 1.
/// Throws Error(InsufficientData) for n < 2 and Error(DegenerateSample) for
/// zero sample variance.
TTestResult paired_t_test(std::span<const double> diffs);

/// Same statistic with a Newey-West (Bartlett kernel) long-run variance over
/// `lags` autocovariances, for series built from overlapping windows.
TTestResult paired_t_test_hac(std::span<const double> diffs, std::size_t lags);

/// 100 * (Q - EWMA) / (Q - EVPI); empty when the denominator is not positive.
std::optional<double> efficiency(double mean_q_minus_ewma, double mean_q_minus_evpi);

struct BacktestSummary {
    std::size_t n = 0;
    double mean_q_vs_ewma_bps = 0.0;
    double mean_ewma_vs_evpi_bps = 0.0;
    double mean_q_vs_evpi_bps = 0.0;
    std::optional<TTestResult> t_test;      // empty for degenerate samples
    std::optional<double> efficiency_pct;   // empty when Q already matches EVPI
};

struct BacktestReport {
    std::vector<Date> dates;
    std::vector<double> q_cost;
    std::vector<double> ewma_cost;
    std::vector<double> evpi_cost;
    std::vector<double> q_alpha;
    std::vector<double> ewma_alpha;
    std::vector<double> evpi_alpha;
    std::vector<double> q_vs_ewma_bps;
    std::vector<ShiftForecast> forecasts;
    BacktestSummary summary;
};

struct BacktestOptions {
    double alpha_step_days = 1.0;
    /// Summary statistics use dates on or after this one; defaults to the window start.
    std::optional<Date> summary_from;
    /// Report the Newey-West t-test instead of the plain one.
    bool autocorrelation_robust = false;
    std::size_t hac_lags = 52;
    Execution exec = Execution::Parallel;
};

/// Replays every history date inside `window`: on each, the Q, EWMA and
/// perfect-information roll lengths are chosen once and held to the horizon,
/// then costed against the curves that actually followed.
///
/// Throws Error(DataGap) if any window date lacks coverage through date + h.
BacktestReport run_backtest(const CurveHistory& history, const FundingSetup& setup,
                            const PredictorParams& params, const DateRange& window,
                            const BacktestOptions& options = {});

/// Summary over the report rows dated on or after `from`.
BacktestSummary summarize(const BacktestReport& report, Date from, bool autocorrelation_robust = false,
                          std::size_t hac_lags = 52);

}  // namespace fund
