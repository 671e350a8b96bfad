#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "fund/cli.hpp"
#include "fund/error.hpp"
#include "fund/optimize.hpp"

namespace fund::cli {

namespace {

double round_to(double x, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::round(x * scale) / scale;
}

double rate_out(double x) { return round_to(x, 10); }
double bps_out(double x) { return round_to(x, 2); }

/// Writes via a sibling temporary and renames, so readers never see a partial file.
void write_atomically(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::create_directories(path.parent_path());
    const auto tmp = std::filesystem::path(path).concat(".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) fail(ErrorCategory::Config, tmp.string() + ": cannot write");
        out << contents;
        if (!out.flush()) fail(ErrorCategory::Config, tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

const CurveHistory& history_for(const std::map<std::string, CurveHistory>& histories, const std::string& currency) {
    const auto it = histories.find(currency);
    if (it == histories.end()) fail(ErrorCategory::Config, "currency '" + currency + "' is not listed in [data]");
    return it->second;
}

nlohmann::json params_json(const PredictorParams& p) {
    return {{"lambda_days", round_to(p.lambda_days(), 6)}, {"theta_per_day", p.theta_per_day}, {"omega", p.omega}};
}

}  // namespace

std::vector<FitRow> cmd_fit(const RunConfig& config) {
    const auto histories = load_histories(config);
    std::vector<FitRow> rows;
    for (const auto& [currency, history] : histories) {
        FitRow row{currency, history.size(), 0.0, 1.0};
        double log_p = 0.0;
        for (const auto& curve : history.entries()) {
            const auto fit = fit_linear(curve);
            row.mean_r_squared += fit.diagnostics.r_squared;
            log_p += std::log(fit.diagnostics.p_value);
        }
        row.mean_r_squared /= static_cast<double>(history.size());
        row.geomean_p_value = std::exp(log_p / static_cast<double>(history.size()));
        rows.push_back(row);
    }
    write_atomically(config.output_dir / "fit.csv", fit_table_csv(rows));
    return rows;
}

std::string fit_table_csv(const std::vector<FitRow>& rows) {
    std::string out = "currency,curves,mean_r_squared,geomean_p_value\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{:.10f},{:.6e}\n", r.currency, r.curves, r.mean_r_squared, r.geomean_p_value);
    }
    return out;
}

nlohmann::json cmd_optimize(const RunConfig& config, const std::string& currency, Date date, Measure measure) {
    const auto histories = load_histories(config);
    const CurveHistory& history = history_for(histories, currency);
    const SpotCurve& curve = history.at(date);
    const auto grid = alpha_grid(config.setup, config.alpha_step_days);

    nlohmann::json out;
    OptimalRoll best;
    switch (measure) {
        case Measure::Q:
            best = optimal_roll(q_provider(curve), config.setup, grid);
            break;
        case Measure::PConstant:
            best = optimal_roll(constant_provider(curve), config.setup, grid);
            break;
        case Measure::PEwma: {
            const PredictorParams params = config.params.value_or(PredictorParams{});
            // Only data up to the curve date feeds the filter.
            const auto past = history.truncated_after(curve.as_of());
            const ShiftForecast forecast = ewma_forecasts(past, params, config.setup).back();
            best = optimal_roll(ewma_provider(curve, forecast), config.setup, grid);
            out["params"] = params_json(params);
            out["forecast"] = {{"gradient_raw", forecast.gradient_raw},
                               {"gradient_effective", forecast.gradient_effective},
                               {"short_rate_now", rate_out(forecast.short_rate_now)}};
            break;
        }
        case Measure::PerfectInformation:
            best = evpi_roll(history, config.setup, curve.as_of(), grid);
            break;
        case Measure::Realized:
            fail(ErrorCategory::Config, "optimize supports Q, P-CONST, P-EWMA and PI");
    }

    out["currency"] = currency;
    out["date"] = curve.as_of().iso();
    out["measure"] = std::string(to_string(measure));
    out["alpha_star"] = rate_out(best.alpha_star);
    out["alpha_star_days"] = round_to(best.alpha_star * kDaysPerYear, 2);
    out["cost"] = rate_out(best.cost);
    out["classification"] = std::string(to_string(best.classification));
    out["tie_set"] = nlohmann::json::array();
    for (double a : best.tie_set) out["tie_set"].push_back(rate_out(a));
    out["curve"] = nlohmann::json::array();
    for (std::size_t i = 0; i < best.alphas.size(); ++i) {
        out["curve"].push_back({{"alpha", rate_out(best.alphas[i])}, {"cost", rate_out(best.costs[i])}});
    }
    return out;
}

namespace {

CalibrationResult calibrate_histories(const RunConfig& config, const std::map<std::string, CurveHistory>& histories) {
    std::vector<CalibrationSeries> series;
    for (const auto& [currency, history] : histories) {
        series.push_back({currency, &history, calibration_window(config, history)});
    }
    return calibrate(series, config.setup, config.grid, {config.alpha_step_days, Execution::Parallel});
}

}  // namespace

CalibrationResult cmd_calibrate(const RunConfig& config) {
    const auto histories = load_histories(config);
    auto result = calibrate_histories(config, histories);
    write_atomically(config.output_dir / "calibration.json", calibration_json(result).dump(2) + "\n");
    return result;
}

nlohmann::json calibration_json(const CalibrationResult& result) {
    nlohmann::json out;
    out["params"] = params_json(result.params);
    out["objective"] = rate_out(result.objective);
    out["objective_bps"] = bps_out(result.objective * 1e4);
    out["grid_evaluations"] = result.grid_evaluations;
    for (const auto& [currency, value] : result.per_currency) {
        out["per_currency"][currency] = rate_out(value);
        out["per_currency_bps"][currency] = bps_out(value * 1e4);
    }
    return out;
}

std::string backtest_csv(const BacktestReport& r) {
    std::string out = "date,q_cost,ewma_cost,evpi_cost,ewma_alpha,q_minus_ewma,ewma_minus_evpi\n";
    for (std::size_t i = 0; i < r.dates.size(); ++i) {
        out += fmt::format("{},{:.10f},{:.10f},{:.10f},{:.10f},{:.10f},{:.10f}\n", r.dates[i].iso(), r.q_cost[i],
                           r.ewma_cost[i], r.evpi_cost[i], r.ewma_alpha[i], r.q_cost[i] - r.ewma_cost[i],
                           r.ewma_cost[i] - r.evpi_cost[i]);
    }
    return out;
}

BacktestRun cmd_backtest(const RunConfig& config) {
    const auto histories = load_histories(config);
    BacktestRun run;
    if (config.params) {
        run.params = *config.params;
    } else {
        run.calibration = calibrate_histories(config, histories);
        run.params = run.calibration->params;
    }

    for (const auto& [currency, history] : histories) {
        const Date oos_start = calibration_window(config, history).last.plus_days(1);
        const DateRange window{history.first_date(),
                               history.last_date().plus_days(-whole_days(config.setup.horizon()))};
        BacktestOptions options;
        options.alpha_step_days = config.alpha_step_days;
        options.summary_from = oos_start;
        options.autocorrelation_robust = config.robust_t_test;
        options.hac_lags = config.hac_lags;
        auto report = run_backtest(history, config.setup, run.params, window, options);
        write_atomically(config.output_dir / ("backtest_" + currency + ".csv"), backtest_csv(report));
        run.out_of_sample_start.emplace(currency, oos_start);
        run.reports.emplace(currency, std::move(report));
    }
    write_atomically(config.output_dir / "summary.json", summary_json(run).dump(2) + "\n");
    return run;
}

nlohmann::json summary_json(const BacktestRun& run) {
    nlohmann::json out;
    out["params"] = params_json(run.params);
    if (run.calibration) out["calibration"] = calibration_json(*run.calibration);
    for (const auto& [currency, report] : run.reports) {
        const auto& s = report.summary;
        nlohmann::json c;
        c["out_of_sample_start"] = run.out_of_sample_start.at(currency).iso();
        c["n"] = s.n;
        c["mean_q_vs_ewma_bps"] = bps_out(s.mean_q_vs_ewma_bps);
        c["mean_ewma_vs_evpi_bps"] = bps_out(s.mean_ewma_vs_evpi_bps);
        c["mean_q_vs_evpi_bps"] = bps_out(s.mean_q_vs_evpi_bps);
        c["t_stat"] = s.t_test ? nlohmann::json(s.t_test->t_stat) : nlohmann::json(nullptr);
        c["p_value"] = s.t_test ? nlohmann::json(s.t_test->p_value) : nlohmann::json(nullptr);
        c["efficiency_pct"] = s.efficiency_pct ? nlohmann::json(bps_out(*s.efficiency_pct)) : nlohmann::json(nullptr);
        out["currencies"][currency] = c;
    }
    return out;
}

int exit_code(ErrorCategory category) {
    switch (category) {
        case ErrorCategory::Parse: return 2;
        case ErrorCategory::DataGap: return 3;
        case ErrorCategory::Config: return 4;
        default: return 5;
    }
}

}  // namespace fund::cli
