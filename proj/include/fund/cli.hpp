#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fund/backtest.hpp"
#include "fund/calibrate.hpp"
#include "fund/cost.hpp"
#include "fund/curves.hpp"
#include "fund/date.hpp"
#include "fund/error.hpp"
#include "fund/measures.hpp"
#include "fund/schedule.hpp"

namespace fund::cli {

/// Everything a command needs, loaded from an INI-style config file.
struct RunConfig {
    FundingSetup setup = FundingSetup::standard();
    double alpha_step_days = 1.0;
    long max_staleness_days = CurveHistory::kDefaultMaxStalenessDays;
    std::map<std::string, std::filesystem::path> data_paths;  // currency -> CSV

    int calibration_years = 5;
    std::optional<DateRange> calibration_window;  // shared window; else first N years per currency
    ParameterGrid grid = ParameterGrid::standard();

    std::optional<PredictorParams> params;  // given => calibration is skipped

    bool robust_t_test = false;
    std::size_t hac_lags = 52;

    std::filesystem::path output_dir = "out";
};

/// Parses the config file. Relative paths resolve against its directory.
/// Throws Error(Config) for unknown values and missing data sections.
RunConfig load_config(const std::filesystem::path& path);
RunConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);

Measure parse_measure(const std::string& text);

std::map<std::string, CurveHistory> load_histories(const RunConfig& config);

/// Calibration window for one currency: the shared window if configured,
/// otherwise the first `calibration_years` of its history.
DateRange calibration_window(const RunConfig& config, const CurveHistory& history);

struct FitRow {
    std::string currency;
    std::size_t curves = 0;
    double mean_r_squared = 0.0;
    double geomean_p_value = 1.0;
};

/// Linear-fit diagnostics per currency; also written to `<output>/fit.csv`.
std::vector<FitRow> cmd_fit(const RunConfig& config);
std::string fit_table_csv(const std::vector<FitRow>& rows);

/// Optimal roll for one curve under one measure, with the full cost curve.
nlohmann::json cmd_optimize(const RunConfig& config, const std::string& currency, Date date, Measure measure);

/// Joint calibration; also written to `<output>/calibration.json`.
CalibrationResult cmd_calibrate(const RunConfig& config);
nlohmann::json calibration_json(const CalibrationResult& result);

struct BacktestRun {
    PredictorParams params;
    std::optional<CalibrationResult> calibration;
    std::map<std::string, BacktestReport> reports;
    std::map<std::string, Date> out_of_sample_start;
};

/// Calibrates unless params are configured, then replays every currency.
/// Writes `<output>/backtest_<CCY>.csv` per currency and `<output>/summary.json`.
BacktestRun cmd_backtest(const RunConfig& config);
nlohmann::json summary_json(const BacktestRun& run);
std::string backtest_csv(const BacktestReport& report);

/// Process exit code for an error category (0 is success).
int exit_code(ErrorCategory category);

/// Entry point shared by the `fund` executable and its tests.
int run(int argc, char** argv);

}  // namespace fund::cli
