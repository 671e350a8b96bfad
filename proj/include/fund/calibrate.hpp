#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "fund/curves.hpp"
#include "fund/date.hpp"
#include "fund/execution.hpp"
#include "fund/measures.hpp"
#include "fund/schedule.hpp"

namespace fund {

/// Candidate predictor parameters; every combination is evaluated.
struct ParameterGrid {
    std::vector<double> lambda_days;
    std::vector<double> theta_per_day;
    std::vector<double> omega;

    /// lambda {30, 60, 90, 180, 365, 730} days, theta {0, 0.001, 0.0025,
    /// 0.005, 0.01} per day, omega {0, 0.1, ..., 1}.
    static ParameterGrid standard();
    std::size_t size() const { return lambda_days.size() * theta_per_day.size() * omega.size(); }
    /// Throws Error(Config) for an empty axis or values outside
    /// lambda in [0, 3650] days, theta in [0, 1], omega in [0, 1].
    void validate() const;
};

struct GridScore {
    PredictorParams params;
    double objective = 0.0;
};

struct CalibrationResult {
    PredictorParams params;
    double objective = 0.0;                     // mean of per_currency, rate units
    std::map<std::string, double> per_currency;  // mean Q cost - EWMA cost at `params`
    std::size_t grid_evaluations = 0;
    std::vector<GridScore> surface;  // every grid point, in grid order
};

/// One currency's calibration input. The history must outlive the call.
struct CalibrationSeries {
    std::string currency;
    const CurveHistory* history = nullptr;
    DateRange window;
};

struct CalibrationOptions {
    double alpha_step_days = 1.0;
    Execution exec = Execution::Parallel;
};

/// Grid search for the predictor parameters that maximise the average
/// realized saving of EWMA-optimal over Q-optimal rolls, averaged per
/// currency and then across currencies.
///
/// Equal objectives resolve to the smallest omega, then the largest theta,
/// then the smallest lambda. Throws Error(DataGap) when a window date lacks
/// coverage through date + h or a currency has no dates in its window.
CalibrationResult calibrate(std::span<const CalibrationSeries> series, const FundingSetup& setup,
                            const ParameterGrid& grid, const CalibrationOptions& options = {});

/// All currencies share one calibration window.
CalibrationResult calibrate(const std::map<std::string, CurveHistory>& histories, const FundingSetup& setup,
                            const DateRange& window, const ParameterGrid& grid,
                            const CalibrationOptions& options = {});

}  // namespace fund
