#include "fund/calibrate.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

#include "fund/error.hpp"
#include "fund/optimize.hpp"
#include "parallel.hpp"

namespace fund {

ParameterGrid ParameterGrid::standard() {
    ParameterGrid grid;
    grid.lambda_days = {30, 60, 90, 180, 365, 730};
    grid.theta_per_day = {0.0, 0.001, 0.0025, 0.005, 0.01};
    for (int i = 0; i <= 10; ++i) grid.omega.push_back(i / 10.0);
    return grid;
}

void ParameterGrid::validate() const {
    if (lambda_days.empty() || theta_per_day.empty() || omega.empty()) {
        fail(ErrorCategory::Config, "parameter grid has an empty axis");
    }
    for (double l : lambda_days) {
        if (!(l >= 0.0 && l <= 10.0 * kDaysPerYear)) fail(ErrorCategory::Config, "lambda outside [0, 10y]");
    }
    for (double t : theta_per_day) {
        if (!(t >= 0.0 && t <= 1.0)) fail(ErrorCategory::Config, "theta outside [0, 1]");
    }
    for (double w : omega) {
        if (!(w >= 0.0 && w <= 1.0)) fail(ErrorCategory::Config, "omega outside [0, 1]");
    }
}

namespace {

/// Q cost minus EWMA cost for every grid point on every window date of one currency.
/// Laid out [grid point][date].
std::vector<std::vector<double>> improvements(const CalibrationSeries& s, const FundingSetup& setup,
                                              const ParameterGrid& grid, std::span<const double> alphas,
                                              Execution exec) {
    const CurveHistory& history = *s.history;
    std::vector<std::size_t> rows;
    for (std::size_t k = 0; k < history.size(); ++k) {
        if (s.window.contains(history[k].as_of())) rows.push_back(k);
    }
    if (rows.empty()) {
        fail(ErrorCategory::DataGap, s.currency + ": no curves inside the calibration window " +
                                         s.window.first.iso() + " to " + s.window.last.iso());
    }
    for (std::size_t k : rows) {
        const Date d = history[k].as_of();
        history.require_coverage(d, offset_date(d, setup.horizon()));
    }

    std::vector<std::vector<double>> raw;  // [lambda][history index]
    raw.reserve(grid.lambda_days.size());
    for (double l : grid.lambda_days) raw.push_back(raw_gradients(history, l / kDaysPerYear));

    const std::size_t n_theta = grid.theta_per_day.size();
    const std::size_t n_omega = grid.omega.size();
    std::vector<std::vector<double>> out(grid.size(), std::vector<double>(rows.size()));

    detail::for_each_index(rows.size(), exec, [&](std::size_t r) {
        const std::size_t k = rows[r];
        const SpotCurve& curve = history[k];
        const auto realized = realized_costs(history, setup, alphas, curve.as_of(), Execution::Serial);
        const double q_cost = realized[optimal_roll(q_provider(curve), setup, alphas, Execution::Serial).star_index];

        // Many parameter sets refine to the same drift, most often zero.
        std::unordered_map<double, double> ewma_cost_by_drift;
        for (std::size_t li = 0; li < grid.lambda_days.size(); ++li) {
            for (std::size_t ti = 0; ti < n_theta; ++ti) {
                for (std::size_t wi = 0; wi < n_omega; ++wi) {
                    const auto params = PredictorParams::from_days(grid.lambda_days[li], grid.theta_per_day[ti],
                                                                   grid.omega[wi]);
                    const auto forecast =
                        refine_gradient(raw[li][k], params, curve.short_rate(), setup.horizon_days());
                    auto it = ewma_cost_by_drift.find(forecast.gradient_effective);
                    if (it == ewma_cost_by_drift.end()) {
                        const auto best =
                            optimal_roll(ewma_provider(curve, forecast), setup, alphas, Execution::Serial);
                        it = ewma_cost_by_drift.emplace(forecast.gradient_effective, realized[best.star_index])
                                 .first;
                    }
                    out[(li * n_theta + ti) * n_omega + wi][r] = q_cost - it->second;
                }
            }
        }
    });
    return out;
}

double mean_of(const std::vector<double>& xs) {
    return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

CalibrationResult calibrate(std::span<const CalibrationSeries> series, const FundingSetup& setup,
                            const ParameterGrid& grid, const CalibrationOptions& options) {
    grid.validate();
    if (series.empty()) fail(ErrorCategory::Config, "calibration needs at least one currency");
    const auto alphas = alpha_grid(setup, options.alpha_step_days);

    const std::size_t n_points = grid.size();
    // per_point[g][c]: mean improvement of grid point g for currency c.
    std::vector<std::vector<double>> per_point(n_points, std::vector<double>(series.size()));
    for (std::size_t c = 0; c < series.size(); ++c) {
        const auto table = improvements(series[c], setup, grid, alphas, options.exec);
        for (std::size_t g = 0; g < n_points; ++g) per_point[g][c] = mean_of(table[g]);
    }

    const std::size_t n_theta = grid.theta_per_day.size();
    const std::size_t n_omega = grid.omega.size();
    CalibrationResult result;
    result.grid_evaluations = n_points;
    result.surface.reserve(n_points);
    for (std::size_t g = 0; g < n_points; ++g) {
        const std::size_t li = g / (n_theta * n_omega);
        const std::size_t ti = (g / n_omega) % n_theta;
        const std::size_t wi = g % n_omega;
        result.surface.push_back({PredictorParams::from_days(grid.lambda_days[li], grid.theta_per_day[ti],
                                                             grid.omega[wi]),
                                  mean_of(per_point[g])});
    }

    // Scan in order of preference so the first strict maximum wins ties.
    std::vector<std::size_t> order(n_points);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        const auto& px = result.surface[x].params;
        const auto& py = result.surface[y].params;
        if (px.omega != py.omega) return px.omega < py.omega;
        if (px.theta_per_day != py.theta_per_day) return px.theta_per_day > py.theta_per_day;
        return px.lambda_years < py.lambda_years;
    });
    std::size_t best = order.front();
    for (std::size_t g : order) {
        if (result.surface[g].objective > result.surface[best].objective) best = g;
    }

    result.params = result.surface[best].params;
    result.objective = result.surface[best].objective;
    for (std::size_t c = 0; c < series.size(); ++c) {
        result.per_currency[series[c].currency] = per_point[best][c];
    }
    return result;
}

CalibrationResult calibrate(const std::map<std::string, CurveHistory>& histories, const FundingSetup& setup,
                            const DateRange& window, const ParameterGrid& grid,
                            const CalibrationOptions& options) {
    std::vector<CalibrationSeries> series;
    for (const auto& [currency, history] : histories) series.push_back({currency, &history, window});
    return calibrate(series, setup, grid, options);
}

}  // namespace fund
