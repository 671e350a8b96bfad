#include "fund/schedule.hpp"

#include <cmath>
#include <string>

#include "fund/date.hpp"
#include "fund/error.hpp"

namespace fund {

namespace {

// Roll counts are ceilings of ratios that are often integers in exact
// arithmetic; the slack stops 10.000000001 from becoming 11.
constexpr double kCountSlack = 1e-9;

}  // namespace

FundingSetup::FundingSetup(double horizon, double buffer, double phi)
    : horizon_(horizon), buffer_(buffer), phi_(phi) {
    if (!(buffer_ > 0.0) || !(buffer_ <= horizon_) || !std::isfinite(horizon_)) {
        fail(ErrorCategory::Config, "funding setup needs 0 < buffer <= horizon");
    }
    if (!(phi_ > 0.0) || !(phi_ <= 1.0)) {
        fail(ErrorCategory::Config, "bid-ask fraction phi must lie in (0, 1]");
    }
}

FundingSetup FundingSetup::standard() { return FundingSetup(1.0, 1.0 / 12.0, 0.75); }

double FundingSetup::horizon_days() const { return horizon_ * kDaysPerYear; }

int n_rolls(double h_n, double alpha_n) {
    if (!(h_n > 0.0)) fail(ErrorCategory::Domain, "horizon must be positive");
    if (alpha_n >= h_n) return 0;
    if (!(alpha_n > 1.0)) {
        fail(ErrorCategory::BufferViolation,
             "roll length " + std::to_string(alpha_n) + " buffer units cannot progress (must exceed 1)");
    }
    return static_cast<int>(std::ceil((h_n - alpha_n) / (alpha_n - 1.0) - kCountSlack));
}

double gross_excess(double h_n, double alpha_n) { return 100.0 * n_rolls(h_n, alpha_n) / h_n; }

RollSchedule build_schedule(const FundingSetup& setup, double alpha) {
    RollSchedule schedule;
    schedule.alpha = alpha;
    for_each_roll(setup, alpha, [&](int i, double start, double tenor) {
        schedule.events.push_back({start, i == 0 ? 0.0 : setup.buffer(), tenor});
    });
    schedule.n_rolls = static_cast<int>(schedule.events.size()) - 1;
    return schedule;
}

std::vector<double> alpha_grid(const FundingSetup& setup, double step_days) {
    if (!(step_days > 0.0)) fail(ErrorCategory::Config, "alpha grid step must be positive");
    const double step = step_days / kDaysPerYear;
    std::vector<double> grid;
    for (int k = 1;; ++k) {
        const double alpha = setup.buffer() + k * step;
        if (alpha >= setup.horizon() - 1e-12) break;
        grid.push_back(alpha);
    }
    grid.push_back(setup.horizon());
    return grid;
}

}  // namespace fund
