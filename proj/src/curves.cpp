#include "fund/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fund/error.hpp"
#include "fund/stats.hpp"

namespace fund {

namespace {

// Tenors computed from schedules (e.g. h - i*(alpha - delta)) can overshoot
// the last node by a few ulps.
constexpr double kTenorSlack = 1e-12;

}  // namespace

SpotCurve::SpotCurve(Date as_of, std::vector<double> tenors, std::vector<double> rates)
    : as_of_(as_of), tenors_(std::move(tenors)), rates_(std::move(rates)) {
    if (tenors_.empty() || tenors_.size() != rates_.size()) {
        fail(ErrorCategory::Domain, "curve " + as_of_.iso() + ": need equal, non-zero numbers of tenors and rates");
    }
    for (std::size_t i = 0; i < tenors_.size(); ++i) {
        if (!(tenors_[i] > 0.0) || !std::isfinite(tenors_[i])) {
            fail(ErrorCategory::Domain, "curve " + as_of_.iso() + ": tenors must be positive");
        }
        if (i > 0 && !(tenors_[i] > tenors_[i - 1])) {
            fail(ErrorCategory::Domain, "curve " + as_of_.iso() + ": tenors must be strictly ascending");
        }
        if (!std::isfinite(rates_[i])) {
            fail(ErrorCategory::Domain, "curve " + as_of_.iso() + ": rates must be finite");
        }
    }
}

double SpotCurve::zero_rate(double tenor) const {
    if (!(tenor > 0.0) || tenor > tenors_.back() + kTenorSlack) {
        fail(ErrorCategory::Domain, "tenor " + std::to_string(tenor) + " outside (0, " +
                                        std::to_string(tenors_.back()) + "] on curve " + as_of_.iso());
    }
    if (tenor <= tenors_.front()) return rates_.front();
    if (tenor >= tenors_.back()) return rates_.back();
    const auto hi = static_cast<std::size_t>(
        std::upper_bound(tenors_.begin(), tenors_.end(), tenor) - tenors_.begin());
    const std::size_t lo = hi - 1;
    const double w = (tenor - tenors_[lo]) / (tenors_[hi] - tenors_[lo]);
    return rates_[lo] + w * (rates_[hi] - rates_[lo]);
}

double zero_rate(const SpotCurve& curve, double tenor) { return curve.zero_rate(tenor); }

double forward_rate(const SpotCurve& curve, double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 > t1)) {
        fail(ErrorCategory::Domain, "forward needs 0 <= t1 < t2, got (" + std::to_string(t1) + ", " +
                                        std::to_string(t2) + ")");
    }
    const double accrued_to_t1 = t1 == 0.0 ? 0.0 : curve.zero_rate(t1) * t1;
    return (curve.zero_rate(t2) * t2 - accrued_to_t1) / (t2 - t1);
}

LinearFit fit_linear(const SpotCurve& curve) {
    const auto x = curve.tenors();
    const auto y = curve.rates();
    const std::size_t n = x.size();
    if (n < 3) {
        fail(ErrorCategory::InsufficientData,
             "linear fit on curve " + curve.as_of().iso() + " needs at least 3 nodes, got " + std::to_string(n));
    }

    double x_mean = 0.0, y_mean = 0.0, y_scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        x_mean += x[i];
        y_mean += y[i];
        y_scale = std::max(y_scale, std::abs(y[i]));
    }
    x_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - x_mean;
        const double dy = y[i] - y_mean;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }

    // Identical rates leave only rounding noise in syy.
    const double noise = 4.0 * std::numeric_limits<double>::epsilon() * y_scale;
    if (syy <= static_cast<double>(n) * noise * noise) {
        return {LinearCurve{y_mean, 0.0}, FitDiagnostics{1.0, 1.0}};
    }

    const double b = sxy / sxx;
    const double a = y_mean - b * x_mean;
    double sse = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (a + b * x[i]);
        sse += r * r;
    }

    const double r_squared = std::clamp(1.0 - sse / syy, 0.0, 1.0);
    const double df = static_cast<double>(n - 2);
    const double se_b = std::sqrt(sse / df / sxx);
    const double t = se_b > 0.0 ? b / se_b : std::numeric_limits<double>::infinity();
    return {LinearCurve{a, b}, FitDiagnostics{r_squared, stats::student_t_two_sided_p(t, df)}};
}

CurveHistory::CurveHistory(std::vector<SpotCurve> entries, long max_staleness_days)
    : entries_(std::move(entries)), max_staleness_days_(max_staleness_days) {
    if (max_staleness_days_ < 0) fail(ErrorCategory::Config, "max staleness must be non-negative");
    for (std::size_t i = 1; i < entries_.size(); ++i) {
        const auto& prev = entries_[i - 1];
        const auto& cur = entries_[i];
        if (!(prev.as_of() < cur.as_of())) {
            fail(ErrorCategory::Domain, "history dates must be strictly ascending at " + cur.as_of().iso());
        }
        if (!std::ranges::equal(prev.tenors(), cur.tenors())) {
            fail(ErrorCategory::Domain, "curve " + cur.as_of().iso() + " does not share the history's tenor grid");
        }
    }
}

Date CurveHistory::first_date() const {
    if (entries_.empty()) fail(ErrorCategory::DataGap, "empty curve history");
    return entries_.front().as_of();
}

Date CurveHistory::last_date() const {
    if (entries_.empty()) fail(ErrorCategory::DataGap, "empty curve history");
    return entries_.back().as_of();
}

std::size_t CurveHistory::index_at_or_before(Date date) const {
    const auto it = std::upper_bound(entries_.begin(), entries_.end(), date,
                                     [](Date d, const SpotCurve& c) { return d < c.as_of(); });
    if (it == entries_.begin()) return entries_.size();
    return static_cast<std::size_t>(it - entries_.begin()) - 1;
}

const SpotCurve& CurveHistory::at(Date date) const {
    const std::size_t i = index_at_or_before(date);
    if (i == entries_.size() || days_between(entries_[i].as_of(), date) > max_staleness_days_) {
        fail(ErrorCategory::DataGap, "no curve in force on " + date.iso());
    }
    return entries_[i];
}

bool CurveHistory::covers(Date from, Date to) const {
    try {
        require_coverage(from, to);
        return true;
    } catch (const Error&) {
        return false;
    }
}

void CurveHistory::require_coverage(Date from, Date to) const {
    std::size_t i = index_at_or_before(from);
    if (i == entries_.size()) fail(ErrorCategory::DataGap, "no curve in force on " + from.iso());
    for (; i < entries_.size(); ++i) {
        const Date current = entries_[i].as_of();
        const bool last = i + 1 == entries_.size() || to < entries_[i + 1].as_of();
        // Last day this entry has to serve.
        const Date served_until = last ? to : entries_[i + 1].as_of().plus_days(-1);
        if (days_between(current, served_until) > max_staleness_days_) {
            fail(ErrorCategory::DataGap,
                 "no curve in force on " + current.plus_days(max_staleness_days_ + 1).iso());
        }
        if (last) return;
    }
}

CurveHistory CurveHistory::truncated_after(Date date) const {
    const std::size_t i = index_at_or_before(date);
    std::vector<SpotCurve> kept(entries_.begin(),
                                i == entries_.size() ? entries_.begin() : entries_.begin() + static_cast<long>(i) + 1);
    return CurveHistory(std::move(kept), max_staleness_days_);
}

}  // namespace fund
