#include "fund/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fund/error.hpp"

namespace fund {

namespace {

void require_ordered(double t1, double t2) {
    if (!(t1 >= 0.0) || !(t2 > t1)) {
        fail(ErrorCategory::Domain, "rate query needs 0 <= t1 < t2, got (" + std::to_string(t1) + ", " +
                                        std::to_string(t2) + ")");
    }
}

double short_end(const TermStructure& curve) {
    return std::visit(
        [](const auto& c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, SpotCurve>) {
                return c.short_rate();
            } else {
                return c.a;
            }
        },
        curve);
}

}  // namespace

PredictorParams PredictorParams::from_days(double lambda_days, double theta_per_day, double omega) {
    return PredictorParams{lambda_days / kDaysPerYear, theta_per_day, omega};
}

void PredictorParams::validate() const {
    if (!(lambda_years >= 0.0 && lambda_years <= 10.0)) {
        fail(ErrorCategory::Config, "EWMA decay must lie in [0, 10] years");
    }
    if (!(theta_per_day >= 0.0)) fail(ErrorCategory::Config, "gradient threshold must be non-negative");
    if (!(omega >= 0.0 && omega <= 1.0)) fail(ErrorCategory::Config, "gradient scaling must lie in [0, 1]");
}

double zero_rate(const TermStructure& curve, double tenor) {
    return std::visit([tenor](const auto& c) { return c.zero_rate(tenor); }, curve);
}

double QProvider::forward(double t1, double t2) const {
    require_ordered(t1, t2);
    if (const auto* line = std::get_if<LinearCurve>(&curve_)) {
        return line->a + line->b * (t1 + t2);
    }
    return forward_rate(std::get<SpotCurve>(curve_), t1, t2);
}

double ConstantProvider::forward(double t1, double t2) const {
    require_ordered(t1, t2);
    return zero_rate(curve_, t2 - t1);
}

EwmaProvider::EwmaProvider(TermStructure curve, ShiftForecast forecast)
    : curve_(std::move(curve)), forecast_(forecast), short_rate_(short_end(curve_)) {}

double EwmaProvider::forward(double t1, double t2) const {
    require_ordered(t1, t2);
    const double shift = forecast_.gradient_effective * kDaysPerYear * t1;
    // The short end may fall to zero but not through it.
    const double floor = -std::max(short_rate_, 0.0);
    return zero_rate(curve_, t2 - t1) + std::max(shift, floor);
}

PerfectInformationProvider::PerfectInformationProvider(const CurveHistory& history, Date start,
                                                       const FundingSetup& setup)
    : history_(&history), start_(start) {
    history.require_coverage(start, offset_date(start, setup.horizon()));
}

double PerfectInformationProvider::forward(double t1, double t2) const {
    require_ordered(t1, t2);
    return history_->at(offset_date(start_, t1)).zero_rate(t2 - t1);
}

QProvider q_provider(const SpotCurve& curve) { return QProvider(curve); }
QProvider q_provider(const LinearCurve& curve) { return QProvider(curve); }
ConstantProvider constant_provider(const SpotCurve& curve) { return ConstantProvider(curve); }
ConstantProvider constant_provider(const LinearCurve& curve) { return ConstantProvider(curve); }
EwmaProvider ewma_provider(const SpotCurve& curve, const ShiftForecast& forecast) {
    return EwmaProvider(curve, forecast);
}
PerfectInformationProvider pi_provider(const CurveHistory& history, Date start, const FundingSetup& setup) {
    return PerfectInformationProvider(history, start, setup);
}

EwmaFilter::EwmaFilter(double lambda_years) : lambda_days_(lambda_years * kDaysPerYear) {
    if (!(lambda_years >= 0.0)) fail(ErrorCategory::Domain, "EWMA decay must be non-negative");
}

void EwmaFilter::update(Date date, double rate) {
    if (!seen_) {
        seen_ = true;
        last_date_ = date;
        last_rate_ = rate;
        return;
    }
    const long gap = days_between(last_date_, date);
    if (gap <= 0) fail(ErrorCategory::Domain, "EWMA observations must be strictly ascending at " + date.iso());
    const double change = (rate - last_rate_) / static_cast<double>(gap);
    if (changes_ == 0) {
        average_ = change;
    } else {
        const double keep = lambda_days_ > 0.0 ? std::exp(-static_cast<double>(gap) / lambda_days_) : 0.0;
        average_ = keep * average_ + (1.0 - keep) * change;
    }
    ++changes_;
    last_date_ = date;
    last_rate_ = rate;
}

double EwmaFilter::gradient() const {
    if (changes_ == 0) fail(ErrorCategory::InsufficientData, "EWMA gradient needs at least 2 observations");
    return average_;
}

double ewma_gradient(std::span<const DatedRate> short_rates, double lambda_years) {
    if (short_rates.size() < 2) {
        fail(ErrorCategory::InsufficientData, "EWMA gradient needs at least 2 observations");
    }
    EwmaFilter filter(lambda_years);
    for (const auto& obs : short_rates) filter.update(obs.date, obs.rate);
    return filter.gradient();
}

ShiftForecast refine_gradient(double gradient_raw, const PredictorParams& params, double short_rate_now,
                              double horizon_days) {
    double g = std::abs(gradient_raw) < params.theta_per_day ? 0.0 : params.omega * gradient_raw;
    if (g < 0.0 && horizon_days > 0.0) {
        g = std::max(g, -std::max(short_rate_now, 0.0) / horizon_days);
    }
    return {gradient_raw, g, short_rate_now};
}

std::vector<double> raw_gradients(const CurveHistory& history, double lambda_years) {
    std::vector<double> out;
    out.reserve(history.size());
    EwmaFilter filter(lambda_years);
    for (const auto& curve : history.entries()) {
        filter.update(curve.as_of(), curve.short_rate());
        out.push_back(filter.ready() ? filter.gradient() : 0.0);
    }
    return out;
}

std::vector<ShiftForecast> ewma_forecasts(const CurveHistory& history, const PredictorParams& params,
                                          const FundingSetup& setup) {
    params.validate();
    const auto raw = raw_gradients(history, params.lambda_years);
    std::vector<ShiftForecast> out;
    out.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out.push_back(refine_gradient(raw[i], params, history[i].short_rate(), setup.horizon_days()));
    }
    return out;
}

}  // namespace fund
