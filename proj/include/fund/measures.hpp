#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "fund/cost.hpp"
#include "fund/curves.hpp"
#include "fund/date.hpp"
#include "fund/schedule.hpp"

namespace fund {

/// EWMA predictor parameters. lambda is the decay constant in years,
/// theta the gradient threshold in rate per day, omega the gradient scaling.
struct PredictorParams {
    double lambda_years = 90.0 / kDaysPerYear;
    double theta_per_day = 0.005;
    double omega = 0.3;

    static PredictorParams from_days(double lambda_days, double theta_per_day, double omega);
    double lambda_days() const { return lambda_years * kDaysPerYear; }
    /// Throws Error(Config) outside lambda in [0, 10y], theta >= 0, omega in [0, 1].
    void validate() const;

    friend bool operator==(const PredictorParams&, const PredictorParams&) = default;
};

/// Predicted parallel drift of the curve, in rate per day.
struct ShiftForecast {
    double gradient_raw = 0.0;
    double gradient_effective = 0.0;
    double short_rate_now = 0.0;
};

/// A curve the providers can read zero rates from.
using TermStructure = std::variant<SpotCurve, LinearCurve>;

double zero_rate(const TermStructure& curve, double tenor);

/// Risk-neutral: future funding costs the forwards implied by today's curve.
class QProvider final : public CurveProvider {
public:
    explicit QProvider(TermStructure curve) : curve_(std::move(curve)) {}
    double forward(double t1, double t2) const override;
    Measure measure() const override { return Measure::Q; }

private:
    TermStructure curve_;
};

/// Today's curve shape persists: tenor tau costs today's spot tau rate at any date.
class ConstantProvider final : public CurveProvider {
public:
    explicit ConstantProvider(TermStructure curve) : curve_(std::move(curve)) {}
    double forward(double t1, double t2) const override;
    Measure measure() const override { return Measure::PConstant; }

private:
    TermStructure curve_;
};

/// Today's curve shifted in parallel by the forecast drift; the projected
/// short end is held at or above zero at every future date.
class EwmaProvider final : public CurveProvider {
public:
    EwmaProvider(TermStructure curve, ShiftForecast forecast);
    double forward(double t1, double t2) const override;
    Measure measure() const override { return Measure::PEwma; }
    const ShiftForecast& forecast() const { return forecast_; }

private:
    TermStructure curve_;
    ShiftForecast forecast_;
    double short_rate_;
};

/// Perfect foresight: a purchase at t1 costs the curve actually in force then.
/// Holds a reference; the history must outlive the provider.
class PerfectInformationProvider final : public CurveProvider {
public:
    /// Throws Error(DataGap) unless the history covers [start, start + h].
    PerfectInformationProvider(const CurveHistory& history, Date start, const FundingSetup& setup);
    double forward(double t1, double t2) const override;
    Measure measure() const override { return Measure::PerfectInformation; }

private:
    const CurveHistory* history_;
    Date start_;
};

QProvider q_provider(const SpotCurve& curve);
QProvider q_provider(const LinearCurve& curve);
ConstantProvider constant_provider(const SpotCurve& curve);
ConstantProvider constant_provider(const LinearCurve& curve);
EwmaProvider ewma_provider(const SpotCurve& curve, const ShiftForecast& forecast);
PerfectInformationProvider pi_provider(const CurveHistory& history, Date start,
                                       const FundingSetup& setup);

struct DatedRate {
    Date date;
    double rate = 0.0;
};

/// Exponentially weighted average of day-over-day rate changes.
///
/// Each observation gap of g days contributes the change per day over that
/// gap, and the running average decays by exp(-g / lambda_days) per gap. The
/// first change seeds the average. lambda = 0 tracks the latest change.
class EwmaFilter {
public:
    explicit EwmaFilter(double lambda_years);

    /// Observations must arrive in strictly ascending date order.
    void update(Date date, double rate);
    bool ready() const { return changes_ > 0; }
    /// Throws Error(InsufficientData) before the second observation.
    double gradient() const;

private:
    double lambda_days_;
    std::size_t changes_ = 0;
    Date last_date_;
    double last_rate_ = 0.0;
    bool seen_ = false;
    double average_ = 0.0;
};

/// Filtered gradient (rate per day) of a dated short-rate series.
double ewma_gradient(std::span<const DatedRate> short_rates, double lambda_years);

/// Thresholds, scales and floor-limits a raw gradient so the short rate
/// projected `horizon_days` ahead stays non-negative.
ShiftForecast refine_gradient(double gradient_raw, const PredictorParams& params,
                              double short_rate_now, double horizon_days);

/// Raw filtered gradient at every history date using only data up to that
/// date; 0 where fewer than two observations exist yet.
std::vector<double> raw_gradients(const CurveHistory& history, double lambda_years);

/// Refined forecasts at every history date, from raw_gradients.
std::vector<ShiftForecast> ewma_forecasts(const CurveHistory& history, const PredictorParams& params,
                                          const FundingSetup& setup);

}  // namespace fund
