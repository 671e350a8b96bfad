#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fund/date.hpp"

namespace fund {

/// y(T) = a + b*T, continuously compounded.
struct LinearCurve {
    double a = 0.0;  // intercept, per year
    double b = 0.0;  // slope, per year of tenor

    double zero_rate(double tenor) const { return a + b * tenor; }
};

/// Dated zero curve (continuous compounding) on an ascending tenor grid.
///
/// Zero rates are linearly interpolated between nodes, held flat below the
/// shortest tenor, and undefined beyond the longest.
class SpotCurve {
public:
    /// Throws Error(Domain) unless tenors are strictly ascending and positive,
    /// rates are finite, and both sequences have the same non-zero length.
    SpotCurve(Date as_of, std::vector<double> tenors, std::vector<double> rates);

    Date as_of() const { return as_of_; }
    std::span<const double> tenors() const { return tenors_; }
    std::span<const double> rates() const { return rates_; }
    std::size_t size() const { return tenors_.size(); }
    double max_tenor() const { return tenors_.back(); }
    /// Rate at the shortest tenor; the series the momentum filter tracks.
    double short_rate() const { return rates_.front(); }

    double zero_rate(double tenor) const;

private:
    Date as_of_;
    std::vector<double> tenors_;
    std::vector<double> rates_;
};

/// Zero rate at `tenor`. Throws Error(Domain) for tenor <= 0 or beyond the last node.
double zero_rate(const SpotCurve& curve, double tenor);

/// Continuously compounded forward between t1 and t2:
/// (y(t2)*t2 - y(t1)*t1) / (t2 - t1), with y(0)*0 taken as 0.
double forward_rate(const SpotCurve& curve, double t1, double t2);

struct FitDiagnostics {
    double r_squared = 0.0;
    double p_value = 1.0;  // two-sided, slope = 0 null
};

struct LinearFit {
    LinearCurve line;
    FitDiagnostics diagnostics;
};

/// Ordinary least squares of rates on tenors. Needs at least three nodes.
/// A flat curve reports b = 0, r_squared = 1 and p_value = 1.
LinearFit fit_linear(const SpotCurve& curve);

/// Date-ordered curves for one currency sharing a tenor grid.
///
/// Lookups return the most recent curve at or before the requested date, as
/// long as it is no more than `max_staleness_days` old; anything else is a
/// data gap.
class CurveHistory {
public:
    static constexpr long kDefaultMaxStalenessDays = 7;

    CurveHistory() = default;
    explicit CurveHistory(std::vector<SpotCurve> entries,
                          long max_staleness_days = kDefaultMaxStalenessDays);

    std::span<const SpotCurve> entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const SpotCurve& operator[](std::size_t i) const { return entries_[i]; }
    Date first_date() const;
    Date last_date() const;
    long max_staleness_days() const { return max_staleness_days_; }

    /// Index of the latest entry dated on or before `date`, or size() if none.
    std::size_t index_at_or_before(Date date) const;
    /// Curve in force on `date`. Throws Error(DataGap) naming the date.
    const SpotCurve& at(Date date) const;

    bool covers(Date from, Date to) const;
    /// Throws Error(DataGap) naming the first uncovered date in [from, to].
    void require_coverage(Date from, Date to) const;

    /// Copy holding only the entries dated on or before `date`.
    CurveHistory truncated_after(Date date) const;

private:
    std::vector<SpotCurve> entries_;
    long max_staleness_days_ = kDefaultMaxStalenessDays;
};

}  // namespace fund
