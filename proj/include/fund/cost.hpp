#pragma once

#include <string_view>

#include "fund/curves.hpp"
#include "fund/date.hpp"
#include "fund/schedule.hpp"

namespace fund {

enum class Measure { Q, PConstant, PEwma, PerfectInformation, Realized };

std::string_view to_string(Measure measure);

/// Supplies F(t1, t2), the rate at which funding over [t1, t2] is expected to
/// be bought, assessed at the evaluation start under some measure.
/// Implementations are immutable and safe to query from several threads.
class CurveProvider {
public:
    virtual ~CurveProvider() = default;
    virtual double forward(double t1, double t2) const = 0;
    virtual Measure measure() const = 0;
};

struct CostResult {
    double alpha = 0.0;
    double cav = 0.0;  // average undiscounted cost per unit funding per year
    Measure measure = Measure::Q;
};

/// Expected average funding cost of rolling with length `alpha` to the horizon.
CostResult cav(const CurveProvider& provider, const FundingSetup& setup, double alpha);

/// How future purchases are priced in the linear closed form.
enum class LinearPricing {
    Constant,  // every purchase of tenor q costs a + b*q (curve shape persists)
    Forward,   // purchase over [s, s+q] costs the forward a + b*(2s + q)
};

/// Closed-form cost for a linear curve y(T) = a + bT. With Forward pricing
/// this matches cav under the risk-neutral provider; with Constant pricing it
/// matches cav under the constant-shape provider.
CostResult cav_linear(const LinearCurve& line, const FundingSetup& setup, double alpha,
                      LinearPricing pricing = LinearPricing::Constant);

/// Cost actually paid by rolling with length `alpha` from `start`: each
/// purchase is priced off the curve in force on its roll date, and each sale
/// is credited at phi times that curve's buffer-tenor rate.
CostResult realized_cost(const CurveHistory& history, const FundingSetup& setup, double alpha,
                         Date start);

}  // namespace fund
