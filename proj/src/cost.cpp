#include "fund/cost.hpp"

#include <algorithm>
#include <cmath>

#include "fund/error.hpp"

namespace fund {

std::string_view to_string(Measure measure) {
    switch (measure) {
        case Measure::Q: return "Q";
        case Measure::PConstant: return "P-CONST";
        case Measure::PEwma: return "P-EWMA";
        case Measure::PerfectInformation: return "PI";
        case Measure::Realized: return "Realized";
    }
    return "unknown";
}

CostResult cav(const CurveProvider& provider, const FundingSetup& setup, double alpha) {
    const double h = setup.horizon();
    const double delta = setup.buffer();
    const double phi = setup.phi();
    double total = 0.0;
    for_each_roll(setup, alpha, [&](int i, double start, double tenor) {
        if (i > 0) total -= phi * delta * provider.forward(start, start + delta);
        total += tenor * provider.forward(start, std::min(start + alpha, h));
    });
    if (!std::isfinite(total)) {
        fail(ErrorCategory::Measure, "provider returned a non-finite rate");
    }
    return {alpha, total / h, provider.measure()};
}

CostResult cav_linear(const LinearCurve& line, const FundingSetup& setup, double alpha,
                      LinearPricing pricing) {
    const double h = setup.horizon();
    const double delta = setup.buffer();
    const double phi = setup.phi();
    const double a = line.a;
    const double b = line.b;
    const bool forward = pricing == LinearPricing::Forward;

    const double first = std::min(alpha, h);
    double total = (a + b * first) * first;
    if (alpha < h) {
        const int n = n_rolls(h / delta, alpha / delta);
        for (int i = 1; i <= n; ++i) {
            const double s = i * (alpha - delta);
            const double q = i == n ? std::min(alpha, h - s) : alpha;
            const double drift = forward ? 2.0 * b * s : 0.0;
            total += -phi * delta * (a + drift + delta * b) + q * (a + drift + q * b);
        }
    }
    return {alpha, total / h, forward ? Measure::Q : Measure::PConstant};
}

CostResult realized_cost(const CurveHistory& history, const FundingSetup& setup, double alpha,
                         Date start) {
    history.require_coverage(start, offset_date(start, setup.horizon()));
    const double delta = setup.buffer();
    const double phi = setup.phi();
    double total = 0.0;
    for_each_roll(setup, alpha, [&](int i, double offset, double tenor) {
        const SpotCurve& curve = history.at(offset_date(start, offset));
        if (i > 0) total -= phi * delta * curve.zero_rate(delta);
        total += tenor * curve.zero_rate(tenor);
    });
    return {alpha, total / setup.horizon(), Measure::Realized};
}

}  // namespace fund
