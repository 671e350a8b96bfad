#include "fund/measures.hpp"

#include <gtest/gtest.h>

#include <limits>
#include <random>
#include <vector>

#include "fund/error.hpp"
#include "fund/optimize.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fund {
namespace {

const Date kStart = Date::from_ymd(1999, 1, 4);

TEST(QProvider, LinearForwardMatchesSpotCurve) {
    const LinearCurve line{0.01, 0.02};
    const SpotCurve spot(kStart, {0.5, 1.0}, {0.02, 0.03});
    EXPECT_NEAR(q_provider(line).forward(0.5, 1.0), 0.04, 1e-15);
    EXPECT_NEAR(q_provider(spot).forward(0.5, 1.0), 0.04, 1e-15);
    EXPECT_EQ(q_provider(line).measure(), Measure::Q);
}

TEST(ConstantProvider, UsesSpotAtTheTenor) {
    const LinearCurve line{0.01, 0.02};
    EXPECT_NEAR(constant_provider(line).forward(0.5, 1.0), 0.02, 1e-15);
    EXPECT_NEAR(constant_provider(line).forward(0.0, 0.5), 0.02, 1e-15);
}

TEST(Providers, RejectBadIntervals) {
    const auto q = q_provider(LinearCurve{0.01, 0.0});
    EXPECT_THROW(q.forward(-0.1, 0.5), Error);
    EXPECT_THROW(q.forward(0.5, 0.5), Error);
    EXPECT_THROW(constant_provider(LinearCurve{0.01, 0.0}).forward(0.6, 0.5), Error);
}

TEST(EwmaProvider, ShiftsInParallelWithDrift) {
    const auto flat = synthetic::linear_spot(kStart, 0.02, 0.0);
    const ShiftForecast f{1e-4, 1e-4, 0.02};
    const auto p = ewma_provider(flat, f);
    EXPECT_NEAR(p.forward(0.5, 0.75), 0.02 + 1e-4 * 365 * 0.5, 1e-15);
    EXPECT_NEAR(p.forward(0.5, 0.75), 0.03825, 1e-15);
    EXPECT_EQ(p.measure(), Measure::PEwma);
}

TEST(EwmaProvider, ShortEndStopsAtZero) {
    const auto up = synthetic::linear_spot(kStart, 0.01, 0.01);
    const ShiftForecast f{-1e-3, -1e-3, 0.01};
    const auto p = ewma_provider(up, f);
    // Shift at t1 = 0.5 would be -0.1825; clamped to -0.01.
    EXPECT_NEAR(p.forward(0.5, 0.5 + 1.0 / 12.0), 0.0, 1e-15);
    EXPECT_NEAR(p.forward(0.5, 1.0), up.zero_rate(0.5) - 0.01, 1e-15);
}

TEST(EwmaProvider, ZeroDriftIsConstantProvider) {
    const auto history = synthetic::random_walk(3, kStart, 80);
    const auto setup = FundingSetup::standard();
    for (const auto& curve : history.entries()) {
        const auto e = ewma_provider(curve, ShiftForecast{0.0, 0.0, curve.short_rate()});
        const auto c = constant_provider(curve);
        for (double alpha : alpha_grid(setup, 29.0)) EXPECT_EQ(cav(e, setup, alpha).cav, cav(c, setup, alpha).cav);
    }
}

TEST(EwmaProvider, DegeneratesWithOmegaZeroOrInfiniteThreshold) {
    const auto history = synthetic::random_walk(4, kStart, 120);
    const auto setup = FundingSetup::standard();
    for (const auto& params : {PredictorParams::from_days(90, 0.0, 0.0),
                               PredictorParams{0.25, std::numeric_limits<double>::infinity(), 0.7}}) {
        const auto forecasts = ewma_forecasts(history, params, setup);
        for (std::size_t i = 0; i < history.size(); i += 7) {
            const auto e = optimal_roll(ewma_provider(history[i], forecasts[i]), setup);
            const auto c = optimal_roll(constant_provider(history[i]), setup);
            EXPECT_EQ(e.alpha_star, c.alpha_star);
            EXPECT_EQ(e.costs, c.costs);
        }
    }
}

TEST(PerfectInformation, ReadsTheCurveInForceAtEachDate) {
    const auto history = synthetic::weekly(kStart, 70, [](int w) { return std::pair{0.01 + 0.001 * w, 0.01}; });
    const auto setup = FundingSetup::standard();
    const auto pi = pi_provider(history, kStart, setup);
    EXPECT_NEAR(pi.forward(0.0, 0.5), history[0].zero_rate(0.5), 1e-15);
    // 30 days in: curve of day 28 (week 4).
    EXPECT_NEAR(pi.forward(30.0 / 365.0, 30.0 / 365.0 + 0.25), history[4].zero_rate(0.25), 1e-15);
    EXPECT_EQ(pi.measure(), Measure::PerfectInformation);
}

TEST(PerfectInformation, RequiresCoverage) {
    const auto history = synthetic::flat(kStart, 30, 0.02);
    EXPECT_THROW(pi_provider(history, kStart, FundingSetup::standard()), Error);
}

TEST(EwmaFilter, ConstantRatesGiveZero) {
    std::vector<DatedRate> rates;
    for (int w = 0; w < 30; ++w) rates.push_back({kStart.plus_days(7 * w), 0.02});
    EXPECT_EQ(ewma_gradient(rates, 0.25), 0.0);
}

TEST(EwmaFilter, LinearTrendGivesItsSlope) {
    std::vector<DatedRate> rates;
    for (int w = 0; w < 30; ++w) rates.push_back({kStart.plus_days(7 * w), 0.02 + 7e-5 * w});
    EXPECT_NEAR(ewma_gradient(rates, 0.25), 1e-5, 1e-15);
}

TEST(EwmaFilter, ZeroDecayTracksLatestChange) {
    const std::vector<DatedRate> rates = {
        {kStart, 0.02}, {kStart.plus_days(7), 0.03}, {kStart.plus_days(10), 0.024}};
    EXPECT_NEAR(ewma_gradient(rates, 0.0), -0.002, 1e-16);
}

TEST(EwmaFilter, MatchesExplicitWeightedSum) {
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<int> gap(1, 10);
    std::normal_distribution<double> move(0.0, 0.001);
    for (double lambda_days : {1.0, 30.0, 90.0, 365.0}) {
        std::vector<DatedRate> rates = {{kStart, 0.03}};
        std::vector<double> gaps, changes;
        for (int k = 0; k < 200; ++k) {
            const int g = gap(rng);
            const double r = rates.back().rate + move(rng);
            gaps.push_back(g);
            changes.push_back((r - rates.back().rate) / g);
            rates.push_back({rates.back().date.plus_days(g), r});
        }
        EXPECT_NEAR(ewma_gradient(rates, lambda_days / 365.0),
                    oracle::ewma_weighted_sum(gaps, changes, lambda_days), 1e-15);
    }
}

TEST(EwmaFilter, NeedsTwoObservations) {
    const std::vector<DatedRate> one = {{kStart, 0.02}};
    try {
        ewma_gradient(one, 0.25);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::InsufficientData);
    }
    EwmaFilter f(0.25);
    EXPECT_FALSE(f.ready());
    f.update(kStart, 0.01);
    EXPECT_THROW(f.update(kStart, 0.01), Error);
}

TEST(RefineGradient, ThresholdAndScaling) {
    const auto params = PredictorParams::from_days(90, 0.005, 0.3);
    EXPECT_EQ(refine_gradient(0.0001, params, 0.05, 365).gradient_effective, 0.0);
    EXPECT_EQ(refine_gradient(-0.0049, params, 0.05, 365).gradient_effective, 0.0);
    EXPECT_NEAR(refine_gradient(0.01, params, 0.05, 365).gradient_effective, 0.003, 1e-18);
    EXPECT_EQ(refine_gradient(0.01, params, 0.05, 365).gradient_raw, 0.01);
}

TEST(RefineGradient, ZeroFloor) {
    const auto params = PredictorParams::from_days(90, 0.005, 0.3);
    const auto f = refine_gradient(-0.01, params, 0.001, 365);
    EXPECT_NEAR(f.gradient_effective, -0.001 / 365, 1e-20);
    EXPECT_GE(f.short_rate_now + f.gradient_effective * 365, -1e-18);
    // Negative short rate: no further fall allowed.
    EXPECT_EQ(refine_gradient(-0.01, params, -0.002, 365).gradient_effective, 0.0);
    // Positive drift is never floored.
    EXPECT_NEAR(refine_gradient(0.01, params, -0.002, 365).gradient_effective, 0.003, 1e-18);
}

TEST(RefineGradient, ProjectedShortRateStaysNonNegative) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> g(-0.01, 0.01), s(0.0, 0.08), w(0.0, 1.0), t(0.0, 0.004);
    for (int k = 0; k < 10000; ++k) {
        const PredictorParams p{0.25, t(rng), w(rng)};
        const auto f = refine_gradient(g(rng), p, s(rng), 365.0);
        EXPECT_GE(f.short_rate_now + 365.0 * f.gradient_effective, -1e-15);
        if (std::abs(f.gradient_raw) < p.theta_per_day) EXPECT_EQ(f.gradient_effective, 0.0);
    }
}

TEST(PredictorParams, Validation) {
    EXPECT_NO_THROW(PredictorParams{}.validate());
    EXPECT_THROW((PredictorParams{11.0, 0.0, 0.5}.validate()), Error);
    EXPECT_THROW((PredictorParams{1.0, -0.1, 0.5}.validate()), Error);
    EXPECT_THROW((PredictorParams{1.0, 0.0, 1.5}.validate()), Error);
    EXPECT_DOUBLE_EQ(PredictorParams{}.lambda_days(), 90.0);
}

TEST(Forecasts, NoLookahead) {
    const auto history = synthetic::random_walk(21, kStart, 300);
    const auto setup = FundingSetup::standard();
    const PredictorParams params = PredictorParams::from_days(60, 0.0, 0.5);
    const auto full = ewma_forecasts(history, params, setup);
    for (std::size_t cut : {1u, 2u, 50u, 173u, 299u}) {
        const auto truncated = history.truncated_after(history[cut].as_of());
        const auto part = ewma_forecasts(truncated, params, setup);
        ASSERT_EQ(part.size(), cut + 1);
        for (std::size_t i = 0; i <= cut; ++i) {
            EXPECT_EQ(part[i].gradient_raw, full[i].gradient_raw);
            EXPECT_EQ(part[i].gradient_effective, full[i].gradient_effective);
        }
    }
}

TEST(Forecasts, FirstDateHasNoDrift) {
    const auto history = synthetic::random_walk(22, kStart, 10);
    const auto f = ewma_forecasts(history, PredictorParams::from_days(30, 0.0, 1.0), FundingSetup::standard());
    EXPECT_EQ(f[0].gradient_raw, 0.0);
    EXPECT_EQ(f[0].gradient_effective, 0.0);
}

}  // namespace
}  // namespace fund
