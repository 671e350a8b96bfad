#include "fund/schedule.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "fund/error.hpp"
#include "oracles.hpp"

namespace fund {
namespace {

TEST(NRolls, ReferenceValues) {
    EXPECT_EQ(n_rolls(12, 2), 10);
    EXPECT_EQ(n_rolls(12, 3), 5);
    EXPECT_EQ(n_rolls(12, 12), 0);
    EXPECT_EQ(n_rolls(12, 13), 0);
    EXPECT_EQ(n_rolls(12, 11), 1);
}

TEST(NRolls, BufferViolation) {
    try {
        n_rolls(12, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::BufferViolation);
    }
    EXPECT_THROW(n_rolls(12, 0.5), Error);
}

TEST(GrossExcess, ReferenceValues) {
    EXPECT_NEAR(gross_excess(12, 2), 250.0 / 3.0, 1e-12);
    EXPECT_NEAR(gross_excess(12, 3), 125.0 / 3.0, 1e-12);
    EXPECT_EQ(gross_excess(12, 12), 0.0);
}

TEST(GrossExcess, EqualsRollCountTimesBufferShare) {
    for (int h_n = 2; h_n <= 24; ++h_n)
        for (double a = 1.25; a <= h_n; a += 0.25)
            EXPECT_NEAR(gross_excess(h_n, a), 100.0 * n_rolls(h_n, a) / h_n, 1e-9);
}

TEST(BuildSchedule, StandardTwoMonthRoll) {
    const auto s = build_schedule(FundingSetup::standard(), 2.0 / 12.0);
    ASSERT_EQ(s.n_rolls, 10);
    ASSERT_EQ(s.events.size(), 11u);
    EXPECT_EQ(s.events[0].start, 0.0);
    EXPECT_EQ(s.events[0].sale_tenor, 0.0);
    EXPECT_NEAR(s.events[10].start, 10.0 / 12.0, 1e-15);
    EXPECT_NEAR(s.events[10].purchase_tenor, 2.0 / 12.0, 1e-15);
    for (std::size_t i = 1; i < s.events.size(); ++i) EXPECT_NEAR(s.events[i].sale_tenor, 1.0 / 12.0, 1e-15);
}

TEST(BuildSchedule, LastPurchaseIsCappedAtHorizon) {
    const auto s = build_schedule(FundingSetup::standard(), 5.0 / 12.0);
    // Rolls at 4/12 and 8/12; the second needs only 4/12.
    ASSERT_EQ(s.n_rolls, 2);
    EXPECT_NEAR(s.events[2].purchase_tenor, 4.0 / 12.0, 1e-15);
}

TEST(BuildSchedule, TermFundingHasNoRolls) {
    const auto s = build_schedule(FundingSetup::standard(), 1.0);
    EXPECT_EQ(s.n_rolls, 0);
    ASSERT_EQ(s.events.size(), 1u);
    EXPECT_EQ(s.events[0].purchase_tenor, 1.0);
}

TEST(BuildSchedule, RejectsAlphaWithinBuffer) {
    EXPECT_THROW(build_schedule(FundingSetup::standard(), 1.0 / 12.0), Error);
    EXPECT_THROW(build_schedule(FundingSetup::standard(), 0.05), Error);
}

TEST(FundingSetup, Validation) {
    EXPECT_THROW(FundingSetup(1.0, 0.0, 0.75), Error);
    EXPECT_THROW(FundingSetup(1.0, 2.0, 0.75), Error);
    EXPECT_THROW(FundingSetup(1.0, 0.1, 0.0), Error);
    EXPECT_THROW(FundingSetup(1.0, 0.1, 1.5), Error);
    EXPECT_NO_THROW(FundingSetup(1.0, 1.0 / 12.0, 1.0));
}

TEST(AlphaGrid, DailyDefault) {
    const auto setup = FundingSetup::standard();
    const auto grid = alpha_grid(setup);
    EXPECT_EQ(grid.size(), 335u);
    EXPECT_NEAR(grid.front(), 1.0 / 12.0 + 1.0 / 365.0, 1e-15);
    EXPECT_EQ(grid.back(), 1.0);
    for (std::size_t i = 1; i < grid.size(); ++i) EXPECT_LT(grid[i - 1], grid[i]);
}

TEST(AlphaGrid, CoarseStep) {
    const auto grid = alpha_grid(FundingSetup::standard(), 7.0);
    EXPECT_EQ(grid.back(), 1.0);
    EXPECT_NEAR(grid[1] - grid[0], 7.0 / 365.0, 1e-15);
}

// Every daily-grid alpha for every horizon length 2..24 buffers, against the
// step-by-step simulator.
TEST(ScheduleOracle, MatchesSimulatorAcrossGrid) {
    for (int h_n = 2; h_n <= 24; ++h_n) {
        const FundingSetup setup(h_n / 12.0, 1.0 / 12.0, 0.75);
        for (double alpha : alpha_grid(setup)) {
            const auto sim = oracle::simulate_rolls(setup.horizon(), setup.buffer(), alpha);
            const auto s = build_schedule(setup, alpha);
            ASSERT_EQ(s.n_rolls, sim.rolls) << "h_n=" << h_n << " alpha=" << alpha;
            ASSERT_EQ(s.events.size(), sim.purchases.size());
            for (std::size_t i = 0; i < s.events.size(); ++i) {
                EXPECT_NEAR(s.events[i].start, sim.purchases[i].start, 1e-12);
                EXPECT_NEAR(s.events[i].purchase_tenor, sim.purchases[i].tenor, 1e-12);
            }
        }
    }
}

TEST(ScheduleOracle, RollCountAndExcessAreMonotoneInAlpha) {
    for (int h_n = 2; h_n <= 24; ++h_n) {
        const FundingSetup setup(h_n / 12.0, 1.0 / 12.0, 0.75);
        int prev = 1 << 30;
        double prev_excess = 1e300;
        for (double alpha : alpha_grid(setup)) {
            const int n = n_rolls(h_n, alpha * 12.0);
            const double g = gross_excess(h_n, alpha * 12.0);
            EXPECT_LE(n, prev);
            EXPECT_LE(g, prev_excess + 1e-12);
            prev = n;
            prev_excess = g;
        }
    }
}

TEST(ForEachRoll, AgreesWithBuildSchedule) {
    const auto setup = FundingSetup::standard();
    for (double alpha : alpha_grid(setup, 5.0)) {
        const auto s = build_schedule(setup, alpha);
        std::size_t count = 0;
        for_each_roll(setup, alpha, [&](int i, double start, double tenor) {
            EXPECT_EQ(start, s.events[static_cast<std::size_t>(i)].start);
            EXPECT_EQ(tenor, s.events[static_cast<std::size_t>(i)].purchase_tenor);
            ++count;
        });
        EXPECT_EQ(count, s.events.size());
    }
}

}  // namespace
}  // namespace fund
