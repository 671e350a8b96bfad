#include "fund/backtest.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fund/error.hpp"
#include "fund/optimize.hpp"
#include "oracles.hpp"
#include "synthetic.hpp"

namespace fund {
namespace {

const Date kStart = Date::from_ymd(1996, 1, 1);

TEST(PairedTTest, SmallSample) {
    const std::vector<double> d = {1.0, 2.0, 3.0};
    const auto r = paired_t_test(d);
    EXPECT_NEAR(r.t_stat, 3.4641016151377544, 1e-14);
    EXPECT_EQ(r.df, 2u);
    EXPECT_NEAR(r.p_value, 1.0 - std::sqrt(6.0 / 7.0), 1e-12);
    EXPECT_NEAR(r.p_value, 0.0742, 5e-5);
}

TEST(PairedTTest, MatchesReferenceOnRandomSamples) {
    std::mt19937_64 rng(31);
    std::uniform_int_distribution<int> size(2, 400);
    std::normal_distribution<double> shift(0.0, 0.5);
    for (int k = 0; k < 300; ++k) {
        std::normal_distribution<double> x(shift(rng), 1.0);
        std::vector<double> d(static_cast<std::size_t>(size(rng)));
        for (auto& v : d) v = x(rng);
        const auto r = paired_t_test(d);
        const auto ref = oracle::one_sample_t(d);
        EXPECT_NEAR(r.t_stat, ref.t, 1e-9 * std::max(1.0, std::abs(ref.t)));
        EXPECT_NEAR(r.p_value, ref.p, 1e-9);
    }
}

TEST(PairedTTest, DegenerateAndTooSmall) {
    const std::vector<double> constant = {0.5, 0.5, 0.5};
    const std::vector<double> one = {0.5};
    try {
        paired_t_test(constant);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::DegenerateSample);
    }
    try {
        paired_t_test(one);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::InsufficientData);
    }
}

TEST(PairedTTest, PValueNeverUnderflowsToZero) {
    std::vector<double> d;
    for (int i = 0; i < 500; ++i) d.push_back(1.0 + 1e-9 * (i % 3));
    const auto r = paired_t_test(d);
    EXPECT_GT(r.p_value, 0.0);
}

TEST(PairedTTestHac, ZeroLagsIsPlainTestUpToDegreesOfFreedomScaling) {
    const std::vector<double> d = {0.3, -0.1, 0.8, 0.4, 0.2, 0.9};
    const auto plain = paired_t_test(d);
    const auto hac = paired_t_test_hac(d, 0);
    // Lag-0 long-run variance divides by n rather than n - 1.
    EXPECT_NEAR(hac.t_stat, plain.t_stat * std::sqrt(6.0 / 5.0), 1e-12);
}

TEST(PairedTTestHac, PositiveAutocorrelationWidensInterval) {
    std::vector<double> d;
    double x = 0.0;
    std::mt19937_64 rng(2);
    std::normal_distribution<double> e(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        x = 0.9 * x + e(rng);
        d.push_back(0.3 + x);
    }
    EXPECT_LT(std::abs(paired_t_test_hac(d, 52).t_stat), std::abs(paired_t_test(d).t_stat));
}

TEST(Efficiency, Values) {
    EXPECT_NEAR(*efficiency(10.0, 14.0), 71.43, 0.005);
    EXPECT_DOUBLE_EQ(*efficiency(14.0, 14.0), 100.0);
    EXPECT_FALSE(efficiency(1.0, 0.0).has_value());
    EXPECT_FALSE(efficiency(1.0, -1.0).has_value());
}

class BacktestOnHistory : public ::testing::Test {
protected:
    static void SetUpTestSuite() { history_ = new CurveHistory(synthetic::random_walk(77, kStart, 160)); }
    static void TearDownTestSuite() { delete history_; }
    static DateRange window() { return {history_->first_date(), history_->last_date().plus_days(-365)}; }
    static CurveHistory* history_;
};
CurveHistory* BacktestOnHistory::history_ = nullptr;

TEST_F(BacktestOnHistory, EvpiDominates) {
    BacktestOptions opts;
    opts.alpha_step_days = 2.0;
    const auto r = run_backtest(*history_, FundingSetup::standard(), PredictorParams::from_days(30, 0.0, 0.6),
                                window(), opts);
    ASSERT_EQ(r.dates.size(), 107u);
    for (std::size_t i = 0; i < r.dates.size(); ++i) {
        EXPECT_LE(r.evpi_cost[i], r.q_cost[i]);
        EXPECT_LE(r.evpi_cost[i], r.ewma_cost[i]);
        EXPECT_NEAR(r.q_vs_ewma_bps[i], (r.q_cost[i] - r.ewma_cost[i]) * 1e4, 1e-9);
    }
}

TEST_F(BacktestOnHistory, RowsMatchIndependentRecomputation) {
    const auto setup = FundingSetup::standard();
    const auto params = PredictorParams::from_days(60, 0.0, 1.0);
    BacktestOptions opts;
    opts.alpha_step_days = 5.0;
    const auto r = run_backtest(*history_, setup, params, window(), opts);
    const auto grid = alpha_grid(setup, 5.0);
    const auto forecasts = ewma_forecasts(*history_, params, setup);
    for (std::size_t i = 0; i < r.dates.size(); i += 13) {
        const Date d = r.dates[i];
        const auto q = optimal_roll(q_provider(history_->at(d)), setup, grid);
        EXPECT_EQ(r.q_alpha[i], q.alpha_star);
        EXPECT_EQ(r.q_cost[i], realized_cost(*history_, setup, q.alpha_star, d).cav);
        const auto e = optimal_roll(ewma_provider(history_->at(d), forecasts[i]), setup, grid);
        EXPECT_EQ(r.ewma_alpha[i], e.alpha_star);
        EXPECT_EQ(r.evpi_cost[i], evpi_roll(*history_, setup, d, grid).cost);
    }
}

TEST_F(BacktestOnHistory, ParallelMatchesSerialBitwise) {
    BacktestOptions opts;
    opts.alpha_step_days = 3.0;
    const auto params = PredictorParams::from_days(90, 0.0, 0.5);
    const auto p = run_backtest(*history_, FundingSetup::standard(), params, window(), opts);
    opts.exec = Execution::Serial;
    const auto s = run_backtest(*history_, FundingSetup::standard(), params, window(), opts);
    EXPECT_EQ(p.q_cost, s.q_cost);
    EXPECT_EQ(p.ewma_cost, s.ewma_cost);
    EXPECT_EQ(p.evpi_cost, s.evpi_cost);
    EXPECT_EQ(p.ewma_alpha, s.ewma_alpha);
}

TEST_F(BacktestOnHistory, SummaryIsComputedFromTheRows) {
    BacktestOptions opts;
    opts.alpha_step_days = 4.0;
    opts.summary_from = history_->first_date().plus_days(7 * 30);
    const auto r = run_backtest(*history_, FundingSetup::standard(), PredictorParams::from_days(30, 0.0, 0.7),
                                window(), opts);
    std::vector<double> diffs;
    double q_evpi = 0.0;
    for (std::size_t i = 0; i < r.dates.size(); ++i) {
        if (r.dates[i] < *opts.summary_from) continue;
        diffs.push_back(r.q_cost[i] - r.ewma_cost[i]);
        q_evpi += r.q_cost[i] - r.evpi_cost[i];
    }
    ASSERT_EQ(r.summary.n, diffs.size());
    ASSERT_EQ(r.summary.n, 77u);
    double mean = 0.0;
    for (double d : diffs) mean += d;
    mean /= static_cast<double>(diffs.size());
    q_evpi /= static_cast<double>(diffs.size());
    EXPECT_NEAR(r.summary.mean_q_vs_ewma_bps, mean * 1e4, 1e-9);
    EXPECT_NEAR(r.summary.mean_q_vs_evpi_bps, q_evpi * 1e4, 1e-9);
    if (r.summary.t_test) EXPECT_NEAR(r.summary.t_test->p_value, oracle::one_sample_t(diffs).p, 1e-9);
    if (r.summary.efficiency_pct) EXPECT_NEAR(*r.summary.efficiency_pct, 100.0 * mean / q_evpi, 1e-9);
}

TEST(Backtest, FlatHistoryHasNoStatistic) {
    const auto history = synthetic::flat(kStart, 80, 0.02);
    BacktestOptions opts;
    opts.alpha_step_days = 7.0;
    const auto r = run_backtest(history, FundingSetup::standard(), PredictorParams{},
                                {kStart, kStart.plus_days(70)}, opts);
    EXPECT_EQ(r.summary.n, 11u);
    EXPECT_EQ(r.summary.mean_q_vs_ewma_bps, 0.0);
    EXPECT_FALSE(r.summary.t_test.has_value());
    EXPECT_FALSE(r.summary.efficiency_pct.has_value());
}

TEST(Backtest, WindowPastTheDataIsAGap) {
    const auto history = synthetic::flat(kStart, 80, 0.02);
    try {
        run_backtest(history, FundingSetup::standard(), PredictorParams{}, {kStart, history.last_date()});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.category(), ErrorCategory::DataGap);
    }
}

TEST(Backtest, RejectsInvalidParams) {
    const auto history = synthetic::flat(kStart, 80, 0.02);
    EXPECT_THROW(run_backtest(history, FundingSetup::standard(), PredictorParams{1.0, 0.0, 2.0},
                              {kStart, kStart.plus_days(7)}),
                 Error);
}

}  // namespace
}  // namespace fund
