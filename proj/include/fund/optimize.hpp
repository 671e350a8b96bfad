#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "fund/cost.hpp"
#include "fund/curves.hpp"
#include "fund/execution.hpp"
#include "fund/schedule.hpp"

namespace fund {

enum class Classification { Term, Shortest, Interior, AllEquivalent };

std::string_view to_string(Classification c);

/// Costs within this distance (rate units) of the minimum count as ties.
inline constexpr double kTieTolerance = 1e-12;

struct OptimalRoll {
    double alpha_star = 0.0;
    double cost = 0.0;
    std::size_t star_index = 0;     // position of alpha_star in `alphas`
    std::vector<double> tie_set;    // ascending
    Classification classification = Classification::Term;
    std::vector<double> alphas;     // evaluated grid
    std::vector<double> costs;      // cost at each grid point
};

/// Picks the optimum from a fully evaluated grid. Ties go to the largest alpha.
OptimalRoll select_optimum(std::vector<double> alphas, std::vector<double> costs);

/// Exhaustive minimisation of cav over `alphas` (the daily grid by default).
OptimalRoll optimal_roll(const CurveProvider& provider, const FundingSetup& setup,
                         std::span<const double> alphas, Execution exec = Execution::Parallel);
OptimalRoll optimal_roll(const CurveProvider& provider, const FundingSetup& setup);

/// Serial reference for optimal_roll; a plain loop with no threading.
OptimalRoll optimal_roll_serial(const CurveProvider& provider, const FundingSetup& setup,
                                std::span<const double> alphas);

/// realized_cost for every grid alpha, starting on `start`.
std::vector<double> realized_costs(const CurveHistory& history, const FundingSetup& setup,
                                   std::span<const double> alphas, Date start,
                                   Execution exec = Execution::Parallel);

/// Best roll with hindsight: minimises realized_cost over the grid.
OptimalRoll evpi_roll(const CurveHistory& history, const FundingSetup& setup, Date start,
                      std::span<const double> alphas, Execution exec = Execution::Parallel);
OptimalRoll evpi_roll(const CurveHistory& history, const FundingSetup& setup, Date start);

}  // namespace fund
