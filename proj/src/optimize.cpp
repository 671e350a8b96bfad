#include "fund/optimize.hpp"

#include <algorithm>
#include <cmath>

#include "fund/error.hpp"
#include "parallel.hpp"

namespace fund {

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::Term: return "Term";
        case Classification::Shortest: return "Shortest";
        case Classification::Interior: return "Interior";
        case Classification::AllEquivalent: return "AllEquivalent";
    }
    return "unknown";
}

OptimalRoll select_optimum(std::vector<double> alphas, std::vector<double> costs) {
    if (alphas.empty() || alphas.size() != costs.size()) {
        fail(ErrorCategory::Config, "optimum needs a non-empty, fully evaluated alpha grid");
    }
    const auto [lo, hi] = std::minmax_element(costs.begin(), costs.end());
    const double min_cost = *lo;
    const double spread = *hi - *lo;

    OptimalRoll out;
    for (std::size_t i = 0; i < costs.size(); ++i) {
        if (costs[i] - min_cost <= kTieTolerance) {
            out.tie_set.push_back(alphas[i]);
            out.star_index = i;  // grid is ascending, so the last tie is the largest alpha
        }
    }
    out.alpha_star = alphas[out.star_index];
    out.cost = costs[out.star_index];

    if (spread <= kTieTolerance) {
        out.classification = Classification::AllEquivalent;
    } else if (out.star_index + 1 == alphas.size()) {
        out.classification = Classification::Term;
    } else if (out.star_index == 0) {
        out.classification = Classification::Shortest;
    } else {
        out.classification = Classification::Interior;
    }
    out.alphas = std::move(alphas);
    out.costs = std::move(costs);
    return out;
}

OptimalRoll optimal_roll(const CurveProvider& provider, const FundingSetup& setup,
                         std::span<const double> alphas, Execution exec) {
    if (exec == Execution::Serial) return optimal_roll_serial(provider, setup, alphas);

    std::vector<double> costs(alphas.size());
    detail::for_each_index(alphas.size(), exec,
                           [&](std::size_t i) { costs[i] = cav(provider, setup, alphas[i]).cav; });
    return select_optimum({alphas.begin(), alphas.end()}, std::move(costs));
}

OptimalRoll optimal_roll(const CurveProvider& provider, const FundingSetup& setup) {
    const auto grid = alpha_grid(setup);
    return optimal_roll(provider, setup, grid);
}

OptimalRoll optimal_roll_serial(const CurveProvider& provider, const FundingSetup& setup,
                                std::span<const double> alphas) {
    std::vector<double> costs;
    costs.reserve(alphas.size());
    for (double alpha : alphas) costs.push_back(cav(provider, setup, alpha).cav);
    return select_optimum({alphas.begin(), alphas.end()}, std::move(costs));
}

std::vector<double> realized_costs(const CurveHistory& history, const FundingSetup& setup,
                                   std::span<const double> alphas, Date start, Execution exec) {
    history.require_coverage(start, offset_date(start, setup.horizon()));
    std::vector<double> costs(alphas.size());
    detail::for_each_index(alphas.size(), exec, [&](std::size_t i) {
        costs[i] = realized_cost(history, setup, alphas[i], start).cav;
    });
    return costs;
}

OptimalRoll evpi_roll(const CurveHistory& history, const FundingSetup& setup, Date start,
                      std::span<const double> alphas, Execution exec) {
    auto costs = realized_costs(history, setup, alphas, start, exec);
    return select_optimum({alphas.begin(), alphas.end()}, std::move(costs));
}

OptimalRoll evpi_roll(const CurveHistory& history, const FundingSetup& setup, Date start) {
    const auto grid = alpha_grid(setup);
    return evpi_roll(history, setup, start, grid);
}

}  // namespace fund
