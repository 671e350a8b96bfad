#pragma once

#include <algorithm>
#include <vector>

namespace fund {

/// Problem constants: funding horizon, regulatory buffer and bid-ask fraction.
/// All lengths are year fractions.
class FundingSetup {
public:
    /// Throws Error(Config) unless 0 < buffer <= horizon and 0 < phi <= 1.
    FundingSetup(double horizon, double buffer, double phi);

    /// One-year horizon, one-month buffer, phi = 0.75.
    static FundingSetup standard();

    double horizon() const { return horizon_; }
    double buffer() const { return buffer_; }
    double phi() const { return phi_; }
    double horizon_days() const;

private:
    double horizon_;
    double buffer_;
    double phi_;
};

/// One funding purchase. Roll i >= 1 also sells the `sale_tenor` of the
/// previous purchase that no longer counts toward the buffer.
struct RollEvent {
    double start = 0.0;
    double sale_tenor = 0.0;  // 0 for the initial purchase
    double purchase_tenor = 0.0;
};

struct RollSchedule {
    double alpha = 0.0;
    int n_rolls = 0;
    std::vector<RollEvent> events;  // n_rolls + 1 entries
};

/// Number of rolls to reach horizon `h_n` with roll length `alpha_n`, both in
/// buffer units. Throws Error(BufferViolation) when alpha_n <= 1 < h_n / alpha_n.
int n_rolls(double h_n, double alpha_n);

/// Share of the horizon, in percent, funded by overlap that does not count
/// toward the buffer.
double gross_excess(double h_n, double alpha_n);

/// Throws Error(BufferViolation) unless alpha > buffer or alpha >= horizon.
RollSchedule build_schedule(const FundingSetup& setup, double alpha);

/// Candidate roll lengths: buffer + k*step_days/365 for k >= 1 while below the
/// horizon, then the horizon itself.
std::vector<double> alpha_grid(const FundingSetup& setup, double step_days = 1.0);

/// Visits the events build_schedule would produce without allocating.
/// `visit(i, start, purchase_tenor)`; roll i >= 1 sells setup.buffer().
template <typename Visitor>
void for_each_roll(const FundingSetup& setup, double alpha, Visitor&& visit) {
    const double h = setup.horizon();
    if (alpha >= h) {
        visit(0, 0.0, h);
        return;
    }
    const double spacing = alpha - setup.buffer();
    const int n = n_rolls(h / setup.buffer(), alpha / setup.buffer());
    visit(0, 0.0, alpha);
    for (int i = 1; i <= n; ++i) {
        const double start = i * spacing;
        visit(i, start, std::min(alpha, h - start));
    }
}

}  // namespace fund
