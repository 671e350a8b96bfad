#include "fund/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

namespace fund::stats {

double student_t_two_sided_p(double t, double df) {
    if (std::isinf(t)) return std::numeric_limits<double>::min();
    const boost::math::students_t dist(df);
    const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

}  // namespace fund::stats
