#pragma once

namespace fund::stats {

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `df` degrees
/// of freedom. Clamped below at the smallest normal double so a p-value is
/// never reported as exactly zero.
double student_t_two_sided_p(double t, double df);

}  // namespace fund::stats
