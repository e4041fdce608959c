#pragma once

#include "tiltmom/oracle.hpp"
#include "tiltmom/tilt.hpp"

namespace tiltmom {

// Raw moments of the standard normal: (i-1)!! for even i, 0 for odd i.
double normal_moment(int i);

// Closed-form large-t equivalents for the tilted law's moments:
//   m ~ x_hat, s^2 ~ sigma_hat^2, mu_3 ~ -g'''(x_hat) sigma_hat^6,
//   mu_j ~ M_j s^j for even j, and for odd j > 3
//   mu_j ~ (M_{j+3} - 3 j M_{j-1})/6 * mu_3 * s^{j-3}.
MomentSet asymptotic_moments(const TailModel& model, double t, int j_max);

// Large-t equivalent of the log normalizing integral:
// k_hat + q(x_hat) + log(sqrt(2 pi) sigma_hat).
double asymptotic_log_mgf(const TailModel& model, double t);

// Next-order mean: x_hat - g'''(x_hat) sigma_hat^4 / 2.
double refined_mean(const TailModel& model, double t);

// Truncated Gaussian factor over the localization window
// [-log(t)/sqrt(2), log(t)/sqrt(2)]:
//   e^{q(x_hat)} * ( integral of y^alpha e^{-y^2/2}
//   - (g'''(x_hat) sigma_hat^3 / 6) * integral of y^{alpha+3} e^{-y^2/2} ).
// The tilted moment about the saddle divided by e^{k_hat} behaves like
// sigma_hat^{alpha+1} times this factor; the e^{q(x_hat)} term keeps the
// density's bounded correction, which survives when q is eventually
// constant.
double gaussian_window_factor(const TailModel& model, double t, int alpha);

// Plain truncated normal moment: integral of y^k e^{-y^2/2} over [-l, l];
// exactly zero for odd k.
double truncated_normal_moment(int k, double l);

}  // namespace tiltmom
