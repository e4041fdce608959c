#pragma once

#include "tiltmom/model.hpp"

namespace tiltmom {

// Quantities attached to one tilting parameter t: the saddle point
// x_hat solving g'(x_hat) = t, the local curvature scale, and the value
// K(x_hat) = t * x_hat - g(x_hat) of the tilted exponent at its maximum.
struct TiltPoint {
  double t = 0.0;
  double x_hat = 0.0;
  double sigma_hat = 0.0;   // 1 / sqrt(h'(x_hat))
  double sigma_hat2 = 0.0;  // 1 / h'(x_hat)
  double k_hat = 0.0;       // computed in extended precision
  Jet4 g_at{};              // g and its first four derivatives at x_hat
};

// Solve g'(x) = t for x > domain_low.  Doubles outward to bracket the root,
// bisects to a rough interval, then polishes with Newton steps using an
// extended-precision evaluation of g'.  Throws InversionError when no
// bracket exists below the search cap or the iteration stalls.
double invert_h(const TailModel& model, double t);

TiltPoint tilt_point(const TailModel& model, double t);

// Remainder of the second-order Taylor expansion of K(x, t) = t*x - g(x)
// about the saddle point:
//   K(x,t) = k_hat - (x - x_hat)^2 / (2 sigma_hat^2) + cubic_term + residual
// with cubic_term = -g'''(x_hat) (x - x_hat)^3 / 6.
struct KRemainder {
  double cubic_term = 0.0;
  double residual = 0.0;
};

KRemainder k_taylor_remainder(const TailModel& model, const TiltPoint& tp,
                              double x);

// (log t)^3, the scale that controls how wide a window around the saddle
// point carries essentially all of the tilted mass.  Requires t > 1.
double localization_scale(double t);

// Closed-form value of the integral of the saddle point x_hat(u) over
// u in [1, t]:  k_hat(t) - x_hat(1) + g(x_hat(1)).  Requires t > 1 and that
// g' attains the value 1.
double saddlepoint_integral(const TailModel& model, double t);

}  // namespace tiltmom
