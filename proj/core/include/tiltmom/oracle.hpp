#pragma once

#include <map>

#include "tiltmom/model.hpp"
#include "tiltmom/tilt.hpp"

namespace tiltmom {

// Moments of the tilted law pi_t(x) proportional to e^{tx} p(x): the log
// of the normalizing integral, the mean, the variance, and the central
// moments mu[j].  Carried either as quadrature results or as closed-form
// asymptotic values, tagged by source.
struct MomentSet {
  enum class Source { Oracle, Asymptotic };
  double t = 0.0;
  double log_phi = 0.0;  // log integral of e^{tx} p(x)
  double m = 0.0;
  double s2 = 0.0;
  std::map<int, double> mu;  // j -> central moment, j = 2..j_max
  Source source = Source::Oracle;
};

struct OracleOptions {
  double rel_tol = 1e-10;        // reported-value tolerance target
  std::size_t max_panels = 8192;
};

// log of the integral of e^{tx} p(x) over the domain, evaluated in the log
// domain relative to K(x_hat, t) so that no intermediate overflows.  t = 0
// integrates the plain density (no saddle point is involved).
double log_mgf(const TailModel& model, double t,
               const OracleOptions& opts = {});

// The integral of (x - x_hat)^alpha e^{tx} p(x), divided by e^{k_hat}.
// Signed; alpha = 0 equals exp(log_mgf - k_hat).
double tilted_moment_about_saddle(const TailModel& model, double t, int alpha,
                                  const OracleOptions& opts = {});

// Mean, variance, and central moments 2..j_max of the tilted law.  Two
// quadrature passes: the first locates the mean relative to the saddle
// point, the second recenters there so odd central moments are computed
// without cancellation across the recentering shift.
MomentSet exact_moments(const TailModel& model, double t, int j_max,
                        const OracleOptions& opts = {});

// P((X_t - m)/s <= y) for the tilted law, by quadrature of the tilted
// density up to m + s*y.
double standardized_cdf(const TailModel& model, double t, double y,
                        const OracleOptions& opts = {});

// Kolmogorov-Smirnov distance between the standardized tilted law and the
// standard normal, over a 201-point grid on [-5, 5].
double ks_distance_to_normal(const TailModel& model, double t,
                             const OracleOptions& opts = {});

}  // namespace tiltmom
