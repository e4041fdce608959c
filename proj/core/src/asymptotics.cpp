#include "tiltmom/asymptotics.hpp"

#include <cmath>

#include "tiltmom/errors.hpp"
#include "tiltmom/quadrature.hpp"

namespace tiltmom {

double normal_moment(int i) {
  if (i < 0) throw ConfigError("normal moment order must be nonnegative");
  if (i % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = i; k > 1; k -= 2) m *= (k - 1);
  return m;
}

MomentSet asymptotic_moments(const TailModel& model, double t, int j_max) {
  if (!(t > 0.0)) throw ConfigError("asymptotic moments require t > 0");
  if (j_max < 2) throw ConfigError("j_max must be at least 2");
  const TiltPoint tp = tilt_point(model, t);

  MomentSet ms;
  ms.t = t;
  ms.source = MomentSet::Source::Asymptotic;
  ms.log_phi = asymptotic_log_mgf(model, t);
  ms.m = tp.x_hat;
  ms.s2 = tp.sigma_hat2;
  ms.mu[2] = ms.s2;
  const double s = tp.sigma_hat;
  const double mu3 = -tp.g_at.d3 * std::pow(s, 6);
  if (j_max >= 3) ms.mu[3] = mu3;
  for (int j = 4; j <= j_max; ++j) {
    if (j % 2 == 0) {
      ms.mu[j] = normal_moment(j) * std::pow(ms.s2, j / 2);
    } else {
      const double coeff =
          (normal_moment(j + 3) - 3.0 * j * normal_moment(j - 1)) / 6.0;
      ms.mu[j] = coeff * mu3 * std::pow(s, j - 3);
    }
  }
  return ms;
}

double asymptotic_log_mgf(const TailModel& model, double t) {
  const TiltPoint tp = tilt_point(model, t);
  return tp.k_hat + model.q_value(tp.x_hat) +
         0.5 * std::log(2.0 * M_PI * tp.sigma_hat2);
}

double refined_mean(const TailModel& model, double t) {
  const TiltPoint tp = tilt_point(model, t);
  return tp.x_hat - tp.g_at.d3 * tp.sigma_hat2 * tp.sigma_hat2 / 2.0;
}

double truncated_normal_moment(int k, double l) {
  if (k % 2 == 1) return 0.0;
  QuadratureOptions opts;
  opts.rel_tol = 1e-13;
  auto f = [k](double y) { return std::pow(y, k) * std::exp(-0.5 * y * y); };
  return 2.0 * integrate(f, 0.0, l, opts).value;
}

double gaussian_window_factor(const TailModel& model, double t, int alpha) {
  if (!(t > std::exp(1.0)))
    throw ConfigError("gaussian window factor requires t > e");
  if (alpha < 0) throw ConfigError("alpha must be nonnegative");
  const TiltPoint tp = tilt_point(model, t);
  const double l = std::log(t) / std::sqrt(2.0);
  const double s3 = tp.sigma_hat2 * tp.sigma_hat;
  // The saddle-centered integrals carry the density's bounded factor
  // e^{q}; for an eventually constant q this survives in the limit, so the
  // predicted factor must carry it too.
  return std::exp(model.q_value(tp.x_hat)) *
         (truncated_normal_moment(alpha, l) -
          tp.g_at.d3 * s3 / 6.0 * truncated_normal_moment(alpha + 3, l));
}

}  // namespace tiltmom
