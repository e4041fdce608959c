#include "tiltmom/tilt.hpp"

#include <cmath>

#include "tiltmom/errors.hpp"

namespace tiltmom {

double invert_h(const TailModel& model, double t) {
  if (!std::isfinite(t)) throw InversionError("tilting parameter is not finite");

  auto h = [&](double x) -> double {
    double v = model.h_value(x);
    if (std::isnan(v)) throw InversionError("g' evaluated to NaN");
    return v;
  };

  // Find lo with h(lo) < t by halving toward the lower domain endpoint,
  // then hi with h(hi) > t by doubling outward.
  const double cap = 1e12;
  double lo = std::max(model.domain_low + 1e-6, 1.0);
  while (h(lo) >= t) {
    double next = model.domain_low + 0.5 * (lo - model.domain_low);
    if (!(next > model.domain_low) || next == lo)
      throw InversionError("no point with g' below the tilting parameter");
    lo = next;
  }
  double hi = 2.0 * std::max(lo, 1.0);
  while (h(hi) <= t) {
    hi *= 2.0;
    if (hi > cap)
      throw InversionError("g' stays below the tilting parameter up to 1e12");
  }

  // Bisect until the bracket is tight enough for Newton to be safe.
  for (int i = 0; i < 200 && (hi - lo) > 1e-3 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) < t ? lo : hi) = mid;
  }

  // Newton polish with g' in extended precision; h' from the jet.  The
  // bracket is first tightened with the current iterate, so the bisection
  // fallback for an overshooting step always makes progress.
  long double lo_l = lo, hi_l = hi;
  long double x = 0.5L * (lo_l + hi_l);
  for (int i = 0; i < 100; ++i) {
    const long double f = model.h_value_ld(x) - static_cast<long double>(t);
    (f < 0.0L ? lo_l : hi_l) = x;
    const double hp = model.g_jet(static_cast<double>(x)).d2;
    if (!(hp > 0.0))
      throw InversionError("g'' not positive near the saddle point");
    long double next = x - f / hp;
    if (!(next > lo_l) || !(next < hi_l)) next = 0.5L * (lo_l + hi_l);
    if (fabsl(next - x) <= 1e-18L * fabsl(next)) {
      x = next;
      break;
    }
    x = next;
  }
  const double root = static_cast<double>(x);
  if (!(root > model.domain_low) || !std::isfinite(root))
    throw InversionError("saddle point iteration failed to converge");
  return root;
}

TiltPoint tilt_point(const TailModel& model, double t) {
  TiltPoint p;
  p.t = t;
  p.x_hat = invert_h(model, t);
  p.g_at = model.g_jet(p.x_hat);
  if (!(p.g_at.d2 > 0.0))
    throw InversionError("g'' not positive at the saddle point");
  p.sigma_hat2 = 1.0 / p.g_at.d2;
  p.sigma_hat = std::sqrt(p.sigma_hat2);
  const long double x = p.x_hat;
  p.k_hat = static_cast<double>(static_cast<long double>(t) * x -
                                model.g_value_ld(x));
  return p;
}

KRemainder k_taylor_remainder(const TailModel& model, const TiltPoint& tp,
                              double x) {
  KRemainder r;
  const long double u = static_cast<long double>(x) - tp.x_hat;
  r.cubic_term = static_cast<double>(-tp.g_at.d3 * u * u * u / 6.0L);
  const long double k = static_cast<long double>(tp.t) * x -
                        model.g_value_ld(x);
  const long double quad = static_cast<long double>(tp.k_hat) -
                           0.5L * tp.g_at.d2 * u * u + r.cubic_term;
  r.residual = static_cast<double>(k - quad);
  return r;
}

double localization_scale(double t) {
  if (!(t > 1.0))
    throw ConfigError("localization scale requires t > 1");
  const double l = std::log(t);
  return l * l * l;
}

double saddlepoint_integral(const TailModel& model, double t) {
  if (!(t > 1.0))
    throw ConfigError("saddlepoint integral requires t > 1");
  const TiltPoint at_t = tilt_point(model, t);
  const double x1 = invert_h(model, 1.0);
  return at_t.k_hat - x1 + model.g_value(x1);
}

}  // namespace tiltmom
