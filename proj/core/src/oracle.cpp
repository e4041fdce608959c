#include "tiltmom/oracle.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <vector>

#include "tiltmom/errors.hpp"
#include "tiltmom/quadrature.hpp"

namespace tiltmom {

namespace {

// All tilted integrands are evaluated relative to a center c near the
// saddle point.  Writing x = c +/- u and pairing the two sides turns
// integrals of (x-c)^alpha w(x) into single-sided integrals of
//   2 u^alpha e^{A + qe} * cosh(B + qo)   (alpha even)
//   2 u^alpha e^{A + qe} * sinh(B + qo)   (alpha odd)
// where A and B are the even and odd parts of K(c+u) - K(c) and qe, qo the
// even/odd parts of q.  The odd moments of a nearly centered tilted law
// are minuscule compared to the even ones, and this form computes them
// without subtracting two large integrals.
//
// B itself is a near-total cancellation between t*u and the odd part of g
// when c sits at the saddle point.  Two evaluation routes are available:
//   series: B = r*u - g'''(c) u^3/6 with the residual r = t - g'(c) formed
//           once in extended precision; exact up to the u^5 Taylor term.
//   direct: extended-precision evaluation of t*u - (g(c+u) - g(c-u))/2.
// The series is the only accurate route when t*x and g dwarf B (heavy
// cancellation); the direct route is the accurate one when the window is
// wide enough that the truncated series drifts.  The choice is made per
// center by comparing the two at the window edge against the rounding
// noise floor of the direct route.
struct CenteredScheme {
  const TailModel* model = nullptr;
  long double t = 0.0L;
  long double c = 0.0L;
  long double kc = 0.0L;  // K(c, t) = t*c - g(c)
  long double r = 0.0L;   // t - g'(c)
  double sig = 0.0;       // 1/sqrt(g''(c)), the local width scale
  double g2 = 0.0, g3 = 0.0, g4 = 0.0;
  double window = 0.0;  // half-width of the core window, in sig units
  bool use_series = false;
};

CenteredScheme make_scheme(const TailModel& model, double t, double c) {
  CenteredScheme s;
  s.model = &model;
  s.t = t;
  s.c = c;
  const Jet4 j = model.g_jet(c);
  if (!(j.d2 > 0.0))
    throw QuadratureError("g'' not positive at the integration center", 0.0);
  s.g2 = j.d2;
  s.g3 = j.d3;
  s.g4 = j.d4;
  s.sig = 1.0 / std::sqrt(j.d2);
  s.kc = s.t * s.c - model.g_value_ld(s.c);
  s.r = s.t - model.h_value_ld(s.c);

  double d = std::max(10.0, 2.0 * std::log(std::max(t, 2.0)));
  if (model.domain_low > -1e300)
    d = std::min(d, (c - model.domain_low) / s.sig * (1.0 - 1e-9));
  if (!(d > 0.0))
    throw QuadratureError("integration center sits at the domain edge", 0.0);
  s.window = d;

  s.use_series = true;
  for (double frac : {1.0, 0.25}) {
    const long double u = static_cast<long double>(d * s.sig * frac);
    const long double gp = model.g_value_ld(s.c + u);
    const long double gm = model.g_value_ld(s.c - u);
    const long double bd = s.t * u - 0.5L * (gp - gm);
    const long double bs =
        s.r * u - static_cast<long double>(s.g3) * u * u * u / 6.0L;
    const long double scale =
        std::max({fabsl(s.t * (s.c + u)), fabsl(gp), 1.0L});
    if (fabsl(bs - bd) > 40.0L * LDBL_EPSILON * scale) s.use_series = false;
  }
  return s;
}

// Paired integrand over the scaled offset y = u / sig, components
// alpha = 0..n-1; the sig factor is the jacobian of the scaling.
void paired_eval(const CenteredScheme& s, double y, double* out, int n) {
  const long double u = static_cast<long double>(s.sig) * y;
  long double a_even, b_odd;
  if (s.use_series) {
    const long double u2 = u * u;
    a_even = -0.5L * static_cast<long double>(s.g2) * u2 -
             static_cast<long double>(s.g4) * u2 * u2 / 24.0L;
    b_odd = s.r * u - static_cast<long double>(s.g3) * u2 * u / 6.0L;
  } else {
    const long double gp = s.model->g_value_ld(s.c + u);
    const long double gm = s.model->g_value_ld(s.c - u);
    const long double g0 = s.model->g_value_ld(s.c);
    a_even = -0.5L * (gp + gm - 2.0L * g0);
    b_odd = s.t * u - 0.5L * (gp - gm);
  }
  const long double qp = eval_value_ld(s.model->q, s.c + u);
  const long double qm = eval_value_ld(s.model->q, s.c - u);
  const long double a = a_even + 0.5L * (qp + qm);
  const long double b = b_odd + 0.5L * (qp - qm);
  const long double ea = expl(a) * static_cast<long double>(s.sig);
  const long double ch = coshl(b);
  const long double sh = sinhl(b);
  long double up = 2.0L;
  for (int al = 0; al < n; ++al) {
    out[al] = static_cast<double>(up * ea * (al % 2 == 0 ? ch : sh));
    up *= u;
  }
}

// One-sided integrand for the tail extensions beyond the core window,
// where no cancellation is at play and a direct exponent is fine.
void direct_eval(const CenteredScheme& s, double x, double* out, int n) {
  const long double e = s.t * static_cast<long double>(x) -
                        s.model->g_value_ld(x) - s.kc +
                        eval_value_ld(s.model->q, x);
  const long double w = e < -11300.0L ? 0.0L : expl(e);
  const long double d = static_cast<long double>(x) - s.c;
  long double dp = 1.0L;
  for (int al = 0; al < n; ++al) {
    out[al] = static_cast<double>(w * dp);
    dp *= d;
  }
}

struct TiltedIntegrals {
  std::vector<double> value;    // integral of (x-c)^alpha w over the domain
  std::vector<double> abs_int;  // integral of the absolute integrand
  double error_estimate = 0.0;
};

TiltedIntegrals tilted_integrals(const TailModel& model, double t, double c,
                                 int max_alpha, const OracleOptions& opts) {
  const int n = max_alpha + 1;
  const CenteredScheme s = make_scheme(model, t, c);

  QuadratureOptions core;
  core.rel_tol = std::min(opts.rel_tol, 1e-12);
  core.max_panels = opts.max_panels;
  auto fmain = [&s, n](double y, double* out) { paired_eval(s, y, out, n); };
  const auto main_res = integrate_many(fmain, n, 0.0, s.window, core);

  TiltedIntegrals out;
  out.value.resize(n);
  out.abs_int.resize(n);
  for (int al = 0; al < n; ++al) {
    out.value[al] = main_res[al].value;
    out.abs_int[al] = main_res[al].abs_integral;
    out.error_estimate =
        std::max(out.error_estimate, main_res[al].error_estimate);
  }

  auto fdir = [&s, n](double x, double* o) { direct_eval(s, x, o, n); };
  QuadratureOptions ext;
  ext.rel_tol = 1e-6;
  ext.abs_tol = 0.1 * core.rel_tol *
                std::max(out.abs_int[0], 1e-300);  // scale of the mass
  ext.max_panels = opts.max_panels;

  auto significant = [&](const std::vector<QuadratureResult>& seg) {
    for (int al = 0; al < n; ++al)
      if (std::abs(seg[al].value) >
          core.rel_tol * std::max(out.abs_int[al], 1e-300))
        return true;
    return false;
  };
  auto absorb = [&](const std::vector<QuadratureResult>& seg) {
    for (int al = 0; al < n; ++al) {
      out.value[al] += seg[al].value;
      out.abs_int[al] += seg[al].abs_integral;
      out.error_estimate = std::max(out.error_estimate, seg[al].error_estimate);
    }
  };

  // Right tail: doubling segments until a whole segment stops mattering.
  double edge = c + s.window * s.sig;
  double width = std::max(s.window * s.sig, 1.0);
  for (int k = 0; k < 64; ++k) {
    const auto seg = integrate_many(fdir, n, edge, edge + width, ext);
    const bool keep_going = significant(seg);
    absorb(seg);
    edge += width;
    width *= 2.0;
    if (!keep_going) break;
  }

  // Left tail, clipped at the lower domain endpoint.  The core window may
  // already touch it, in which case there is nothing left.
  double ledge = c - s.window * s.sig;
  width = std::max(s.window * s.sig, 1.0);
  for (int k = 0; k < 64 && ledge > model.domain_low; ++k) {
    const double lo = std::max(model.domain_low, ledge - width);
    const auto seg = integrate_many(fdir, n, lo, ledge, ext);
    const bool keep_going = significant(seg);
    absorb(seg);
    ledge = lo;
    width *= 2.0;
    if (!keep_going) break;
  }

  return out;
}

double binomial(int nn, int kk) {
  double b = 1.0;
  for (int i = 1; i <= kk; ++i) b = b * (nn - kk + i) / i;
  return b;
}

// log of the plain density integral, used for t = 0 where no saddle point
// exists.  Doubling segments from the lower endpoint; stops once a segment
// is negligible and the integrand is on its way down.
double log_density_integral(const TailModel& model,
                            const OracleOptions& opts) {
  auto f = [&model](double x) {
    const double e = model.q_value(x) - model.g_value(x);
    return e < -745.0 ? 0.0 : std::exp(e);
  };
  QuadratureOptions qo;
  qo.rel_tol = std::min(opts.rel_tol, 1e-12);
  qo.max_panels = opts.max_panels;

  double total = 0.0;
  double lo = model.domain_low;
  double width = 1.0;
  for (int k = 0; k < 64; ++k) {
    const auto seg = integrate(f, lo, lo + width, qo);
    total += seg.value;
    const bool decaying = f(lo + width) <= f(lo + 0.5 * width);
    lo += width;
    width *= 2.0;
    if (decaying && seg.value < 1e-13 * total) break;
  }
  if (!(total > 0.0))
    throw QuadratureError("density integral evaluated to zero", 0.0);
  return std::log(total);
}

double normal_cdf(double y) { return 0.5 * std::erfc(-y / std::sqrt(2.0)); }

}  // namespace

double log_mgf(const TailModel& model, double t, const OracleOptions& opts) {
  if (t == 0.0) return log_density_integral(model, opts);
  if (!(t > 0.0)) throw ConfigError("log_mgf requires t >= 0");
  const TiltPoint tp = tilt_point(model, t);
  const auto ints = tilted_integrals(model, t, tp.x_hat, 0, opts);
  if (!(ints.value[0] > 0.0))
    throw QuadratureError("tilted mass evaluated to zero", 0.0);
  return tp.k_hat + std::log(ints.value[0]);
}

double tilted_moment_about_saddle(const TailModel& model, double t, int alpha,
                                  const OracleOptions& opts) {
  if (!(t > 0.0)) throw ConfigError("tilted moments require t > 0");
  if (alpha < 0) throw ConfigError("alpha must be nonnegative");
  const TiltPoint tp = tilt_point(model, t);
  const auto ints = tilted_integrals(model, t, tp.x_hat, alpha, opts);
  // The integrals are centered on the double rounding of the saddle point;
  // for odd alpha at large t they are almost pure cancellation, so even
  // that half-ulp off-centering matters.  Refine the saddle in extended
  // precision with one Newton step and shift the moment binomially.
  const long double c = tp.x_hat;
  const long double d =
      (model.h_value_ld(c) - static_cast<long double>(t)) /
      static_cast<long double>(tp.g_at.d2);  // c - x_hat_refined
  long double acc = 0.0L;
  long double dpow = 1.0L;
  for (int i = alpha; i >= 0; --i) {
    acc += static_cast<long double>(binomial(alpha, i)) *
           static_cast<long double>(ints.value[i]) * dpow;
    dpow *= d;
  }
  return static_cast<double>(acc);
}

MomentSet exact_moments(const TailModel& model, double t, int j_max,
                        const OracleOptions& opts) {
  if (!(t > 0.0)) throw ConfigError("exact moments require t > 0");
  if (j_max < 2) throw ConfigError("j_max must be at least 2");
  const TiltPoint tp = tilt_point(model, t);

  // Pass 1: locate the mean relative to the saddle point.
  const auto pass1 = tilted_integrals(model, t, tp.x_hat, 1, opts);
  if (!(pass1.value[0] > 0.0))
    throw QuadratureError("tilted mass evaluated to zero", 0.0);
  const double delta = pass1.value[1] / pass1.value[0];

  // Pass 2: recenter at the estimated mean; the residual shift d2 left
  // after recentering is corrected exactly through the binomial expansion.
  const double c1 = tp.x_hat + delta;
  const auto pass2 = tilted_integrals(model, t, c1, j_max, opts);
  const double i0 = pass2.value[0];
  if (!(i0 > 0.0))
    throw QuadratureError("tilted mass evaluated to zero", 0.0);
  const double d2 = pass2.value[1] / i0;

  MomentSet ms;
  ms.t = t;
  ms.source = MomentSet::Source::Oracle;
  ms.log_phi = tp.k_hat + std::log(pass1.value[0]);
  ms.m = c1 + d2;
  for (int j = 2; j <= j_max; ++j) {
    long double acc = 0.0L;
    for (int i = 0; i <= j; ++i) {
      const long double ji = i == 0 ? 1.0L : pass2.value[i] / i0;
      acc += static_cast<long double>(binomial(j, i)) * ji *
             powl(-static_cast<long double>(d2), j - i);
    }
    ms.mu[j] = static_cast<double>(acc);
  }
  ms.s2 = ms.mu[2];
  return ms;
}

namespace {

// Shared backbone for the CDF operations: cumulative integrals of the
// tilted weight relative to K at the mean, over a fixed segment list.
struct CdfContext {
  CenteredScheme scheme;
  double lo_cut = 0.0, hi_cut = 0.0;
  QuadratureOptions qo;
};

CdfContext make_cdf_context(const TailModel& model, double t, double m,
                            double s, const OracleOptions& opts) {
  CdfContext ctx;
  ctx.scheme = make_scheme(model, t, m);
  ctx.lo_cut = std::max(model.domain_low, m - 60.0 * s);
  ctx.hi_cut = m + 60.0 * s;
  ctx.qo.rel_tol = 1e-9;
  ctx.qo.max_panels = opts.max_panels;
  // Absolute floor so negligible tail segments converge immediately; the
  // total mass in these units is of order sig * sqrt(2 pi).
  ctx.qo.abs_tol = 1e-12 * ctx.scheme.sig;
  return ctx;
}

double cdf_segment(const CdfContext& ctx, double a, double b) {
  if (!(b > a)) return 0.0;
  auto f = [&ctx](double x) {
    double v;
    direct_eval(ctx.scheme, x, &v, 1);
    return v;
  };
  return integrate(f, a, b, ctx.qo).value;
}

}  // namespace

double standardized_cdf(const TailModel& model, double t, double y,
                        const OracleOptions& opts) {
  const MomentSet ms = exact_moments(model, t, 2, opts);
  const double s = std::sqrt(ms.s2);
  const CdfContext ctx = make_cdf_context(model, t, ms.m, s, opts);
  const double x = ms.m + s * y;
  if (x <= ctx.lo_cut) return 0.0;
  const double num = cdf_segment(ctx, ctx.lo_cut, std::min(x, ctx.hi_cut));
  const double den = num + cdf_segment(ctx, std::min(x, ctx.hi_cut),
                                       ctx.hi_cut);
  if (!(den > 0.0))
    throw QuadratureError("tilted mass evaluated to zero", 0.0);
  return std::min(1.0, num / den);
}

double ks_distance_to_normal(const TailModel& model, double t,
                             const OracleOptions& opts) {
  const MomentSet ms = exact_moments(model, t, 2, opts);
  const double s = std::sqrt(ms.s2);
  const CdfContext ctx = make_cdf_context(model, t, ms.m, s, opts);

  const int n = 201;
  double cum = 0.0;
  double prev = ctx.lo_cut;
  std::vector<double> cdf(n);
  std::vector<double> ys(n);
  for (int i = 0; i < n; ++i) {
    ys[i] = -5.0 + 10.0 * i / (n - 1);
    double x = ms.m + s * ys[i];
    x = std::clamp(x, ctx.lo_cut, ctx.hi_cut);
    if (x > prev) {
      cum += cdf_segment(ctx, prev, x);
      prev = x;
    }
    cdf[i] = cum;
  }
  const double total = cum + cdf_segment(ctx, prev, ctx.hi_cut);
  if (!(total > 0.0))
    throw QuadratureError("tilted mass evaluated to zero", 0.0);

  double ks = 0.0;
  for (int i = 0; i < n; ++i)
    ks = std::max(ks, std::abs(cdf[i] / total - normal_cdf(ys[i])));
  return ks;
}

}  // namespace tiltmom
