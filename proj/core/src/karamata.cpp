#include "tiltmom/karamata.hpp"

#include <algorithm>
#include <cmath>

#include "tiltmom/errors.hpp"
#include "tiltmom/tilt.hpp"

namespace tiltmom {

namespace {

std::vector<double> geometric_grid(double lo, double hi, int ppd) {
  const int n = std::max(
      2, static_cast<int>(std::lround(ppd * std::log10(hi / lo))) + 1);
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i)
    xs[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return xs;
}

struct LsFit {
  double slope = 0.0;
  double stderr_ = 0.0;
};

LsFit ls_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = xs.size();
  LsFit fit;
  if (n < 2) return fit;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) return fit;
  fit.slope = sxy / sxx;
  if (n > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - my - fit.slope * (xs[i] - mx);
      rss += r * r;
    }
    fit.stderr_ = std::sqrt(rss / (n - 2) / sxx);
  }
  return fit;
}

double richardson_d1(const std::function<double(double)>& f, double x,
                     double h) {
  auto d = [&](double s) { return (f(x + s) - f(x - s)) / (2.0 * s); };
  return (4.0 * d(0.5 * h) - d(h)) / 3.0;
}

double richardson_d2(const std::function<double(double)>& f, double x,
                     double h) {
  const double fx = f(x);
  auto d = [&](double s) { return (f(x + s) - 2.0 * fx + f(x - s)) / (s * s); };
  return (16.0 * d(0.5 * h) - d(h)) / 15.0;
}

TrendRecord make_record(std::string label,
                        std::vector<std::pair<double, double>> grid,
                        double trend_epsilon, bool require_vanishing) {
  TrendRecord rec;
  rec.label = std::move(label);
  rec.grid = std::move(grid);
  rec.verdict = judge_trend(rec.grid, trend_epsilon);
  double mx = 0.0;
  for (const auto& [x, v] : rec.grid) mx = std::max(mx, std::abs(v));
  rec.tail_ratio =
      rec.grid.empty() || mx == 0.0
          ? 0.0
          : std::abs(rec.grid.back().second) / mx;
  rec.pass = require_vanishing
                 ? rec.verdict == TrendVerdict::ConvergesToZero
                 : (rec.verdict == TrendVerdict::ConvergesToZero ||
                    rec.verdict == TrendVerdict::Bounded);
  return rec;
}

// Shared implementation of the regularly-varying condition checks; hprime
// may be empty, in which case h is differentiated numerically.  h2 supplies
// |h''| for the index-gap check, again numerically when absent.
ConditionReport case1_worker(const std::function<double(double)>& h,
                             const std::function<double(double)>& hprime,
                             const std::function<double(double)>& h2,
                             double beta, const TrendOptions& opts) {
  ConditionReport report;
  const std::vector<double> xs =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);

  auto hp = [&](double x) {
    return hprime ? hprime(x) : richardson_d1(h, x, 1e-5 * x);
  };
  auto eps = [&](double x) {
    const double hx = h(x);
    if (hx == 0.0) throw EvalError("h vanishes on the trend grid");
    return x * hp(x) / hx - beta;
  };

  std::vector<std::pair<double, double>> g_eps, g_xep, g_x2epp, g_theta;
  std::vector<double> lx, lh2;
  for (double x : xs) {
    const double e = eps(x);
    const double ep = richardson_d1(eps, x, 1e-3 * x);
    const double epp = richardson_d2(eps, x, 2e-3 * x);
    g_eps.emplace_back(x, e);
    g_xep.emplace_back(x, x * std::abs(ep));
    g_x2epp.emplace_back(x, x * x * std::abs(epp));
    const double a2 =
        std::abs(h2 ? h2(x) : richardson_d2(h, x, 1e-4 * x));
    if (a2 > 0.0 && std::isfinite(a2)) {
      lx.push_back(std::log(x));
      lh2.push_back(std::log(a2));
      g_theta.emplace_back(x, a2);
    }
  }

  report.records.push_back(
      make_record("epsilon_x", std::move(g_eps), opts.trend_epsilon, true));
  report.records.push_back(make_record("x_abs_epsilon_prime", std::move(g_xep),
                                       opts.trend_epsilon, false));
  report.records.push_back(make_record(
      "x2_abs_epsilon_second", std::move(g_x2epp), opts.trend_epsilon, false));

  report.theta = ls_fit(lx, lh2).slope;
  TrendRecord theta_rec;
  theta_rec.label = "h_second_growth_index";
  theta_rec.grid = std::move(g_theta);
  theta_rec.verdict = TrendVerdict::Bounded;
  theta_rec.tail_ratio = report.theta;
  theta_rec.pass = report.theta <= beta - 2.0 + 0.1;
  report.records.push_back(std::move(theta_rec));

  for (const TrendRecord& r : report.records)
    report.all_pass = report.all_pass && r.pass;
  return report;
}

bool expression_is_constant(const ExprPtr& e) {
  if (!e) return true;
  if (e->kind == Expr::Kind::Variable) return false;
  return expression_is_constant(e->lhs) && expression_is_constant(e->rhs);
}

}  // namespace

std::string to_string(TrendVerdict v) {
  switch (v) {
    case TrendVerdict::ConvergesToZero:
      return "ConvergesToZero";
    case TrendVerdict::Bounded:
      return "Bounded";
    case TrendVerdict::Diverges:
      return "Diverges";
    case TrendVerdict::Inconclusive:
      return "Inconclusive";
    case TrendVerdict::AlwaysPass:
      return "AlwaysPass";
  }
  return "Inconclusive";
}

TrendOptions rapid_trend_defaults() {
  TrendOptions opts;
  opts.trend_epsilon = 0.1;
  return opts;
}

TrendVerdict judge_trend(const std::vector<std::pair<double, double>>& grid,
                         double trend_epsilon) {
  const std::size_t n = grid.size();
  if (n < 4) return TrendVerdict::Inconclusive;
  for (const auto& [x, v] : grid)
    if (!std::isfinite(v)) return TrendVerdict::Inconclusive;

  const std::size_t n2 = n / 2;
  double max_tail = 0.0, max_head = 0.0;
  for (std::size_t i = 0; i < n2; ++i)
    max_head = std::max(max_head, std::abs(grid[i].second));
  for (std::size_t i = n2; i < n; ++i)
    max_tail = std::max(max_tail, std::abs(grid[i].second));
  if (max_tail < 1e-10) return TrendVerdict::ConvergesToZero;
  // A two-orders drop from the first half of the grid to the second,
  // landing well under the threshold, is decisive even when the tail is
  // not pointwise monotone (sign changes make |v| dip and bounce).
  if (max_tail < 0.1 * trend_epsilon && max_tail < 0.01 * max_head)
    return TrendVerdict::ConvergesToZero;

  bool decreasing = true;
  for (std::size_t i = n2; i + 1 < n; ++i)
    if (std::abs(grid[i + 1].second) >
        1.05 * std::abs(grid[i].second) + 1e-12)
      decreasing = false;

  std::vector<double> lx, lv;
  for (std::size_t i = n2; i < n; ++i) {
    lx.push_back(std::log(grid[i].first));
    lv.push_back(std::log(std::max(std::abs(grid[i].second), 1e-300)));
  }
  const double slope = ls_fit(lx, lv).slope;

  if (decreasing && std::abs(grid.back().second) < trend_epsilon)
    return TrendVerdict::ConvergesToZero;
  if (slope > 0.1) return TrendVerdict::Diverges;
  return TrendVerdict::Bounded;
}

IndexEstimate estimate_rv_index(const std::function<double(double)>& f,
                                const TrendOptions& opts) {
  const std::vector<double> xs =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);
  std::vector<double> lx, lf;
  bool truncated = false;
  for (double x : xs) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      truncated = true;  // overflow inside the window: super-power growth
      break;
    }
    if (!(v > 0.0))
      throw EvalError("non-positive sample while estimating a growth index");
    lx.push_back(std::log(x));
    lf.push_back(std::log(v));
  }
  if (lx.size() < 4)
    throw EvalError("too few finite samples to estimate a growth index");

  // Per-decade slopes: divergence when any slope passes the cap or the
  // slopes keep growing by more than 25% decade over decade.
  IndexEstimate est;
  std::vector<double> decade_slopes;
  const double span = lx.back() - lx.front();
  const int decades = std::max(1, static_cast<int>(span / std::log(10.0)));
  for (int d = 0; d < decades; ++d) {
    std::vector<double> dx, dy;
    const double a = lx.front() + span * d / decades;
    const double b = lx.front() + span * (d + 1) / decades;
    for (std::size_t i = 0; i < lx.size(); ++i)
      if (lx[i] >= a - 1e-12 && lx[i] <= b + 1e-12) {
        dx.push_back(lx[i]);
        dy.push_back(lf[i]);
      }
    if (dx.size() >= 2) decade_slopes.push_back(ls_fit(dx, dy).slope);
  }
  for (std::size_t d = 0; d < decade_slopes.size(); ++d) {
    if (decade_slopes[d] > opts.slope_cap) est.diverging = true;
    if (d > 0 && decade_slopes[d] > 0.0 &&
        decade_slopes[d] > 1.25 * decade_slopes[d - 1] &&
        decade_slopes[d - 1] > 0.0)
      est.diverging = true;
  }
  if (truncated) est.diverging = true;
  if (est.diverging) return est;

  const LsFit fit = ls_fit(lx, lf);
  est.index = fit.slope;
  double mean = 0.0, var = 0.0;
  for (double s : decade_slopes) mean += s;
  mean /= decade_slopes.size();
  for (double s : decade_slopes) var += (s - mean) * (s - mean);
  if (decade_slopes.size() > 1) var /= (decade_slopes.size() - 1);
  est.stderr_ = std::max(fit.stderr_, std::sqrt(var));
  return est;
}

double epsilon_x(const TailModel& model, double beta, double x) {
  // x h'/h - beta cancels almost exactly deep in the tail, so evaluate the
  // quotient in extended precision from the symbolic derivative of h.
  const ExprPtr hp = differentiate(model.h);
  const long double h = model.h_value_ld(x);
  if (h == 0.0L) throw EvalError("g' vanishes at the probe point");
  const long double r =
      static_cast<long double>(x) * eval_value_ld(hp, x) / h -
      static_cast<long double>(beta);
  return static_cast<double>(r);
}

double epsilon_t(const TailModel& model, double t) {
  const double psi = invert_h(model, t);
  const Jet4 j = model.g_jet(psi);
  if (!(j.d2 > 0.0) || psi == 0.0)
    throw EvalError("degenerate saddle point while evaluating epsilon(t)");
  return t / (j.d2 * psi);
}

ConditionReport check_case1_conditions(const TailModel& model, double beta,
                                       const TrendOptions& opts) {
  auto h = [&model](double x) { return model.g_jet(x).d1; };
  auto hp = [&model](double x) { return model.g_jet(x).d2; };
  auto h2 = [&model](double x) { return model.g_jet(x).d3; };
  return case1_worker(h, hp, h2, beta, opts);
}

ConditionReport check_case1_conditions(const std::function<double(double)>& h,
                                       double beta, const TrendOptions& opts) {
  return case1_worker(h, nullptr, nullptr, beta, opts);
}

ConditionReport check_case2_conditions(const TailModel& model,
                                       const TrendOptions& opts) {
  ConditionReport report;
  const std::vector<double> ts =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);
  auto eps = [&model](double t) { return epsilon_t(model, t); };

  std::vector<std::pair<double, double>> g_e, g_r1, g_r2;
  for (double t : ts) {
    const double e = eps(t);
    if (e == 0.0) throw EvalError("epsilon(t) vanished on the trend grid");
    const double ep = richardson_d1(eps, t, 3e-3 * t);
    const double epp = richardson_d2(eps, t, 1e-2 * t);
    g_e.emplace_back(t, e);
    g_r1.emplace_back(t, t * ep / e);
    g_r2.emplace_back(t, t * t * epp / e);
  }
  report.records.push_back(
      make_record("epsilon_t", std::move(g_e), opts.trend_epsilon, true));
  report.records.push_back(make_record("t_epsilon_prime_over_epsilon",
                                       std::move(g_r1), opts.trend_epsilon,
                                       true));
  report.records.push_back(make_record("t2_epsilon_second_over_epsilon",
                                       std::move(g_r2), opts.trend_epsilon,
                                       true));
  for (const TrendRecord& r : report.records)
    report.all_pass = report.all_pass && r.pass;
  return report;
}

ConditionReport check_q_conditions(const TailModel& model,
                                   const VariationClass& cls,
                                   const TrendOptions& opts) {
  ConditionReport report;
  TrendRecord rec;

  const bool constant_q =
      model.q_eventually_constant || expression_is_constant(model.q);
  if (constant_q) {
    rec.label = "q_growth_index (eventually constant, vacuous)";
    rec.verdict = TrendVerdict::AlwaysPass;
    rec.pass = true;
    report.records.push_back(std::move(rec));
    return report;
  }

  const std::vector<double> grid =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);
  std::vector<double> lx, lq;
  std::vector<std::pair<double, double>> samples;
  for (double p : grid) {
    double x = p;
    if (cls.kind == VariationClass::Kind::RapidlyVarying)
      x = invert_h(model, p);  // compare |q| against the saddle point scale
    const double qv = std::abs(model.q_value(x));
    samples.emplace_back(x, qv);
    if (qv > 0.0 && std::isfinite(qv)) {
      lx.push_back(std::log(x));
      lq.push_back(std::log(qv));
    }
  }
  if (lx.size() < 4) {
    rec.label = "q_growth_index (|q| below floor, vacuous)";
    rec.verdict = TrendVerdict::AlwaysPass;
    rec.pass = true;
    report.records.push_back(std::move(rec));
    return report;
  }

  report.eta = ls_fit(lx, lq).slope;
  const double bound = cls.kind == VariationClass::Kind::RapidlyVarying
                           ? -0.5
                           : cls.theta - 1.5 * cls.beta - 1.5;
  rec.label = "q_growth_index";
  rec.grid = std::move(samples);
  rec.verdict = report.eta < 0.0 ? TrendVerdict::ConvergesToZero
                                 : TrendVerdict::Bounded;
  rec.tail_ratio = report.eta;
  rec.pass = report.eta < bound;
  report.all_pass = rec.pass;
  report.records.push_back(std::move(rec));
  return report;
}

VariationClass classify(const TailModel& model, const TrendOptions& opts) {
  VariationClass cls;
  auto h = [&model](double x) { return model.h_value(x); };

  IndexEstimate est;
  try {
    est = estimate_rv_index(h, opts);
  } catch (const EvalError& e) {
    cls.kind = VariationClass::Kind::Unsupported;
    cls.reason = e.what();
    return cls;
  }

  if (est.diverging) {
    cls.kind = VariationClass::Kind::RapidlyVarying;
    ConditionReport rep = check_case2_conditions(model);
    cls.evidence = rep.records;
    ConditionReport qrep = check_q_conditions(model, cls, opts);
    cls.eta = qrep.eta;
    cls.evidence.insert(cls.evidence.end(), qrep.records.begin(),
                        qrep.records.end());
    if (!rep.all_pass || !qrep.all_pass) {
      cls.kind = VariationClass::Kind::Unsupported;
      cls.reason = "rapid-variation condition checks failed";
    }
    return cls;
  }

  cls.beta = est.index;
  cls.beta_stderr = est.stderr_;
  if (cls.beta < 0.05) {
    cls.kind = VariationClass::Kind::Unsupported;
    cls.reason = "g' does not grow like a positive power";
    return cls;
  }

  cls.kind = VariationClass::Kind::RegularlyVarying;
  ConditionReport rep = check_case1_conditions(model, cls.beta, opts);
  cls.theta = rep.theta;
  cls.evidence = rep.records;
  ConditionReport qrep = check_q_conditions(model, cls, opts);
  cls.eta = qrep.eta;
  cls.evidence.insert(cls.evidence.end(), qrep.records.begin(),
                      qrep.records.end());
  if (!rep.all_pass || !qrep.all_pass) {
    cls.kind = VariationClass::Kind::Unsupported;
    cls.reason = "regular-variation condition checks failed";
  }
  return cls;
}

ConditionReport check_rapid_case_identities(const TailModel& model,
                                            const TrendOptions& opts) {
  auto h = [&model](double x) { return model.h_value(x); };
  if (!estimate_rv_index(h, opts).diverging)
    throw ConfigError(
        "rapid-case identities require a rapidly varying model");

  ConditionReport report;
  const std::vector<double> ts =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);
  auto psi = [&model](double t) { return invert_h(model, t); };

  std::vector<std::pair<double, double>> g_id, g_r2, g_r3;
  for (double t : ts) {
    const double x = psi(t);
    const Jet4 j = model.g_jet(x);
    const double psi_fd = richardson_d1(psi, t, 1e-4 * t);
    const double eps = t / (j.d2 * x);
    g_id.emplace_back(t, j.d2 * psi_fd - 1.0);
    g_r2.emplace_back(t, j.d3 * x * x * eps * eps / t - 1.0);
    g_r3.emplace_back(t, j.d4 * x * x * x * eps * eps * eps / t - 1.0);
  }

  TrendRecord id_rec = make_record("hprime_psi_times_psiprime_minus_1",
                                   std::move(g_id), opts.trend_epsilon, false);
  double worst = 0.0;
  for (const auto& [t, v] : id_rec.grid) worst = std::max(worst, std::abs(v));
  id_rec.pass = worst < 1e-6;
  report.records.push_back(std::move(id_rec));
  report.records.push_back(make_record("hsecond_psi2_eps2_over_t_minus_1",
                                       std::move(g_r2),
                                       rapid_trend_defaults().trend_epsilon,
                                       true));
  report.records.push_back(make_record("hthird_psi3_eps3_over_t_minus_1",
                                       std::move(g_r3),
                                       rapid_trend_defaults().trend_epsilon,
                                       true));
  for (const TrendRecord& r : report.records)
    report.all_pass = report.all_pass && r.pass;
  return report;
}

ConditionReport check_variation_corollaries(const TailModel& model,
                                            const VariationClass& cls,
                                            const TrendOptions& opts) {
  ConditionReport report;
  const std::vector<double> grid =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);
  const double eps_req = cls.kind == VariationClass::Kind::RapidlyVarying
                             ? rapid_trend_defaults().trend_epsilon
                             : opts.trend_epsilon;

  if (cls.kind == VariationClass::Kind::RegularlyVarying) {
    std::vector<std::pair<double, double>> g_hp, g_s2;
    for (double x : grid) {
      const Jet4 j = model.g_jet(x);
      g_hp.emplace_back(x, x * j.d2 / (cls.beta * j.d1) - 1.0);
    }
    for (double t : grid) {
      const double x = invert_h(model, t);
      const double s2 = 1.0 / model.g_jet(x).d2;
      g_s2.emplace_back(t, s2 * cls.beta * t / x - 1.0);
    }
    report.records.push_back(make_record("x_hprime_over_beta_h_minus_1",
                                         std::move(g_hp), eps_req, true));
    report.records.push_back(make_record("sigma2_beta_t_over_psi_minus_1",
                                         std::move(g_s2), eps_req, true));
  } else if (cls.kind == VariationClass::Kind::RapidlyVarying) {
    std::vector<std::pair<double, double>> g_s2;
    for (double t : grid) {
      const double x = invert_h(model, t);
      const double s2 = 1.0 / model.g_jet(x).d2;
      const double eps = epsilon_t(model, t);
      g_s2.emplace_back(t, s2 * t / (x * eps) - 1.0);
    }
    report.records.push_back(make_record("sigma2_t_over_psi_eps_minus_1",
                                         std::move(g_s2), eps_req, true));
  } else {
    throw ConfigError("corollary checks require a classified model");
  }

  for (const TrendRecord& r : report.records)
    report.all_pass = report.all_pass && r.pass;
  return report;
}

std::vector<TrendRecord> check_local_uniform_convergence(
    const std::function<double(double)>& l, double alpha,
    const TrendOptions& opts) {
  const std::vector<double> ts =
      geometric_grid(opts.lo, opts.hi, opts.points_per_decade);
  auto window_sup = [&](double t, double half_width) {
    double sup = 0.0;
    const int pts = 41;
    for (int i = 0; i < pts; ++i) {
      const double x = -half_width + 2.0 * half_width * i / (pts - 1);
      sup = std::max(sup, std::abs(l(t + x)));
    }
    return sup;
  };

  std::vector<std::pair<double, double>> g_sqrt, g_lin;
  for (double t : ts) {
    const double base = std::abs(l(t));
    if (base == 0.0) continue;
    g_sqrt.emplace_back(t, window_sup(t, std::sqrt(t)) / base - 1.0);
    const double target = std::pow(1.5, alpha);
    g_lin.emplace_back(t, window_sup(t, 0.5 * t) / (base * target) - 1.0);
  }

  std::vector<TrendRecord> records;
  records.push_back(make_record("sup_ratio_sqrt_window_minus_1",
                                std::move(g_sqrt), opts.trend_epsilon, true));
  records.push_back(make_record("sup_ratio_half_t_window_minus_target",
                                std::move(g_lin), opts.trend_epsilon, true));
  return records;
}

}  // namespace tiltmom
