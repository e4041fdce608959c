#include "tiltmom/model.hpp"

#include <cmath>

#include "tiltmom/errors.hpp"
#include "tiltmom/quadrature.hpp"

namespace tiltmom {

namespace {

// Normalization constant for the double-exponential tail model, computed
// once: c = 1 / integral_0^inf exp(-exp(x - 1)) dx.  The integrand is below
// 1e-300 well before x = 8, so a finite window captures it entirely.
double expexp_norm_constant() {
  static const double c = [] {
    QuadratureOptions opts;
    opts.rel_tol = 1e-14;
    auto r = integrate([](double x) { return std::exp(-std::exp(x - 1.0)); },
                       0.0, 10.0, opts);
    return 1.0 / r.value;
  }();
  return c;
}

}  // namespace

TailModel builtin_model(const std::string& name, double parameter) {
  TailModel m;
  if (name == "weibull") {
    const double k = parameter;
    if (!(k > 1.0))
      throw ConfigError("weibull model requires shape parameter k > 1");
    // p(x) = k x^{k-1} exp(-x^k)  =>  g = x^k - (k-1) log x, q = log k.
    m.label = "weibull";
    m.g = make_sub(make_pow(make_variable(), k),
                   make_mul(make_constant(k - 1.0),
                            make_log(make_variable())));
    m.q = make_constant(std::log(k));
    m.h = differentiate(m.g);
    m.domain_low = 0.0;
    m.q_eventually_constant = true;
    return m;
  }
  if (name == "expexp") {
    // p(x) = c exp(-exp(x - 1))  =>  g = exp(x - 1), q = log c.
    m.label = "expexp";
    m.g = make_exp(make_sub(make_variable(), make_constant(1.0)));
    m.q = make_constant(std::log(expexp_norm_constant()));
    m.h = differentiate(m.g);
    m.domain_low = 0.0;
    m.q_eventually_constant = true;
    return m;
  }
  throw ConfigError("unknown built-in model '" + name + "'");
}

TailModel custom_model(const std::string& label, const std::string& g_source,
                       const std::string& q_source, double domain_low,
                       bool q_eventually_constant) {
  TailModel m;
  m.label = label;
  m.g = parse_expression(g_source);
  m.q = parse_expression(q_source);
  m.h = differentiate(m.g);
  m.domain_low = domain_low;
  m.q_eventually_constant = q_eventually_constant;
  return m;
}

ValidationReport validate_model(const TailModel& model) {
  ValidationReport report;
  auto fail = [&](const std::string& check, const std::string& detail) {
    report.ok = false;
    report.issues.push_back({check, detail});
  };

  const int n = 256;
  const double lo = std::max(model.domain_low, 1e-3) * 1.001;
  const double hi = 1e6;
  std::vector<double> xs(n), gs(n), hs(n), qs(n);
  try {
    for (int i = 0; i < n; ++i) {
      const double u = static_cast<double>(i) / (n - 1);
      xs[i] = lo * std::pow(hi / lo, u);
      Jet4 jg = model.g_jet(xs[i]);
      gs[i] = jg.value;
      hs[i] = jg.d1;
      qs[i] = model.q_value(xs[i]);
      if (!std::isfinite(qs[i]))
        fail("q_finite", "q is not finite at x = " + format_double(xs[i]));
    }
  } catch (const EvalError& e) {
    fail("evaluable", std::string("model evaluation failed: ") + e.what());
    return report;
  }

  // g(x)/x must eventually grow: check the last quarter of the grid, where
  // transient non-monotonicity near the origin no longer matters.  Infinite
  // overflow values at the far end count as growth, not failure.
  {
    const double first = gs[3 * n / 4] / xs[3 * n / 4];
    double last = first;
    bool grew = true;
    for (int i = 3 * n / 4 + 1; i < n; ++i) {
      const double cur = gs[i] / xs[i];
      if (std::isinf(cur)) {
        last = cur;
        break;
      }
      if (cur < last * (1.0 - 1e-9)) {
        grew = false;
        break;
      }
      last = cur;
    }
    // Monotone is not enough: a linear g has constant g(x)/x and no light
    // upper tail, so demand actual growth across the probed quarter.
    if (grew && !std::isinf(last)) grew = last > first * (1.0 + 1e-3);
    if (!grew)
      fail("superlinear_g", "g(x)/x is not increasing on the upper grid");
  }

  // h = g' must be eventually positive and increasing (tail convexity).
  {
    bool ok_pos = true, ok_inc = true;
    const double first = hs[3 * n / 4];
    double last = first;
    bool overflowed = false;
    for (int i = 3 * n / 4; i < n; ++i) {
      if (std::isinf(hs[i])) {
        overflowed = true;
        break;
      }
      if (!(hs[i] > 0.0)) ok_pos = false;
      if (i > 3 * n / 4 && hs[i] < last * (1.0 - 1e-12)) ok_inc = false;
      last = hs[i];
    }
    // Constant g' (no curvature) gives no saddle point; require growth.
    if (ok_inc && !overflowed) ok_inc = last > first * (1.0 + 1e-3);
    if (!ok_pos) fail("h_positive", "g' is not positive on the upper grid");
    if (!ok_inc) fail("h_increasing", "g' is not increasing on the upper grid");
  }

  // q must be slowly varying relative to g: reject if |q| grows like a
  // positive power of x on the top decade (log-log slope above a small cap).
  {
    int i0 = 7 * n / 8;
    double y0 = std::log(std::abs(qs[i0]) + 1.0);
    double y1 = std::log(std::abs(qs[n - 1]) + 1.0);
    double slope = (y1 - y0) / (std::log(xs[n - 1]) - std::log(xs[i0]));
    if (std::isfinite(slope) && slope > 0.02)
      fail("q_bounded", "q grows like a power of x on the top decade");
  }

  return report;
}

}  // namespace tiltmom
