#pragma once

#include <string>
#include <vector>

#include "tiltmom/expression.hpp"

namespace tiltmom {

// A light upper-tailed density on (domain_low, inf) of the form
//   p(x) = exp(-(g(x) - q(x)))
// where g is smooth and convex for large x and q is a bounded correction.
// The tilting machinery only needs g, its derivatives h = g', h', h'', h''',
// and q.  Both functions are held as expression trees so that derivatives
// come from truncated Taylor evaluation rather than finite differences.
struct TailModel {
  std::string label;
  ExprPtr g;
  ExprPtr q;
  ExprPtr h;  // symbolic g', kept so it can be evaluated in long double
  double domain_low = 0.0;  // open lower endpoint of the support
  bool q_eventually_constant = false;

  double g_value(double x) const { return eval_value(g, x); }
  long double g_value_ld(long double x) const { return eval_value_ld(g, x); }
  Jet4 g_jet(double x) const { return eval_jet(g, x); }

  double h_value(double x) const { return eval_value(h, x); }
  long double h_value_ld(long double x) const { return eval_value_ld(h, x); }

  double q_value(double x) const { return eval_value(q, x); }
  Jet4 q_jet(double x) const { return eval_jet(q, x); }

  // log density, log p(x) = -(g(x) - q(x))
  double log_density(double x) const { return q_value(x) - g_value(x); }
};

// Construct one of the built-in models.
//   "weibull": parameter k > 1; density k x^{k-1} exp(-x^k) on (0, inf),
//              exactly normalized.
//   "expexp":  no parameter; density c exp(-exp(x - 1)) on (0, inf) with c
//              chosen once, numerically, so the density integrates to one.
TailModel builtin_model(const std::string& name, double parameter = 0.0);

// Build a model from user-supplied expression strings.
TailModel custom_model(const std::string& label, const std::string& g_source,
                       const std::string& q_source, double domain_low,
                       bool q_eventually_constant);

struct ValidationIssue {
  std::string check;
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;
};

// Grid-based sanity checks on a model: g(x)/x must eventually grow without
// bound, h = g' must be eventually positive and increasing (strict convexity
// in the tail), and q must stay bounded on the probed range.  Failures are
// reported rather than thrown so the caller can decide how hard to fail.
ValidationReport validate_model(const TailModel& model);

}  // namespace tiltmom
