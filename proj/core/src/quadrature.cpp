#include "tiltmom/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "tiltmom/errors.hpp"

namespace tiltmom {

namespace {

// Gauss-Kronrod 7-15 nodes and weights (QUADPACK dqk15), positive half.
constexpr double kK15Nodes[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993945, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kK15Weights[8] = {
    0.0229353220105292, 0.0630920926299785, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kG7Weights[4] = {0.1294849661688697, 0.2797053914892766,
                                  0.3818300505051189, 0.4179591836734694};

struct PanelEval {
  double integral = 0.0;
  double error = 0.0;
  double abs_integral = 0.0;
};

// Evaluate all components of f on one panel with a single shared set of
// abscissae.  out must hold n entries.
void eval_panel(const std::function<void(double, double*)>& f, std::size_t n,
                double a, double b, PanelEval* out, double* scratch) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  std::vector<double> k15(n, 0.0), g7(n, 0.0), absint(n, 0.0);
  for (int i = 0; i < 8; ++i) {
    const double dx = h * kK15Nodes[i];
    const int reps = (i == 7) ? 1 : 2;
    for (int r = 0; r < reps; ++r) {
      const double x = (r == 0) ? c - dx : c + dx;
      f(x, scratch);
      for (std::size_t j = 0; j < n; ++j) {
        k15[j] += kK15Weights[i] * scratch[j];
        absint[j] += kK15Weights[i] * std::abs(scratch[j]);
        if (i % 2 == 1) g7[j] += kG7Weights[i / 2] * scratch[j];
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const double k = h * k15[j];
    const double g = h * g7[j];
    double err = std::abs(k - g);
    // QUADPACK-style sharpening of the raw difference.
    if (err != 0.0) err = 200.0 * err * std::sqrt(err);
    out[j].integral = k;
    out[j].error = std::min(std::abs(k - g), err);
    out[j].abs_integral = h * absint[j];
  }
}

struct Panel {
  double a, b;
  std::vector<PanelEval> eval;
  double priority = 0.0;
};

}  // namespace

std::vector<QuadratureResult> integrate_many(
    const std::function<void(double, double*)>& f, std::size_t n, double a,
    double b, const QuadratureOptions& opts) {
  if (n == 0) return {};
  if (!(b > a)) {
    std::vector<QuadratureResult> zero(n);
    return zero;
  }
  std::vector<double> scratch(n);

  auto priority_of = [&](const Panel& p, const std::vector<double>& scale) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      worst = std::max(worst, p.eval[j].error / scale[j]);
    return worst;
  };

  std::vector<Panel> panels;
  panels.push_back(Panel{a, b, std::vector<PanelEval>(n), 0.0});
  eval_panel(f, n, a, b, panels[0].eval.data(), scratch.data());

  auto totals = [&](std::vector<double>& err, std::vector<double>& absint) {
    err.assign(n, 0.0);
    absint.assign(n, 0.0);
    for (const Panel& p : panels)
      for (std::size_t j = 0; j < n; ++j) {
        err[j] += p.eval[j].error;
        absint[j] += p.eval[j].abs_integral;
      }
  };

  std::vector<double> err, absint, scale(n);
  for (;;) {
    totals(err, absint);
    bool done = true;
    for (std::size_t j = 0; j < n; ++j) {
      scale[j] = std::max(opts.abs_tol,
                          opts.rel_tol * std::max(absint[j], 1e-300));
      if (err[j] > scale[j]) done = false;
    }
    if (done) break;
    if (panels.size() >= opts.max_panels)
      throw QuadratureError("panel budget exhausted before tolerance was met",
                            *std::max_element(err.begin(), err.end()));

    std::size_t worst = 0;
    double worst_pri = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      double pri = priority_of(panels[i], scale);
      if (pri > worst_pri) {
        worst_pri = pri;
        worst = i;
      }
    }
    Panel old = panels[worst];
    const double mid = 0.5 * (old.a + old.b);
    if (!(old.a < mid && mid < old.b))
      throw QuadratureError(
          "panel too narrow to bisect before tolerance was met", worst_pri);
    Panel left{old.a, mid, std::vector<PanelEval>(n), 0.0};
    Panel right{mid, old.b, std::vector<PanelEval>(n), 0.0};
    eval_panel(f, n, left.a, left.b, left.eval.data(), scratch.data());
    eval_panel(f, n, right.a, right.b, right.eval.data(), scratch.data());
    panels[worst] = std::move(left);
    panels.push_back(std::move(right));
  }

  // Deterministic accumulation: sum panels ordered by left endpoint.
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  std::vector<QuadratureResult> out(n);
  for (const Panel& p : panels)
    for (std::size_t j = 0; j < n; ++j) {
      out[j].value += p.eval[j].integral;
      out[j].error_estimate += p.eval[j].error;
      out[j].abs_integral += p.eval[j].abs_integral;
      out[j].panels = panels.size();
    }
  return out;
}

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts) {
  auto wrapped = [&f](double x, double* out) { out[0] = f(x); };
  return integrate_many(wrapped, 1, a, b, opts)[0];
}

}  // namespace tiltmom
