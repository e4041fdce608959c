#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tiltmom/model.hpp"

namespace tiltmom {

// Verdict of a numerical trend test over a geometric grid.  These tests
// gather evidence for asymptotic statements; they are heuristics, not
// proofs, and are labeled as such throughout.
enum class TrendVerdict {
  ConvergesToZero,
  Bounded,
  Diverges,
  Inconclusive,
  AlwaysPass,  // condition is vacuous for this input (e.g. constant q)
};

std::string to_string(TrendVerdict v);

struct TrendRecord {
  std::string label;
  std::vector<std::pair<double, double>> grid;  // (abscissa, value)
  TrendVerdict verdict = TrendVerdict::Inconclusive;
  double tail_ratio = 0.0;  // |last value| / max |value|, as evidence
  bool pass = false;        // verdict meets this record's requirement
};

struct TrendOptions {
  double lo = 10.0;
  double hi = 1e6;
  int points_per_decade = 64;
  double trend_epsilon = 1e-2;  // "small enough" for vanishing quantities
  double slope_cap = 8.0;       // log-log slope above which h is not power-like
};

// Classify a grid of |values|: vanishing, bounded, or diverging.  The
// verdict ConvergesToZero demands a decreasing tail and a final value
// below trend_epsilon; growth of the log-log slope past a small cap means
// Diverges; everything else that stays finite is Bounded.
TrendVerdict judge_trend(const std::vector<std::pair<double, double>>& grid,
                         double trend_epsilon);

struct IndexEstimate {
  bool diverging = false;   // slope grows beyond any power: rapid variation
  double index = 0.0;       // least-squares slope of log f vs log x
  double stderr_ = 0.0;     // dispersion of per-decade slopes vs the fit
};

// Power-law index of a positive function on a geometric grid.  Flags
// rapid variation when the per-decade log-log slope exceeds slope_cap or
// keeps increasing by more than 25% between consecutive decades; stops at
// the first non-finite sample, which counts as growth evidence.
IndexEstimate estimate_rv_index(const std::function<double(double)>& f,
                                const TrendOptions& opts = {});

// epsilon(x) = x h'(x)/h(x) - beta, the slowly varying part's logarithmic
// derivative when h is regularly varying with index beta.
double epsilon_x(const TailModel& model, double beta, double x);

// epsilon(t) = t psi'(t)/psi(t) with psi = inverse of h and
// psi'(t) = 1/h'(psi(t)); the representation exponent when psi is slowly
// varying (the rapidly varying case).
double epsilon_t(const TailModel& model, double t);

struct ConditionReport {
  std::vector<TrendRecord> records;
  bool all_pass = true;
  double theta = 0.0;  // growth index of |h''|; regularly varying case only
  double eta = 0.0;    // growth index of |q|; set by the q check only
};

// Regularly-varying-case hypotheses: epsilon(x) vanishes, x|eps'| and
// x^2|eps''| stay bounded (derivatives by Richardson differences), and the
// growth index theta of |h''| satisfies theta <= beta - 2 within tolerance.
// The function-based overload exists so counterexamples outside the
// expression grammar can be probed; it differentiates h numerically.
ConditionReport check_case1_conditions(const TailModel& model, double beta,
                                       const TrendOptions& opts = {});
ConditionReport check_case1_conditions(
    const std::function<double(double)>& h, double beta,
    const TrendOptions& opts = {});

// Trend options with a looser smallness threshold (0.1): the rapid-case
// quantities decay like 1/log t, which never dips under 1e-2 on a grid
// that stops at t = 1e6.
TrendOptions rapid_trend_defaults();

// Rapidly-varying-case hypotheses on epsilon(t): epsilon vanishes and
// t eps'/eps and t^2 eps''/eps vanish.  Derivatives by Richardson
// differences of epsilon_t.
ConditionReport check_case2_conditions(
    const TailModel& model, const TrendOptions& opts = rapid_trend_defaults());

struct VariationClass {
  enum class Kind { RegularlyVarying, RapidlyVarying, Unsupported };
  Kind kind = Kind::Unsupported;
  double beta = 0.0;
  double beta_stderr = 0.0;
  double theta = 0.0;  // regularly varying case: growth index of |h''|
  double eta = 0.0;    // growth index of |q|
  std::vector<TrendRecord> evidence;
  std::string reason;  // set when Unsupported
};

// Growth condition on the correction q relative to the classification:
// the regularly varying case needs eta < theta - 3 beta/2 - 3/2, the rapid
// case eta < -1/2.  Eventually-constant q (including q = 0) passes
// vacuously with the AlwaysPass verdict, since a constant is bounded and
// slowly varying; this is flagged in the record label.
ConditionReport check_q_conditions(const TailModel& model,
                                   const VariationClass& cls,
                                   const TrendOptions& opts = {});

// Full classification pipeline: index estimation, then the per-case
// condition checks and the q check; any failed check demotes the model to
// Unsupported, with the trend records retained as evidence.
VariationClass classify(const TailModel& model, const TrendOptions& opts = {});

// Identities tying h and its inverse psi in the rapidly varying case:
// h'(psi(t)) * psi'(t) = 1 with psi' from a numerical difference of the
// inversion (so the check is not circular), and the ratios
// h''(psi) psi^2 eps^2 / t and h'''(psi) psi^3 eps^3 / t tending to one.
ConditionReport check_rapid_case_identities(const TailModel& model,
                                            const TrendOptions& opts = {});

// Consequences of the classification used downstream: the regularly
// varying case gives x h'(x)/(beta h(x)) -> 1 and sigma_hat^2 beta t /
// psi(t) -> 1; the rapid case gives sigma_hat^2 t / (psi eps) = 1.
ConditionReport check_variation_corollaries(const TailModel& model,
                                            const VariationClass& cls,
                                            const TrendOptions& opts = {});

// Local uniform convergence of a slowly varying factor l:
// sup over |x| <= sqrt(t) of |l(t+x)| / |l(t)| -> 1, and with the wider
// window |x| <= t/2 the same sup tends to (3/2)^alpha when l behaves like
// a power with exponent alpha.
std::vector<TrendRecord> check_local_uniform_convergence(
    const std::function<double(double)>& l, double alpha,
    const TrendOptions& opts = rapid_trend_defaults());

}  // namespace tiltmom
