#pragma once

#include <string>
#include <vector>

#include "tiltmom/asymptotics.hpp"
#include "tiltmom/karamata.hpp"
#include "tiltmom/oracle.hpp"

namespace tiltmom {

// One exact-vs-asymptotic comparison at one t.  For the log normalizing
// integral the ratio column holds exp(exact - asymptotic); for everything
// else it is exact/asymptotic.
struct RatioRow {
  double t = 0.0;
  double exact = 0.0;
  double asymptotic = 0.0;
  double ratio = 0.0;
  bool near_zero_denominator = false;  // ratio withheld, not divided
  bool failed = false;                 // row-level numerical failure
  std::string note;
};

struct RatioSeries {
  std::string label;
  std::vector<RatioRow> rows;
  bool converged = false;
  double final_abs_dev = 0.0;  // |ratio - 1| at the largest t
};

struct GaussianRow {
  double t = 0.0;
  double ks_distance = 0.0;
  double mgf_max_dev = 0.0;
  bool failed = false;
};

struct DiagnosticsConfig {
  std::vector<double> t_grid;           // default: 7 points, 10 to 1e4
  std::vector<double> gaussian_t_grid;  // default: {10, 100, 1000}
  std::vector<double> lambda_grid;      // default: 9 points on [-2, 2]
  int j_max = 5;
  double quadrature_rel_tol = 1e-10;
  // Convergence thresholds for |ratio - 1| at the top of the grid.  These
  // are engineering defaults calibrated against the oracle, not values
  // with any theoretical standing.
  double pass_threshold_primary = 0.02;  // normalizer, mean, variance
  double pass_threshold_higher = 0.10;   // third and higher moments
  double gaussian_threshold = 0.05;      // KS distance and MGF deviation
  TrendOptions trend;
};

DiagnosticsConfig default_diagnostics_config();

struct DiagnosticsReport {
  std::string model_label;
  bool model_valid = true;
  std::vector<ValidationIssue> validation_issues;
  VariationClass variation;
  std::vector<RatioSeries> ratio_series;
  std::vector<TrendRecord> trend_records;  // informational evidence
  std::vector<GaussianRow> gaussian;
  std::string verdict;  // PASS, FAIL, or UNSUPPORTED
};

// Exact-vs-asymptotic series for the log normalizer, mean, variance, and
// central moments 3..j_max over the t grid.
std::vector<RatioSeries> ratio_suite(const TailModel& model,
                                     const DiagnosticsConfig& cfg);

// Max over the lambda grid of the deviation of the standardized tilted
// log-MGF from lambda^2/2, with mean and scale taken from the oracle.
double mgf_convergence(const TailModel& model, double t,
                       const std::vector<double>& lambda_grid,
                       const OracleOptions& opts = {});

// Per-t Gaussian-limit metrics: KS distance to the standard normal and
// the MGF deviation above.
std::vector<GaussianRow> gaussian_suite(const TailModel& model,
                                        const DiagnosticsConfig& cfg);

// Full pipeline: validation, classification, ratio suite, Gaussian suite,
// plus informational trend diagnostics.  Never throws on a per-row
// failure; the verdict is PASS only when the model is supported, every
// ratio series converged, and the Gaussian metrics meet the threshold at
// the largest t.
DiagnosticsReport assemble_report(const TailModel& model,
                                  const DiagnosticsConfig& cfg);

}  // namespace tiltmom
