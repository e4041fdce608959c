#include "tiltmom/diagnostics.hpp"

#include <cmath>

#include "tiltmom/errors.hpp"

namespace tiltmom {

namespace {

std::vector<double> geometric(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

// Monotone-improvement check over the top half of a ratio series, with a
// pinned noise margin: a row may exceed its predecessor by 5% plus an
// absolute floor of ten times the quadrature tolerance before it counts
// as a violation.
bool top_half_improving(const std::vector<double>& devs, double rel_tol) {
  if (devs.size() < 2) return true;
  const std::size_t start = devs.size() / 2;
  for (std::size_t i = start; i + 1 < devs.size(); ++i)
    if (devs[i + 1] > 1.05 * devs[i] + 10.0 * rel_tol) return false;
  return true;
}

void finalize_series(RatioSeries& series, double threshold, double rel_tol) {
  std::vector<double> devs;
  for (const RatioRow& row : series.rows)
    if (!row.failed && !row.near_zero_denominator)
      devs.push_back(std::abs(row.ratio - 1.0));
  if (devs.empty()) {
    series.converged = false;
    series.final_abs_dev = 0.0;
    return;
  }
  series.final_abs_dev = devs.back();
  series.converged =
      devs.back() < threshold && top_half_improving(devs, rel_tol);
}

}  // namespace

DiagnosticsConfig default_diagnostics_config() {
  DiagnosticsConfig cfg;
  cfg.t_grid = geometric(10.0, 1e4, 7);
  cfg.gaussian_t_grid = {10.0, 100.0, 1000.0};
  for (int i = 0; i < 9; ++i) cfg.lambda_grid.push_back(-2.0 + 0.5 * i);
  return cfg;
}

std::vector<RatioSeries> ratio_suite(const TailModel& model,
                                     const DiagnosticsConfig& cfg) {
  OracleOptions oracle_opts;
  oracle_opts.rel_tol = cfg.quadrature_rel_tol;

  std::vector<RatioSeries> out;
  out.push_back({"log_normalizer", {}, false, 0.0});
  out.push_back({"mean", {}, false, 0.0});
  out.push_back({"variance", {}, false, 0.0});
  for (int j = 3; j <= cfg.j_max; ++j)
    out.push_back({"mu" + std::to_string(j), {}, false, 0.0});

  for (double t : cfg.t_grid) {
    MomentSet exact, asym;
    bool failed = false;
    std::string note;
    try {
      exact = exact_moments(model, t, cfg.j_max, oracle_opts);
      asym = asymptotic_moments(model, t, cfg.j_max);
    } catch (const Error& e) {
      failed = true;
      note = e.what();
    }

    auto push = [&](RatioSeries& series, double ev, double av,
                    double scale, bool log_domain) {
      RatioRow row;
      row.t = t;
      row.failed = failed;
      row.note = note;
      if (!failed) {
        row.exact = ev;
        row.asymptotic = av;
        if (log_domain) {
          row.ratio = std::exp(ev - av);
        } else if (std::abs(av) < 1e-12 * scale) {
          row.near_zero_denominator = true;
        } else {
          row.ratio = ev / av;
        }
      }
      series.rows.push_back(std::move(row));
    };

    std::size_t idx = 0;
    push(out[idx++], exact.log_phi, asym.log_phi, 1.0, true);
    push(out[idx++], exact.m, asym.m, std::abs(asym.m), false);
    push(out[idx++], exact.s2, asym.s2, asym.s2, false);
    for (int j = 3; j <= cfg.j_max; ++j)
      push(out[idx++], failed ? 0.0 : exact.mu.at(j),
           failed ? 0.0 : asym.mu.at(j),
           failed ? 1.0 : std::pow(asym.s2, 0.5 * j), false);
  }

  for (std::size_t i = 0; i < out.size(); ++i) {
    const double threshold =
        i < 3 ? cfg.pass_threshold_primary : cfg.pass_threshold_higher;
    finalize_series(out[i], threshold, cfg.quadrature_rel_tol);
  }
  return out;
}

double mgf_convergence(const TailModel& model, double t,
                       const std::vector<double>& lambda_grid,
                       const OracleOptions& opts) {
  const MomentSet ms = exact_moments(model, t, 2, opts);
  const double s = std::sqrt(ms.s2);
  const double base = ms.log_phi;
  double max_dev = 0.0;
  for (double lambda : lambda_grid) {
    const double shifted = t + lambda / s;
    if (!(shifted > 0.0))
      throw ConfigError("lambda grid leaves the positive tilt range");
    const double lm = log_mgf(model, shifted, opts);
    const double dev =
        std::abs(lm - base - lambda * ms.m / s - 0.5 * lambda * lambda);
    max_dev = std::max(max_dev, dev);
  }
  return max_dev;
}

std::vector<GaussianRow> gaussian_suite(const TailModel& model,
                                        const DiagnosticsConfig& cfg) {
  OracleOptions oracle_opts;
  oracle_opts.rel_tol = cfg.quadrature_rel_tol;
  std::vector<GaussianRow> rows;
  for (double t : cfg.gaussian_t_grid) {
    GaussianRow row;
    row.t = t;
    try {
      row.ks_distance = ks_distance_to_normal(model, t, oracle_opts);
      row.mgf_max_dev = mgf_convergence(model, t, cfg.lambda_grid,
                                        oracle_opts);
    } catch (const Error&) {
      row.failed = true;
    }
    rows.push_back(row);
  }
  return rows;
}

DiagnosticsReport assemble_report(const TailModel& model,
                                  const DiagnosticsConfig& cfg) {
  DiagnosticsReport report;
  report.model_label = model.label;

  const ValidationReport val = validate_model(model);
  report.model_valid = val.ok;
  report.validation_issues = val.issues;
  if (!val.ok) {
    report.verdict = "UNSUPPORTED";
    return report;
  }

  report.variation = classify(model, cfg.trend);
  report.trend_records = report.variation.evidence;
  if (report.variation.kind == VariationClass::Kind::Unsupported) {
    report.verdict = "UNSUPPORTED";
    return report;
  }

  // Supplementary evidence: classification consequences and, in the rapid
  // case, the inverse-function identities.  These are informational and do
  // not gate the verdict; their pass flags are carried in the report.
  try {
    const ConditionReport cor =
        check_variation_corollaries(model, report.variation, cfg.trend);
    report.trend_records.insert(report.trend_records.end(),
                                cor.records.begin(), cor.records.end());
    if (report.variation.kind == VariationClass::Kind::RapidlyVarying) {
      const ConditionReport ids =
          check_rapid_case_identities(model, cfg.trend);
      report.trend_records.insert(report.trend_records.end(),
                                  ids.records.begin(), ids.records.end());
    }
  } catch (const Error&) {
    // Evidence gathering must not abort the report.
  }

  // Small-quantity diagnostics along the t grid.
  {
    std::vector<std::pair<double, double>> g1, g2, g3;
    for (double t : cfg.t_grid) {
      try {
        const TiltPoint tp = tilt_point(model, t);
        const double s = tp.sigma_hat;
        g1.emplace_back(t, std::abs(tp.g_at.d3) * tp.sigma_hat2 *
                               tp.sigma_hat2);
        if (t > 1.0)
          g2.emplace_back(
              t, std::abs(tp.g_at.d3) * s * s * s * localization_scale(t));
        const double ip = saddlepoint_integral(model, t);
        if (ip != 0.0) g3.emplace_back(t, std::log(s) / ip);
      } catch (const Error&) {
        break;
      }
    }
    auto add = [&report](const char* label,
                         std::vector<std::pair<double, double>> grid) {
      TrendRecord rec;
      rec.label = label;
      rec.grid = std::move(grid);
      rec.verdict = judge_trend(rec.grid, 1e-2);
      rec.pass = rec.verdict == TrendVerdict::ConvergesToZero;
      report.trend_records.push_back(std::move(rec));
    };
    add("abs_g3_sigma4_at_saddle", std::move(g1));
    add("abs_g3_sigma3_localization", std::move(g2));
    add("log_sigma_over_saddle_integral", std::move(g3));
  }

  report.ratio_series = ratio_suite(model, cfg);
  report.gaussian = gaussian_suite(model, cfg);

  bool pass = true;
  for (const RatioSeries& series : report.ratio_series) {
    bool informative = false;
    for (const RatioRow& row : series.rows)
      if (!row.failed && !row.near_zero_denominator) informative = true;
    if (informative && !series.converged) pass = false;
  }
  if (report.gaussian.empty()) {
    pass = false;
  } else {
    const GaussianRow& last = report.gaussian.back();
    if (last.failed || last.ks_distance >= cfg.gaussian_threshold ||
        last.mgf_max_dev >= cfg.gaussian_threshold)
      pass = false;
  }
  report.verdict = pass ? "PASS" : "FAIL";
  return report;
}

}  // namespace tiltmom
