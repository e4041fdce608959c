#include <doctest.h>

#include <cmath>

#include "tiltmom/config.hpp"
#include "tiltmom/diagnostics.hpp"
#include "tiltmom/errors.hpp"
#include "tiltmom/report_io.hpp"

using namespace tiltmom;

TEST_CASE("default config shape") {
  const DiagnosticsConfig cfg = default_diagnostics_config();
  REQUIRE(cfg.t_grid.size() == 7);
  CHECK(cfg.t_grid.front() == doctest::Approx(10.0));
  CHECK(cfg.t_grid.back() == doctest::Approx(1e4));
  CHECK(cfg.gaussian_t_grid == std::vector<double>{10.0, 100.0, 1000.0});
  REQUIRE(cfg.lambda_grid.size() == 9);
  CHECK(cfg.lambda_grid.front() == doctest::Approx(-2.0));
  CHECK(cfg.lambda_grid.back() == doctest::Approx(2.0));
  CHECK(cfg.j_max == 5);
}

TEST_CASE("mgf_convergence is exactly quadratic for a quadratic exponent") {
  const TailModel gauss = custom_model("gauss", "x^2 / 2", "0", -40.0, true);
  const DiagnosticsConfig cfg = default_diagnostics_config();
  CHECK(mgf_convergence(gauss, 5.0, cfg.lambda_grid) < 1e-9);
}

TEST_CASE("ratio_suite labels and convergence for weibull(2)") {
  DiagnosticsConfig cfg = default_diagnostics_config();
  cfg.t_grid = {10.0, 100.0, 1000.0};
  const auto series = ratio_suite(builtin_model("weibull", 2.0), cfg);
  REQUIRE(series.size() == 6);
  CHECK(series[0].label == "log_normalizer");
  CHECK(series[1].label == "mean");
  CHECK(series[2].label == "variance");
  CHECK(series[3].label == "mu3");
  CHECK(series[5].label == "mu5");
  for (const RatioSeries& s : series) {
    REQUIRE(s.rows.size() == 3);
    CHECK(s.converged);
    CHECK(s.final_abs_dev < 0.02);
    // Deviations from 1 must shrink along the grid.
    CHECK(std::fabs(s.rows.back().ratio - 1) <
          std::fabs(s.rows.front().ratio - 1) + 1e-12);
  }
}

TEST_CASE("assemble_report verdicts") {
  DiagnosticsConfig cfg = default_diagnostics_config();
  cfg.t_grid = {10.0, 100.0, 1000.0};
  cfg.gaussian_t_grid = {10.0, 100.0};

  const DiagnosticsReport ok =
      assemble_report(builtin_model("weibull", 2.0), cfg);
  CHECK(ok.verdict == "PASS");
  CHECK(ok.model_valid);
  CHECK(ok.variation.kind == VariationClass::Kind::RegularlyVarying);
  CHECK_FALSE(ok.trend_records.empty());

  const DiagnosticsReport bad =
      assemble_report(custom_model("linear", "x", "0", 0.0, true), cfg);
  CHECK(bad.verdict == "UNSUPPORTED");
}

TEST_CASE("csv and json serialization") {
  DiagnosticsConfig cfg = default_diagnostics_config();
  cfg.t_grid = {10.0, 100.0};
  const auto series = ratio_suite(builtin_model("weibull", 2.0), cfg);
  const std::string csv = ratio_series_csv(series[1]);
  CHECK(csv.substr(0, 25) == "t,exact,asymptotic,ratio\n");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  const DiagnosticsReport rep = assemble_report(builtin_model("weibull", 2.0), cfg);
  const std::string j1 = to_json(rep);
  const std::string j2 = to_json(assemble_report(builtin_model("weibull", 2.0), cfg));
  CHECK(j1 == j2);
  CHECK(j1.find("\"verdict\"") != std::string::npos);
}

TEST_CASE("config parsing") {
  const RunConfig cfg = parse_run_config(R"({
    "model": {"builtin": "weibull", "parameter": 3.0},
    "t_grid": {"start": 10.0, "stop": 100.0, "points": 5},
    "j_max": 4,
    "tolerances": {"gaussian_threshold": 0.03},
    "output_prefix": "w3"
  })");
  CHECK(cfg.model.label == "weibull");
  REQUIRE(cfg.diagnostics.t_grid.size() == 5);
  CHECK(cfg.diagnostics.t_grid.front() == doctest::Approx(10.0));
  CHECK(cfg.diagnostics.t_grid.back() == doctest::Approx(100.0));
  CHECK(cfg.diagnostics.j_max == 4);
  CHECK(cfg.diagnostics.gaussian_threshold == 0.03);
  CHECK(cfg.output_prefix == "w3");

  const RunConfig custom = parse_run_config(R"({
    "model": {"label": "halfgauss", "g": "x^2 / 2", "q": "0",
              "domain_low": 0.0, "q_eventually_constant": true}
  })");
  CHECK(custom.model.label == "halfgauss");
  CHECK(custom.model.domain_low == 0.0);

  CHECK_THROWS_AS(parse_run_config("{}"), ConfigError);
  CHECK_THROWS_AS(parse_run_config("not json"), ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"model": {"builtin": "weibull",
    "parameter": 2.0}, "t_grid": {"start": 10.0, "stop": 5.0, "points": 5}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_run_config(R"({"model": {"label": "bad", "g": "x +",
    "q": "0", "domain_low": 0.0, "q_eventually_constant": true}})"),
                  Error);
}
