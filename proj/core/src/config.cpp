#include "tiltmom/config.hpp"

#include <cmath>

#include <json.hpp>

#include "tiltmom/errors.hpp"

namespace tiltmom {

namespace {

using json = nlohmann::json;

double require_number(const json& j, const char* key, double fallback,
                      bool present_required = false) {
  if (!j.contains(key)) {
    if (present_required)
      throw ConfigError(std::string("missing required field '") + key + "'");
    return fallback;
  }
  if (!j.at(key).is_number())
    throw ConfigError(std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

TailModel parse_model(const json& m) {
  if (m.contains("builtin")) {
    const std::string name = m.at("builtin").get<std::string>();
    const double param = require_number(m, "parameter", 0.0);
    return builtin_model(name, param);
  }
  if (!m.contains("g"))
    throw ConfigError("model must give either 'builtin' or a 'g' expression");
  const std::string label =
      m.contains("label") ? m.at("label").get<std::string>() : "custom";
  const std::string g = m.at("g").get<std::string>();
  const std::string q = m.contains("q") ? m.at("q").get<std::string>() : "0";
  const double domain_low = require_number(m, "domain_low", 0.0);
  const bool q_const = m.contains("q_eventually_constant") &&
                       m.at("q_eventually_constant").get<bool>();
  if (domain_low < 0.0)
    throw ConfigError("domain_low must be nonnegative");
  return custom_model(label, g, q, domain_low, q_const);
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  if (!j.contains("model")) throw ConfigError("config is missing 'model'");

  RunConfig cfg;
  cfg.model = parse_model(j.at("model"));
  cfg.diagnostics = default_diagnostics_config();

  if (j.contains("t_grid")) {
    const json& tg = j.at("t_grid");
    const double start = require_number(tg, "start", 0.0, true);
    const double stop = require_number(tg, "stop", 0.0, true);
    const int points =
        static_cast<int>(require_number(tg, "points", 0.0, true));
    if (!(start > 1.0) || !(stop > start) || points < 5)
      throw ConfigError(
          "t_grid needs start > 1, stop > start, and at least 5 points");
    cfg.diagnostics.t_grid.clear();
    for (int i = 0; i < points; ++i)
      cfg.diagnostics.t_grid.push_back(
          start * std::pow(stop / start, static_cast<double>(i) /
                                             (points - 1)));
  }
  if (j.contains("gaussian_t_grid")) {
    cfg.diagnostics.gaussian_t_grid =
        j.at("gaussian_t_grid").get<std::vector<double>>();
    if (cfg.diagnostics.gaussian_t_grid.empty())
      throw ConfigError("gaussian_t_grid must not be empty");
  }
  if (j.contains("lambda_grid")) {
    cfg.diagnostics.lambda_grid =
        j.at("lambda_grid").get<std::vector<double>>();
    if (cfg.diagnostics.lambda_grid.empty())
      throw ConfigError("lambda_grid must not be empty");
  }
  if (j.contains("j_max")) {
    cfg.diagnostics.j_max =
        static_cast<int>(require_number(j, "j_max", 5.0));
    if (cfg.diagnostics.j_max < 2 || cfg.diagnostics.j_max > 10)
      throw ConfigError("j_max must be between 2 and 10");
  }
  if (j.contains("tolerances")) {
    const json& tol = j.at("tolerances");
    DiagnosticsConfig& d = cfg.diagnostics;
    d.quadrature_rel_tol =
        require_number(tol, "quadrature_rel_tol", d.quadrature_rel_tol);
    d.pass_threshold_primary = require_number(tol, "pass_threshold_primary",
                                              d.pass_threshold_primary);
    d.pass_threshold_higher = require_number(tol, "pass_threshold_higher",
                                             d.pass_threshold_higher);
    d.gaussian_threshold =
        require_number(tol, "gaussian_threshold", d.gaussian_threshold);
    d.trend.trend_epsilon =
        require_number(tol, "trend_epsilon", d.trend.trend_epsilon);
  }
  if (j.contains("output_prefix"))
    cfg.output_prefix = j.at("output_prefix").get<std::string>();
  return cfg;
}

}  // namespace tiltmom
