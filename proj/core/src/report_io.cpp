#include "tiltmom/report_io.hpp"

#include <json.hpp>

namespace tiltmom {

namespace {

using json = nlohmann::json;

const char* kind_name(VariationClass::Kind k) {
  switch (k) {
    case VariationClass::Kind::RegularlyVarying:
      return "RegularlyVarying";
    case VariationClass::Kind::RapidlyVarying:
      return "RapidlyVarying";
    case VariationClass::Kind::Unsupported:
      return "Unsupported";
  }
  return "Unsupported";
}

json trend_to_json(const TrendRecord& rec) {
  json g = json::array();
  for (const auto& [x, v] : rec.grid) g.push_back(json::array({x, v}));
  return json{{"label", rec.label},
              {"grid", std::move(g)},
              {"verdict", to_string(rec.verdict)},
              {"tail_ratio", rec.tail_ratio},
              {"pass", rec.pass}};
}

json variation_to_json(const VariationClass& cls) {
  json evidence = json::array();
  for (const TrendRecord& rec : cls.evidence)
    evidence.push_back(trend_to_json(rec));
  json j{{"kind", kind_name(cls.kind)}, {"evidence", std::move(evidence)}};
  if (cls.kind == VariationClass::Kind::RegularlyVarying) {
    j["beta"] = cls.beta;
    j["beta_stderr"] = cls.beta_stderr;
    j["theta"] = cls.theta;
  }
  j["eta"] = cls.eta;
  if (!cls.reason.empty()) j["reason"] = cls.reason;
  return j;
}

json moments_to_json(const MomentSet& ms) {
  json mu = json::object();
  for (const auto& [k, v] : ms.mu) mu[std::to_string(k)] = v;
  return json{{"t", ms.t},
              {"log_phi", ms.log_phi},
              {"m", ms.m},
              {"s2", ms.s2},
              {"mu", std::move(mu)},
              {"source", ms.source == MomentSet::Source::Oracle
                             ? "oracle"
                             : "asymptotic"}};
}

}  // namespace

std::string to_json(const VariationClass& cls) {
  return variation_to_json(cls).dump(2);
}

std::string to_json(const MomentSet& ms) { return moments_to_json(ms).dump(2); }

std::string to_json(const TiltPoint& tp) {
  return json{{"t", tp.t},
              {"x_hat", tp.x_hat},
              {"sigma_hat2", tp.sigma_hat2},
              {"k_hat", tp.k_hat}}
      .dump(2);
}

std::string to_json(const DiagnosticsReport& report) {
  json issues = json::array();
  for (const ValidationIssue& issue : report.validation_issues)
    issues.push_back(json{{"check", issue.check}, {"detail", issue.detail}});

  json series = json::array();
  for (const RatioSeries& s : report.ratio_series) {
    json rows = json::array();
    for (const RatioRow& row : s.rows) {
      json r{{"t", row.t}};
      if (row.failed) {
        r["failed"] = true;
        r["note"] = row.note;
      } else {
        r["exact"] = row.exact;
        r["asymptotic"] = row.asymptotic;
        if (row.near_zero_denominator)
          r["near_zero_denominator"] = true;
        else
          r["ratio"] = row.ratio;
      }
      rows.push_back(std::move(r));
    }
    series.push_back(json{{"label", s.label},
                          {"rows", std::move(rows)},
                          {"converged", s.converged},
                          {"final_abs_dev", s.final_abs_dev}});
  }

  json trends = json::array();
  for (const TrendRecord& rec : report.trend_records)
    trends.push_back(trend_to_json(rec));

  json gauss = json::array();
  for (const GaussianRow& row : report.gaussian) {
    json r{{"t", row.t}};
    if (row.failed) {
      r["failed"] = true;
    } else {
      r["ks_distance"] = row.ks_distance;
      r["mgf_max_dev"] = row.mgf_max_dev;
    }
    gauss.push_back(std::move(r));
  }

  return json{{"model", report.model_label},
              {"model_valid", report.model_valid},
              {"validation_issues", std::move(issues)},
              {"variation", variation_to_json(report.variation)},
              {"ratio_series", std::move(series)},
              {"trend_records", std::move(trends)},
              {"gaussian", std::move(gauss)},
              {"verdict", report.verdict}}
      .dump(2);
}

std::string ratio_series_csv(const RatioSeries& series) {
  std::string out = "t,exact,asymptotic,ratio\n";
  for (const RatioRow& row : series.rows) {
    out += format_double(row.t);
    out += ',';
    if (row.failed) {
      out += ",,";
    } else {
      out += format_double(row.exact);
      out += ',';
      out += format_double(row.asymptotic);
      out += ',';
      if (!row.near_zero_denominator) out += format_double(row.ratio);
    }
    out += '\n';
  }
  return out;
}

}  // namespace tiltmom
