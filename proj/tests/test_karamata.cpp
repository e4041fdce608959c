#include <doctest.h>

#include <cmath>
#include <vector>

#include "tiltmom/errors.hpp"
#include "tiltmom/karamata.hpp"

using namespace tiltmom;

namespace {

std::vector<std::pair<double, double>> grid_of(
    const std::function<double(double)>& f) {
  std::vector<std::pair<double, double>> g;
  for (double x = 10.0; x <= 1e6; x *= 1.5) g.emplace_back(x, f(x));
  return g;
}

}  // namespace

TEST_CASE("judge_trend separates the three regimes") {
  CHECK(judge_trend(grid_of([](double x) { return 1.0 / x; }), 1e-2) ==
        TrendVerdict::ConvergesToZero);
  CHECK(judge_trend(grid_of([](double) { return 0.7; }), 1e-2) ==
        TrendVerdict::Bounded);
  CHECK(judge_trend(grid_of([](double x) { return std::sqrt(x); }), 1e-2) ==
        TrendVerdict::Diverges);
  // Values below the noise floor count as vanished even without a trend.
  CHECK(judge_trend(grid_of([](double) { return 1e-14; }), 1e-2) ==
        TrendVerdict::ConvergesToZero);
  // Decaying but still above threshold at the end: not vanished yet.
  CHECK(judge_trend(grid_of([](double x) { return 5.0 / std::log(x); }), 1e-2) !=
        TrendVerdict::ConvergesToZero);
}

TEST_CASE("estimate_rv_index recovers power laws") {
  const IndexEstimate a =
      estimate_rv_index([](double x) { return std::pow(x, 2.5); });
  CHECK_FALSE(a.diverging);
  CHECK(a.index == doctest::Approx(2.5).epsilon(1e-6));

  const IndexEstimate b = estimate_rv_index(
      [](double x) { return 3.0 * std::pow(x, 1.5) * std::log(x); });
  CHECK_FALSE(b.diverging);
  CHECK(b.index == doctest::Approx(1.5).epsilon(0.1));

  const IndexEstimate c =
      estimate_rv_index([](double x) { return std::exp(x / 100); });
  CHECK(c.diverging);
}

TEST_CASE("epsilon_x matches the weibull closed form") {
  // For h = k x^{k-1} - (k-1)/x, eps(x) = k(k-1) / (k x^k - (k-1)).
  for (double k : {1.5, 2.0, 3.0}) {
    const TailModel m = builtin_model("weibull", k);
    for (double x : {2.0, 10.0, 1e3}) {
      const double want = k * (k - 1) / (k * std::pow(x, k) - (k - 1));
      CHECK(epsilon_x(m, k - 1, x) == doctest::Approx(want).epsilon(1e-10));
    }
  }
}

TEST_CASE("epsilon_t matches the expexp closed form") {
  // psi(t) = log t + 1, so eps(t) = 1 / (log t + 1).
  const TailModel m = builtin_model("expexp");
  for (double t : {10.0, 1e3, 1e5}) {
    CHECK(epsilon_t(m, t) ==
          doctest::Approx(1.0 / (std::log(t) + 1)).epsilon(1e-8));
  }
}

TEST_CASE("case 1 conditions hold for weibull") {
  for (double k : {1.5, 3.0}) {
    const ConditionReport rep =
        check_case1_conditions(builtin_model("weibull", k), k - 1);
    CHECK(rep.all_pass);
    // h'' = k(k-1)(k-2) x^{k-3} - ... ; dominant growth index is k - 3
    // except at k = 2, where the x^{-3} correction term dominates.
    CHECK(rep.theta == doctest::Approx(k - 3).epsilon(0.05));
  }
}

TEST_CASE("oscillating epsilon fails the vanishing requirement") {
  // h(x) = x (2 + sin log x) is index 1 but eps(x) oscillates with
  // amplitude around 1/2 and never settles.
  const auto h = [](double x) { return x * (2 + std::sin(std::log(x))); };
  const ConditionReport rep = check_case1_conditions(h, 1.0);
  CHECK_FALSE(rep.all_pass);
  bool eps_failed = false;
  for (const TrendRecord& r : rep.records) {
    if (r.label.find("epsilon") != std::string::npos && !r.pass)
      eps_failed = true;
  }
  CHECK(eps_failed);
}

TEST_CASE("case 2 conditions hold for expexp") {
  const ConditionReport rep = check_case2_conditions(builtin_model("expexp"));
  CHECK(rep.all_pass);
}

TEST_CASE("constant q passes vacuously") {
  const TailModel m = builtin_model("weibull", 2.0);
  VariationClass cls;
  cls.kind = VariationClass::Kind::RegularlyVarying;
  cls.beta = 1.0;
  cls.theta = -3.0;
  const ConditionReport rep = check_q_conditions(m, cls);
  CHECK(rep.all_pass);
  REQUIRE_FALSE(rep.records.empty());
  CHECK(rep.records.front().verdict == TrendVerdict::AlwaysPass);
}

TEST_CASE("classify routes the builtins and rejects the degenerate case") {
  for (double k : {1.5, 2.0, 3.0, 4.0}) {
    const VariationClass cls = classify(builtin_model("weibull", k));
    CHECK(cls.kind == VariationClass::Kind::RegularlyVarying);
    CHECK(std::fabs(cls.beta - (k - 1)) < 0.02);
  }
  CHECK(classify(builtin_model("expexp")).kind ==
        VariationClass::Kind::RapidlyVarying);
  const VariationClass lin = classify(custom_model("linear", "x", "0", 0.0, true));
  CHECK(lin.kind == VariationClass::Kind::Unsupported);
  CHECK_FALSE(lin.reason.empty());
}

TEST_CASE("rapid case identities hold for expexp") {
  const ConditionReport rep =
      check_rapid_case_identities(builtin_model("expexp"));
  CHECK(rep.all_pass);
  // Identity checks are not trend heuristics; they must hold on the nose.
  CHECK_THROWS_AS(check_rapid_case_identities(builtin_model("weibull", 2.0)),
                  ConfigError);
}

TEST_CASE("variation corollaries for both cases") {
  {
    const TailModel m = builtin_model("weibull", 3.0);
    const ConditionReport rep = check_variation_corollaries(m, classify(m));
    CHECK(rep.all_pass);
  }
  {
    const TailModel m = builtin_model("expexp");
    const ConditionReport rep = check_variation_corollaries(m, classify(m));
    CHECK(rep.all_pass);
  }
}

TEST_CASE("local uniform convergence of a slowly varying factor") {
  const auto l = [](double x) { return std::sqrt(x); };
  const auto records = check_local_uniform_convergence(l, 0.5);
  REQUIRE(records.size() == 2);
  CHECK(records[0].pass);
  CHECK(records[1].pass);
}
