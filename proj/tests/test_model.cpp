#include <doctest.h>

#include <cmath>

#include "tiltmom/errors.hpp"
#include "tiltmom/model.hpp"
#include "tiltmom/quadrature.hpp"

using namespace tiltmom;

TEST_CASE("weibull builtin matches its closed form") {
  const TailModel m = builtin_model("weibull", 2.0);
  const double x = 1.7;
  // g(x) = x^k - (k-1) log x, q = log k, so p(x) = k x^{k-1} exp(-x^k).
  CHECK(m.g_value(x) == doctest::Approx(x * x - std::log(x)).epsilon(1e-15));
  CHECK(m.q_value(x) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(m.h_value(x) == doctest::Approx(2 * x - 1 / x).epsilon(1e-14));
  CHECK(m.log_density(x) ==
        doctest::Approx(std::log(2 * x * std::exp(-x * x))).epsilon(1e-13));
  CHECK(m.domain_low == 0.0);
  CHECK(m.q_eventually_constant);
}

TEST_CASE("weibull density integrates to one") {
  for (double k : {1.5, 2.0, 3.0}) {
    const TailModel m = builtin_model("weibull", k);
    const auto r = integrate([&](double x) { return std::exp(m.log_density(x)); },
                             1e-12, 20.0);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("expexp builtin normalizes to one") {
  const TailModel m = builtin_model("expexp");
  CHECK(m.q_eventually_constant);
  const double x = 2.2;
  CHECK(m.g_value(x) == doctest::Approx(std::exp(x - 1)).epsilon(1e-15));
  // c = exp(q) must be the reciprocal of the unnormalized mass.
  const auto mass = integrate(
      [](double x) { return std::exp(-std::exp(x - 1)); }, 0.0, 40.0);
  CHECK(std::exp(m.q_value(1.0)) == doctest::Approx(1.0 / mass.value).epsilon(1e-12));
}

TEST_CASE("builtin rejects bad arguments") {
  CHECK_THROWS_AS(builtin_model("weibull", 1.0), ConfigError);
  CHECK_THROWS_AS(builtin_model("weibull", 0.5), ConfigError);
  CHECK_THROWS_AS(builtin_model("nosuch"), ConfigError);
}

TEST_CASE("custom model wires up expressions and the derivative") {
  const TailModel m = custom_model("gauss", "x^2 / 2", "0", -40.0, true);
  CHECK(m.g_value(3.0) == doctest::Approx(4.5));
  CHECK(m.h_value(3.0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(m.q_value(7.0) == 0.0);
  CHECK(m.domain_low == -40.0);
}

TEST_CASE("validate_model accepts the builtins") {
  CHECK(validate_model(builtin_model("weibull", 2.0)).ok);
  CHECK(validate_model(builtin_model("weibull", 1.5)).ok);
  CHECK(validate_model(builtin_model("expexp")).ok);
}

TEST_CASE("validate_model flags tails that are not light or not convex") {
  // g linear: g(x)/x does not grow, h is constant.
  const ValidationReport lin =
      validate_model(custom_model("linear", "x", "0", 0.0, true));
  CHECK_FALSE(lin.ok);
  // g concave in the tail: h decreasing.
  const ValidationReport lg =
      validate_model(custom_model("sqrt", "x^0.5", "0", 0.0, true));
  CHECK_FALSE(lg.ok);
  // unbounded q correction.
  const ValidationReport uq =
      validate_model(custom_model("bigq", "x^2", "x", 0.0, false));
  CHECK_FALSE(uq.ok);
  CHECK_FALSE(uq.issues.empty());
}
