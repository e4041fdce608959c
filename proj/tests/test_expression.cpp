#include <doctest.h>

#include <cmath>
#include <limits>

#include "tiltmom/expression.hpp"

using namespace tiltmom;

TEST_CASE("parse and evaluate basic expressions") {
  const ExprPtr e = parse_expression("x^2 - log(x)");
  CHECK(eval_value(e, 2.0) == doctest::Approx(4.0 - std::log(2.0)).epsilon(1e-15));
  CHECK(eval_value(e, 1.0) == doctest::Approx(1.0).epsilon(1e-15));

  const ExprPtr f = parse_expression("exp(x - 1)");
  CHECK(eval_value(f, 3.5) == doctest::Approx(std::exp(2.5)).epsilon(1e-15));

  const ExprPtr g = parse_expression("(1 + x) / (2 * x) - x^-0.5");
  const double x = 0.7;
  CHECK(eval_value(g, x) ==
        doctest::Approx((1 + x) / (2 * x) - std::pow(x, -0.5)).epsilon(1e-15));
}

TEST_CASE("unary minus and whitespace") {
  CHECK(eval_value(parse_expression("-x + 3"), 1.0) == doctest::Approx(2.0));
  CHECK(eval_value(parse_expression("  - 2.5 "), 0.0) == doctest::Approx(-2.5));
}

TEST_CASE("parse errors carry a position") {
  CHECK_THROWS_AS(parse_expression("x +"), ParseError);
  CHECK_THROWS_AS(parse_expression("x ^ x"), ParseError);
  CHECK_THROWS_AS(parse_expression("sin(x)"), ParseError);
  CHECK_THROWS_AS(parse_expression("(x"), ParseError);
  CHECK_THROWS_AS(parse_expression(""), ParseError);
  try {
    parse_expression("x + @");
  } catch (const ParseError& err) {
    CHECK(err.position() == 4);
  }
}

TEST_CASE("domain violations throw EvalError") {
  CHECK_THROWS_AS(eval_value(parse_expression("log(x)"), -1.0), EvalError);
  CHECK_THROWS_AS(eval_value(parse_expression("1 / x"), 0.0), EvalError);
  CHECK_THROWS_AS(eval_value(parse_expression("x^0.5"), -4.0), EvalError);
}

TEST_CASE("jet derivatives match closed forms") {
  // g(x) = x^3: derivatives 3x^2, 6x, 6, 0.
  const Jet4 cubic = eval_jet(parse_expression("x^3"), 2.0);
  CHECK(cubic.value == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(cubic.d1 == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(cubic.d2 == doctest::Approx(12.0).epsilon(1e-14));
  CHECK(cubic.d3 == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(cubic.d4 == doctest::Approx(0.0).epsilon(1e-14));

  // All derivatives of exp(x - 1) equal its value.
  const Jet4 ee = eval_jet(parse_expression("exp(x - 1)"), 2.3);
  const double v = std::exp(1.3);
  CHECK(ee.value == doctest::Approx(v).epsilon(1e-14));
  CHECK(ee.d1 == doctest::Approx(v).epsilon(1e-14));
  CHECK(ee.d2 == doctest::Approx(v).epsilon(1e-14));
  CHECK(ee.d3 == doctest::Approx(v).epsilon(1e-13));
  CHECK(ee.d4 == doctest::Approx(v).epsilon(1e-13));

  // log(x): 1/x, -1/x^2, 2/x^3, -6/x^4.
  const double x = 1.7;
  const Jet4 lg = eval_jet(parse_expression("log(x)"), x);
  CHECK(lg.d1 == doctest::Approx(1 / x).epsilon(1e-14));
  CHECK(lg.d2 == doctest::Approx(-1 / (x * x)).epsilon(1e-14));
  CHECK(lg.d3 == doctest::Approx(2 / (x * x * x)).epsilon(1e-13));
  CHECK(lg.d4 == doctest::Approx(-6 / (x * x * x * x)).epsilon(1e-13));

  // Non-integer power: x^2.5.
  const Jet4 pw = eval_jet(parse_expression("x^2.5"), x);
  CHECK(pw.d1 == doctest::Approx(2.5 * std::pow(x, 1.5)).epsilon(1e-13));
  CHECK(pw.d2 == doctest::Approx(2.5 * 1.5 * std::pow(x, 0.5)).epsilon(1e-13));
  CHECK(pw.d3 ==
        doctest::Approx(2.5 * 1.5 * 0.5 * std::pow(x, -0.5)).epsilon(1e-12));

  // Quotient: (x^2 + 1) / x has derivative 1 - 1/x^2.
  const Jet4 qu = eval_jet(parse_expression("(x^2 + 1) / x"), x);
  CHECK(qu.d1 == doctest::Approx(1 - 1 / (x * x)).epsilon(1e-13));
  CHECK(qu.d2 == doctest::Approx(2 / (x * x * x)).epsilon(1e-13));
}

TEST_CASE("symbolic differentiation agrees with jets") {
  const char* sources[] = {"x^3 - 2*log(x)", "exp(x - 1)",
                           "x^2.5 / (1 + x)", "log(x^2 + 1) + x^-2"};
  for (const char* src : sources) {
    const ExprPtr e = parse_expression(src);
    const ExprPtr de = differentiate(e);
    for (double x : {0.5, 1.0, 2.7, 10.0}) {
      const Jet4 j = eval_jet(e, x);
      CHECK(eval_value(de, x) ==
            doctest::Approx(j.d1).epsilon(1e-12).scale(std::fabs(j.d1) + 1));
    }
  }
}

TEST_CASE("print round-trips through the parser") {
  const char* sources[] = {"x^2 - log(x)", "exp(x - 1)", "-x + 3/(x*x)",
                           "x^-0.5"};
  for (const char* src : sources) {
    const ExprPtr e = parse_expression(src);
    const ExprPtr back = parse_expression(print_expression(e));
    for (double x : {0.5, 1.3, 8.0}) {
      CHECK(eval_value(back, x) == doctest::Approx(eval_value(e, x)).epsilon(1e-15));
    }
  }
}

TEST_CASE("extended-precision evaluation") {
  const ExprPtr e = parse_expression("x^2 - log(x)");
  const long double x = 1.0000000001L;
  const long double want = x * x - logl(x);
  CHECK(static_cast<double>(eval_value_ld(e, x) - want) ==
        doctest::Approx(0.0).epsilon(1e-18));
}

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
  }
}
