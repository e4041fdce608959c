#include <doctest.h>

#include <cmath>
#include <vector>

#include "tiltmom/errors.hpp"
#include "tiltmom/quadrature.hpp"

using namespace tiltmom;

TEST_CASE("polynomial and smooth integrands to near machine precision") {
  const auto cube = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(cube.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

  const auto gauss =
      integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0);
  CHECK(gauss.value == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));

  const auto osc =
      integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(osc.value == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(osc.error_estimate < 1e-10);
}

TEST_CASE("mild endpoint singularity is handled by subdivision") {
  const auto r = integrate([](double x) { return 1.0 / std::sqrt(x); },
                           1e-300, 1.0, {.rel_tol = 1e-10, .max_panels = 4096});
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.panels > 1);
}

TEST_CASE("budget exhaustion throws") {
  QuadratureOptions opts;
  opts.rel_tol = 1e-15;
  opts.max_panels = 4;
  CHECK_THROWS_AS(
      integrate([](double x) { return 1.0 / std::sqrt(std::fabs(x) + 1e-30); },
                -1.0, 1.0, opts),
      QuadratureError);
}

TEST_CASE("integrate_many agrees with componentwise integrate") {
  const auto many = integrate_many(
      [](double x, double* out) {
        out[0] = std::exp(-x);
        out[1] = x * std::exp(-x);
        out[2] = x * x * std::exp(-x);
      },
      3, 0.0, 50.0);
  REQUIRE(many.size() == 3);
  CHECK(many[0].value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(many[1].value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(many[2].value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("results are bit-for-bit deterministic") {
  const auto f = [](double x) { return std::exp(-x * x) * std::cos(3 * x); };
  const auto a = integrate(f, -8.0, 8.0);
  const auto b = integrate(f, -8.0, 8.0);
  CHECK(a.value == b.value);
  CHECK(a.panels == b.panels);
}
