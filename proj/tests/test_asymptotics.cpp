#include <doctest.h>

#include <cmath>

#include "tiltmom/asymptotics.hpp"
#include "tiltmom/model.hpp"
#include "tiltmom/oracle.hpp"

using namespace tiltmom;

TEST_CASE("normal_moment is the double factorial sequence") {
  CHECK(normal_moment(0) == 1.0);
  CHECK(normal_moment(1) == 0.0);
  CHECK(normal_moment(2) == 1.0);
  CHECK(normal_moment(3) == 0.0);
  CHECK(normal_moment(4) == 3.0);
  CHECK(normal_moment(6) == 15.0);
  CHECK(normal_moment(8) == 105.0);
}

TEST_CASE("truncated_normal_moment closed forms") {
  for (double l : {0.5, 1.0, 3.0}) {
    // k = 0: sqrt(2 pi) erf(l / sqrt 2).
    CHECK(truncated_normal_moment(0, l) ==
          doctest::Approx(std::sqrt(2 * M_PI) * std::erf(l / std::sqrt(2.0)))
              .epsilon(1e-12));
    // k = 2: same minus the boundary term 2 l e^{-l^2/2}.
    CHECK(truncated_normal_moment(2, l) ==
          doctest::Approx(std::sqrt(2 * M_PI) * std::erf(l / std::sqrt(2.0)) -
                          2 * l * std::exp(-l * l / 2))
              .epsilon(1e-12));
    CHECK(truncated_normal_moment(1, l) == 0.0);
    CHECK(truncated_normal_moment(3, l) == 0.0);
  }
  // Wide windows recover the full normal moments (up to normalization).
  CHECK(truncated_normal_moment(4, 40.0) ==
        doctest::Approx(3.0 * std::sqrt(2 * M_PI)).epsilon(1e-12));
}

TEST_CASE("asymptotic moment relations") {
  const TailModel m = builtin_model("weibull", 2.0);
  const double t = 1000.0;
  const MomentSet as = asymptotic_moments(m, t, 7);
  const double s2 = as.s2;
  const double s = std::sqrt(s2);
  CHECK(as.mu.at(2) == s2);
  CHECK(as.mu.at(4) == doctest::Approx(3 * s2 * s2).epsilon(1e-14));
  CHECK(as.mu.at(6) == doctest::Approx(15 * s2 * s2 * s2).epsilon(1e-14));
  // Odd moments are proportional to mu3: mu5 = 10 mu3 s^2,
  // mu7 = (M_10 - 21 M_6) / 6 * mu3 * s^4 = 105 mu3 s^4.
  CHECK(as.mu.at(5) == doctest::Approx(10 * as.mu.at(3) * s2).epsilon(1e-13));
  CHECK(as.mu.at(7) ==
        doctest::Approx(105 * as.mu.at(3) * s2 * s2).epsilon(1e-13));
  CHECK(as.mu.at(3) > 0.0);  // g''' < 0 here, so the skew is positive
  CHECK(as.source == MomentSet::Source::Asymptotic);
}

TEST_CASE("refined_mean reduces to the saddle point for a quadratic") {
  const TailModel gauss = custom_model("gauss", "x^2 / 2", "0", -40.0, true);
  CHECK(refined_mean(gauss, 5.0) == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("refined_mean beats the saddle point as a mean estimate") {
  const TailModel m = builtin_model("weibull", 3.0);
  for (double t : {100.0, 1000.0}) {
    const TiltPoint tp = tilt_point(m, t);
    const MomentSet ex = exact_moments(m, t, 2);
    CHECK(std::fabs(refined_mean(m, t) - ex.m) <
          std::fabs(tp.x_hat - ex.m));
  }
}

TEST_CASE("gaussian_window_factor reduces to truncated moments for zero g'''") {
  const TailModel gauss = custom_model("gauss", "x^2 / 2", "0", -40.0, true);
  const double t = 100.0;
  const double l = std::log(t) / std::sqrt(2.0);
  for (int alpha : {0, 1, 2, 3}) {
    CHECK(gaussian_window_factor(gauss, t, alpha) ==
          doctest::Approx(truncated_normal_moment(alpha, l)).epsilon(1e-12));
  }
}

TEST_CASE("window factor predicts the saddle-centered integrals") {
  const TailModel m = builtin_model("weibull", 2.0);
  const double t = 1e4;
  const TiltPoint tp = tilt_point(m, t);
  for (int alpha : {0, 1, 2, 3, 4}) {
    const double exact = tilted_moment_about_saddle(m, t, alpha);
    const double predicted = std::pow(tp.sigma_hat, alpha + 1) *
                             gaussian_window_factor(m, t, alpha);
    CHECK(exact / predicted == doctest::Approx(1.0).epsilon(0.05));
  }
}
