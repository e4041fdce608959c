#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tiltmom {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double abs_integral = 0.0;  // integral of |f|, used for relative targets
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  std::size_t max_panels = 4096;
};

// Adaptive Gauss-Kronrod (7-15) integration of f over [a, b].  Panels are
// bisected worst-first; the final sum is accumulated in increasing order of
// the left endpoint so results are bit-for-bit deterministic.  Throws
// QuadratureError if the tolerance cannot be met within max_panels.
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, const QuadratureOptions& opts = {});

// Same adaptive scheme for a family of integrands evaluated at shared
// abscissae.  The subdivision is driven by the worst per-component relative
// error, so every component sees the same panel set.
std::vector<QuadratureResult> integrate_many(
    const std::function<void(double, double*)>& f, std::size_t n_components,
    double a, double b, const QuadratureOptions& opts = {});

}  // namespace tiltmom
