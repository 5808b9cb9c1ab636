#pragma once

#include <functional>
#include <span>

namespace lil {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  unsigned max_depth = 15;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;

  QuadratureResult& operator+=(const QuadratureResult& other) {
    value += other.value;
    error += other.error;
    return *this;
  }
};

/// Adaptive Gauss-Kronrod over [a, b] with 0 < a < b. The interval is cut at
/// every breakpoint inside it, then into panels no wider than a factor 2 in y,
/// and each panel is split again so it spans at most half a period of an
/// oscillation with angular frequency `oscillation` (0 = none). Each panel is
/// integrated in log y, which flattens power-law densities.
QuadratureResult integrate_radial(const std::function<double(double)>& f, double a, double b,
                                  std::span<const double> breakpoints, double oscillation,
                                  const QuadratureConfig& config);

/// Throws Error(quadrature_failure) when the accumulated error estimate exceeds
/// max(abs_tol, rel_tol * |value|).
void require_converged(const QuadratureResult& result, const QuadratureConfig& config,
                       const char* what);

/// Fixed-order Gauss-Legendre integral of f over [a, b] in the variable log t.
double integrate_log_fixed(const std::function<double(double)>& f, double a, double b);

}  // namespace lil
