#pragma once

#include <functional>
#include <span>
#include <vector>

namespace nifield {

struct QuadratureOptions {
  double tol = 1e-12;          // absolute error target
  int max_subdivisions = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;   // estimated absolute error
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of fn over [a, b].
///
/// Intervals are bisected in order of largest error estimate until the summed
/// estimate drops below tol, or below the double-precision floor of the
/// integrand's L1 norm. Throws Error{Tolerance} when max_subdivisions is
/// exhausted first. The result is a deterministic function of the inputs.
QuadratureResult integrate_adaptive(const std::function<double(double)>& fn, double a, double b,
                                    const QuadratureOptions& opts = {});

/// Value-only convenience wrapper around integrate_adaptive.
double integrate(const std::function<double(double)>& fn, double a, double b, double tol = 1e-12);

/// Same as integrate() but with panels forced to start at every breakpoint
/// that lies strictly inside (a, b).
double integrate_with_breakpoints(const std::function<double(double)>& fn, double a, double b,
                                  std::span<const double> breakpoints, double tol = 1e-12);

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Computed by Newton iteration on the Legendre recurrence; n >= 1.
GaussLegendreRule gauss_legendre(int n);

}  // namespace nifield
