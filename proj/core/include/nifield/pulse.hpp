#pragma once

#include <cmath>
#include <numbers>

#include "nifield/quadrature.hpp"

namespace nifield {

/// Emission shape f0(r) = a * sin(r/2)^(2p) on the phase interval [0, 2*pi],
/// zero elsewhere. Non-negative and symmetric about r = pi.
///
/// The two parameters are fixed by the normalisation conditions
///   (1/2pi) * int f0 dr = 1       and     4*pi*alpha * int (f0')^2 dr = 1,
/// see calibrate_pulse(). The residuals of both conditions are kept with the
/// profile so reports can quote them.
struct PulseProfile {
  double exponent = 1.0;   // p
  double amplitude = 2.0;  // a
  double alpha = 0.0;      // coupling the profile was calibrated for
  double mean_residual = 0.0;
  double energy_residual = 0.0;

  struct Value {
    double f0;
    double df0;
  };

  /// Closed-form value and phase derivative. Total function.
  Value eval(double r) const noexcept {
    if (!(r > 0.0 && r < 2.0 * std::numbers::pi)) return {0.0, 0.0};
    const double s = std::sin(0.5 * r);
    const double c = std::cos(0.5 * r);
    const double s_pow = std::pow(s, 2.0 * exponent - 1.0);
    return {amplitude * s_pow * s, amplitude * exponent * s_pow * c};
  }

  /// Second phase derivative, (a p / 2) [(2p - 1) s^(2p-2) c^2 - s^(2p)].
  double d2f0(double r) const noexcept {
    if (!(r > 0.0 && r < 2.0 * std::numbers::pi)) return 0.0;
    const double s = std::sin(0.5 * r);
    const double c = std::cos(0.5 * r);
    const double s_pow = std::pow(s, 2.0 * exponent - 2.0);
    return 0.5 * amplitude * exponent * s_pow * ((2.0 * exponent - 1.0) * c * c - s * s);
  }

  double f0(double r) const noexcept { return eval(r).f0; }
  double df0(double r) const noexcept { return eval(r).df0; }

  /// Periodic train sum_j f0(r - 2*pi*j) over all integers j. Because the
  /// support is exactly one period, only one term is ever non-zero.
  Value train(double r) const noexcept {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    return eval(r - two_pi * std::floor(r / two_pi));
  }

  /// Number of continuous derivatives at the support endpoints: 2p - 1
  /// rounded up for non-integer 2p; unbounded (reported as -1) when p is an
  /// integer, because sin^(2p) is then an entire trigonometric polynomial.
  int smoothness_class() const noexcept;
};

PulseProfile::Value eval_pulse(const PulseProfile& profile, double r) noexcept;

struct CalibrationOptions {
  double exponent_lo = 1.0;
  double exponent_hi = 10.0;
  double quadrature_tol = 1e-12;
};

/// Solve both normalisation conditions for the sin^(2p) family.
///
/// The amplitude is eliminated through the first condition; the exponent is
/// located by bisection on the remaining scalar equation. Throws
/// Error{NoRoot} when the bracket does not straddle a sign change and
/// Error{Tolerance} when either residual ends above tol.
PulseProfile calibrate_pulse(double alpha, double tol = 1e-10, const CalibrationOptions& opts = {});

/// Integrals of the shape family used by the calibration, by quadrature.
/// Exposed for tests and the benchmark.
double shape_mass(double exponent, double quadrature_tol = 1e-12);        // int sin^(2p)(r/2) dr
double shape_slope_energy(double exponent, double quadrature_tol = 1e-12);  // int (d/dr sin^(2p)(r/2))^2 dr

}  // namespace nifield
