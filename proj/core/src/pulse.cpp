#include "nifield/pulse.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nifield/errors.hpp"

namespace nifield {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int PulseProfile::smoothness_class() const noexcept {
  const double twice = 2.0 * exponent;
  if (std::abs(exponent - std::round(exponent)) < 1e-12) return -1;
  return static_cast<int>(std::ceil(twice)) - 1;
}

PulseProfile::Value eval_pulse(const PulseProfile& profile, double r) noexcept { return profile.eval(r); }

double shape_mass(double exponent, double quadrature_tol) {
  return integrate([exponent](double r) { return std::pow(std::sin(0.5 * r), 2.0 * exponent); }, 0.0,
                   kTwoPi, quadrature_tol);
}

double shape_slope_energy(double exponent, double quadrature_tol) {
  return integrate(
      [exponent](double r) {
        const double s = std::sin(0.5 * r);
        const double d = exponent * std::pow(s, 2.0 * exponent - 1.0) * std::cos(0.5 * r);
        return d * d;
      },
      0.0, kTwoPi, quadrature_tol);
}

namespace {

struct Trial {
  double amplitude;
  double energy_condition;  // 4*pi*alpha*int (f0')^2 - 1
};

Trial trial(double alpha, double exponent, double qtol) {
  const double amplitude = kTwoPi / shape_mass(exponent, qtol);
  const double slope = amplitude * amplitude * shape_slope_energy(exponent, qtol);
  return {amplitude, 4.0 * std::numbers::pi * alpha * slope - 1.0};
}

}  // namespace

PulseProfile calibrate_pulse(double alpha, double tol, const CalibrationOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::NoRoot, "alpha must lie in (0, 1)");
  if (!(tol > 0.0)) throw Error(ErrorCode::Tolerance, "calibration tolerance must be positive");

  double lo = opts.exponent_lo;
  double hi = opts.exponent_hi;
  double f_lo = trial(alpha, lo, opts.quadrature_tol).energy_condition;
  const double f_hi = trial(alpha, hi, opts.quadrature_tol).energy_condition;
  if (!(f_lo < 0.0 && f_hi > 0.0)) {
    throw Error(ErrorCode::NoRoot, "slope-energy condition has no sign change for exponent in [" +
                                       std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }

  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = trial(alpha, mid, opts.quadrature_tol).energy_condition;
    if (f_mid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  PulseProfile profile;
  profile.exponent = 0.5 * (lo + hi);
  profile.alpha = alpha;
  const Trial t = trial(alpha, profile.exponent, opts.quadrature_tol);
  profile.amplitude = t.amplitude;

  // Residuals are re-measured on the final profile itself.
  const double mean = integrate([&](double r) { return profile.f0(r); }, 0.0, kTwoPi, opts.quadrature_tol);
  const double slope = integrate(
      [&](double r) {
        const double d = profile.df0(r);
        return d * d;
      },
      0.0, kTwoPi, opts.quadrature_tol);
  profile.mean_residual = mean / kTwoPi - 1.0;
  profile.energy_residual = 4.0 * std::numbers::pi * alpha * slope - 1.0;

  if (std::abs(profile.mean_residual) > tol || std::abs(profile.energy_residual) > tol) {
    throw Error(ErrorCode::Tolerance, "calibrated residuals exceed tolerance");
  }
  return profile;
}

}  // namespace nifield
