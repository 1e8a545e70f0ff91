#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "nifield/errors.hpp"

namespace nifield {

using Vec3 = Eigen::Vector3d;

/// CODATA 2018 fine structure constant.
inline constexpr double kFineStructure = 7.2973525693e-3;

/// Physical constants in simulation units.
///
/// The default instance uses c = hbar = tau' = 1, so omega' = k' = 2*pi and
/// the elementary charge is sqrt(alpha). All derived members are computed
/// by make(); construct through it rather than aggregate-initialising.
struct SimulationConstants {
  double c = 1.0;
  double hbar = 1.0;
  double alpha = kFineStructure;
  double e = std::sqrt(kFineStructure);
  double tau_prime = 1.0;
  double omega_prime = 2.0 * std::numbers::pi;
  double k_prime = 2.0 * std::numbers::pi;

  /// Throws Error{ConfigInvalid} unless every input is strictly positive
  /// and alpha < 1.
  static SimulationConstants make(double c, double hbar, double alpha, double tau_prime);

  static SimulationConstants sim_units() { return make(1.0, 1.0, kFineStructure, 1.0); }

  /// Lorentz factor for a speed; no range check.
  double gamma(double speed) const { return 1.0 / std::sqrt(1.0 - (speed * speed) / (c * c)); }
};

inline SimulationConstants SimulationConstants::make(double c, double hbar, double alpha, double tau_prime) {
  if (!(c > 0.0 && hbar > 0.0 && alpha > 0.0 && alpha < 1.0 && tau_prime > 0.0)) {
    throw Error(ErrorCode::ConfigInvalid, "simulation constants must be positive with alpha < 1");
  }
  SimulationConstants k;
  k.c = c;
  k.hbar = hbar;
  k.alpha = alpha;
  k.e = std::sqrt(alpha * c * hbar);
  k.tau_prime = tau_prime;
  k.omega_prime = 2.0 * std::numbers::pi / tau_prime;
  k.k_prime = k.omega_prime / c;
  return k;
}

}  // namespace nifield
