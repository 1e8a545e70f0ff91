#pragma once

#include <functional>
#include <vector>

#include "nifield/averaging.hpp"
#include "nifield/maxwell_check.hpp"
#include "nifield/particle_field.hpp"

namespace nifield {

/// u = (q^2 + |E|^2 + |B|^2) / 2 and S = q E + E x B.
struct EnergySample {
  double u = 0.0;
  Vec3 S = Vec3::Zero();
  Event at;
};

EnergySample energy_density_flux(const FieldSample& fs);

using EnergySampler = std::function<EnergySample(const Event&)>;

EnergySampler energy_sampler(FieldSampler fields);

/// div S + (1/c) du/dt - 4 pi (rho q - j.E / c), with rho = j = 0 at
/// off-source events, by centred differences. Throws
/// Error{TooCloseToSource} like maxwell_residuals.
double conservation_residual(const EnergySampler& sampler, const Event& ev, double h, const StencilOptions& opts = {});
double conservation_residual(const FieldSampler& sampler, const Event& ev, double h, const StencilOptions& opts = {});

/// Expected average of the radial flux, omega' hbar / (4 pi tau' c r^2).
double expected_radial_poynting(const SimulationConstants& k, double r);

/// Window average of q' E' . e_R in the rest frame at distance r along
/// `direction`, over [T, T + tau'].
double averaged_radial_poynting(const ParticleSource& src, double r, double T, const Vec3& direction = Vec3::UnitX(),
                                const AverageOptions& opts = {});

/// The same average for the 26 directions of the unit cube's faces, edges
/// and corners; all entries agree by spherical symmetry.
std::vector<double> radial_poynting_directions(const ParticleSource& src, double r, double T);

struct PulseEnergy {
  double per_pulse = 0.0;  // E'_j
  double total = 0.0;      // N E'_0 for finite sources; per_pulse otherwise
  double expected = 0.0;   // omega' hbar
  double radius = 0.0;
};

/// E'_j = c tau' * 4 pi R^2 * A[S'.e_R](R, T_j), with the window
/// T_j = R/c + j tau' covering exactly the transit of pulse j through R.
/// For finite sources the total is integrated over the full lifetime
/// transit [R/c, R/c + N tau'] independently of the per-pulse value.
PulseEnergy pulse_energy(const ParticleSource& src, int pulse_index = 0, double radius = 0.0);

/// Classical comparison at x': u_cl = |A[E]|^2/2 + |A[B]|^2/2 and
/// S_cl = A[E] x A[B] from averaged fields, versus A[u] and A[S].
struct ClassicalComparison {
  double u_cl = 0.0;
  Vec3 S_cl = Vec3::Zero();
  double Au = 0.0;
  Vec3 AS = Vec3::Zero();
};

ClassicalComparison classical_comparison(const ParticleSource& src, const Vec3& x_rest, double T = 0.0);

}  // namespace nifield
