#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "nifield/particle_field.hpp"
#include "nifield/relativity.hpp"

namespace nifield {

/// Residuals of the modified source-free system at one event:
///   gauss   = div E + (1/c) dq/dt            (- 4 pi rho, zero off-source)
///   faraday = curl E + (1/c) dB/dt
///   div_b   = div B
///   ampere  = curl B - (1/c) dE/dt - grad q  (- 4 pi j / c, zero off-source)
struct ResidualReport {
  double gauss = 0.0;
  Vec3 faraday = Vec3::Zero();
  double div_b = 0.0;
  Vec3 ampere = Vec3::Zero();
  double h = 0.0;
  Event at;
};

/// Distance from an event to the nearest source, used to refuse stencils
/// that would straddle a singularity.
using SourceDistance = std::function<double(const Event&)>;

/// Lab-frame distance to the moving point charge, |x - v_lab t|.
SourceDistance particle_distance(const ParticleSource& src);

struct StencilOptions {
  double c = 1.0;
  SourceDistance distance;     // unchecked when empty
  double min_distance_in_steps = 10.0;
};

/// Centred second-order differences with spatial step h and time step h/c.
/// Throws Error{TooCloseToSource} when distance(ev) <= 10 h.
ResidualReport maxwell_residuals(const FieldSampler& sampler, const Event& ev, double h,
                                 const StencilOptions& opts = {});

/// Componentwise d'Alembertian  lap A^mu - (1/c^2) d^2 A^mu / dt^2.
FourVector wave_residual(const PotentialSampler& potential, const Event& ev, double h,
                         const StencilOptions& opts = {});

/// Fields E = -grad phi - (1/c) dA/dt, B = curl A, q = (1/c) dphi/dt + div A
/// from a potential by centred differences with step h.
FieldSampler fields_from_potential(PotentialSampler potential, double h, double c);

/// log2(r(h) / r(h/2)) for each residual component; nullopt where both
/// residuals sit below the noise floor.
struct MaxwellOrders {
  std::optional<double> gauss, faraday, div_b, ampere;
};

struct WaveOrders {
  std::optional<double> phi, a;
};

/// Generic Richardson order for a residual magnitude as a function of h.
/// Throws Error{DegenerateResidual} if r(h) and r(h/2) are both below
/// noise_floor.
double convergence_order(const std::function<double(double)>& residual, double h, double noise_floor = 1e-10);

/// Throws Error{DegenerateResidual} if every component is degenerate.
MaxwellOrders convergence_order(const FieldSampler& sampler, const Event& ev, double h,
                                const StencilOptions& opts = {}, double noise_floor = 1e-10);

WaveOrders wave_convergence_order(const PotentialSampler& potential, const Event& ev, double h,
                                  const StencilOptions& opts = {}, double noise_floor = 1e-10);

/// CSV with header t,x,y,z,gauss,faraday_x,faraday_y,faraday_z,divB,ampere_x,ampere_y,ampere_z,h
std::string residual_csv_header();
void write_residual_csv(std::ostream& os, std::span<const ResidualReport> rows);

/// Shortest round-trip decimal representation, used by every CSV writer.
std::string format_number(double v);

}  // namespace nifield
