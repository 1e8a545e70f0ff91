#pragma once

#include <optional>
#include <vector>

#include "nifield/averaging.hpp"
#include "nifield/constants.hpp"
#include "nifield/pulse.hpp"
#include "nifield/relativity.hpp"

namespace nifield {

enum class Modulation {
  Steady,  // m(t) = 1
  Pulsed,  // m(t) = sum_j f0(omega (t - t_on) - 2 pi j), mean 1 over any period
};

/// Finite solenoid of radius R_S and length L centred on the origin, axis z.
/// Surface current K(t) = sigma * v_drift * m(t - t_on) e_phi per unit
/// length, zero before t_on. An unset t_on means the current has been on
/// forever (pulses j in Z).
struct SolenoidSpec {
  double radius = 1.0;
  double length = 64.0;
  double sigma = 1.0;
  double v_drift = 1e-3;
  std::optional<double> t_on;
  Modulation modulation = Modulation::Pulsed;
  PulseProfile pulse;
  double c = 1.0;
  double period = 1.0;  // tau of the modulation

  double mean_current() const { return sigma * v_drift; }
  double omega() const;

  /// m(t - t_on) including the switch-on; exact zero before t_on.
  double modulation_at(double t) const;

  /// Smallest distance from (R, z) to the cylinder surface.
  double surface_distance(double R, double z) const;

  /// Throws Error{DegenerateInput} for non-positive geometry or v_drift >= c.
  void validate() const;

  SolenoidSpec steady() const {
    SolenoidSpec s = *this;
    s.modulation = Modulation::Steady;
    return s;
  }
};

/// Surface quadrature: periodic trapezoid in the azimuth and composite
/// Gauss-Legendre panels along the axis.
struct SurfaceQuadrature {
  int azimuth_nodes = 256;
  double panel_width = 0.25;  // in units of c * period
  int panel_order = 8;
};

/// Surface current density vector at a point on the cylinder (the point's
/// radius is ignored; only its azimuth matters).
Vec3 surface_current(const SolenoidSpec& spec, const Vec3& point, double t);

/// Azimuthal component A_phi(R, z, t) of the retarded potential
///   A(x, t) = (1/c) int_surface K(x_s, t - |x - x_s|/c) / |x - x_s| dS.
/// Throws Error{OnSurface} on the current sheet.
double vector_potential_phi(const SolenoidSpec& spec, double R, double z, double t, const SurfaceQuadrature& quad = {});

/// Cartesian A at an event.
Vec3 vector_potential(const SolenoidSpec& spec, const Event& ev, const SurfaceQuadrature& quad = {});

struct SolenoidFields {
  Vec3 E = Vec3::Zero();  // E_w = -(1/c) dA/dt
  Vec3 B = Vec3::Zero();  // B_w = curl A
};

/// Centred differences of A in cylindrical form: B_R = -dA_phi/dz,
/// B_z = (1/R) d(R A_phi)/dR (2 A_phi(h)/h on the axis).
SolenoidFields solenoid_fields(const SolenoidSpec& spec, const Event& ev, double h = 1e-3,
                               const SurfaceQuadrature& quad = {});

/// q = div A by Cartesian centred differences.
double solenoid_q(const SolenoidSpec& spec, const Event& ev, double h = 1e-3, const SurfaceQuadrature& quad = {});

struct SolenoidAverageOptions {
  double h = 1e-3;
  int time_nodes = 64;
  SurfaceQuadrature quad;
};

/// Window average of B_w over [T, T + period] at (R, 0, z).
Vec3 averaged_B(const SolenoidSpec& spec, double R, double z, double T, const SolenoidAverageOptions& opts = {});

/// B_z on the axis of the steady finite solenoid,
/// (2 pi K / c) [(L/2 - z)/sqrt((L/2 - z)^2 + R_S^2) + (L/2 + z)/sqrt((L/2 + z)^2 + R_S^2)].
double steady_axis_field(const SolenoidSpec& spec, double z);

struct LoopSpec {
  double radius = 2.0;
  double z = 0.0;
};

struct CirculationMode {
  bool averaged = false;
  double t = 0.0;  // instant, or window start when averaged
  static CirculationMode instantaneous(double t) { return {false, t}; }
  static CirculationMode window(double T) { return {true, T}; }
};

/// Loop integral of A around a coaxial circle, 2 pi R A_phi.
double circulation(const SolenoidSpec& spec, const LoopSpec& loop, CirculationMode mode,
                   const SolenoidAverageOptions& opts = {});

struct CausalityFront {
  double arrival = 0.0;
  double max_field_before = 0.0;
};

/// arrival = t_on + dist / c. max_field_before samples |E_w| + |B_w| at
/// `samples` instants before arrival, keeping the whole stencil outside the
/// light cone. Requires a switch-on time (Error{DegenerateInput}).
CausalityFront causality_front(const SolenoidSpec& spec, double R, double z, int samples = 16,
                               const SolenoidAverageOptions& opts = {});

struct AmpereLoop {
  double lhs = 0.0;  // A[B_z](r_inner) - A[B_z](r_outer)
  double rhs = 0.0;  // (4 pi / (c d)) int A[j] . dS over the rectangle
};

/// Rectangle in a plane through the axis with radial sides at r_inner and
/// r_outer and axial extent [z - d/2, z + d/2]. r_inner = 0 puts one side on
/// the axis.
AmpereLoop ampere_loop_average(const SolenoidSpec& spec, double r_inner, double r_outer, double z, double d,
                               double T, const SolenoidAverageOptions& opts = {});

}  // namespace nifield
