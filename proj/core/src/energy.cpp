#include "nifield/energy.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

#include "nifield/errors.hpp"

namespace nifield {

EnergySample energy_density_flux(const FieldSample& fs) {
  EnergySample out;
  out.u = 0.5 * (fs.q * fs.q + fs.E.squaredNorm() + fs.B.squaredNorm());
  out.S = fs.q * fs.E + fs.E.cross(fs.B);
  out.at = fs.at;
  return out;
}

EnergySampler energy_sampler(FieldSampler fields) {
  return [fields = std::move(fields)](const Event& ev) { return energy_density_flux(fields(ev)); };
}

double conservation_residual(const EnergySampler& sampler, const Event& ev, double h, const StencilOptions& opts) {
  if (!(h > 0.0)) throw Error(ErrorCode::DegenerateInput, "step must be positive");
  if (opts.distance && !(opts.distance(ev) > opts.min_distance_in_steps * h)) {
    throw Error(ErrorCode::TooCloseToSource, "stencil too close to a source");
  }
  double div_s = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    Event p = ev, m = ev;
    p.x[axis] += h;
    m.x[axis] -= h;
    div_s += (sampler(p).S[axis] - sampler(m).S[axis]) / (2.0 * h);
  }
  const double dt = h / opts.c;
  const double du_dt = (sampler({ev.t + dt, ev.x}).u - sampler({ev.t - dt, ev.x}).u) / (2.0 * dt);
  return div_s + du_dt / opts.c;
}

double conservation_residual(const FieldSampler& sampler, const Event& ev, double h, const StencilOptions& opts) {
  return conservation_residual(energy_sampler(sampler), ev, h, opts);
}

double expected_radial_poynting(const SimulationConstants& k, double r) {
  return k.omega_prime * k.hbar / (4.0 * std::numbers::pi * k.tau_prime * k.c * r * r);
}

double averaged_radial_poynting(const ParticleSource& src, double r, double T, const Vec3& direction,
                                const AverageOptions& opts) {
  if (!(r > 0.0)) throw Error(ErrorCode::AtSource, "radius must be positive");
  const Vec3 n = direction.normalized();
  const Vec3 x = r * n;
  ParticleSource rest = src;
  rest.v_lab = Vec3::Zero();
  const auto w = AveragingWindow::at_rest(T, src.constants.tau_prime);
  AverageOptions o = opts;
  if (o.breakpoints.empty()) o.breakpoints = pulse_breakpoints(rest, x, w);
  const std::function<double(const Event&)> s = [&](const Event& ev) {
    const FieldSample f = rest_fields(rest, ev.x, ev.t);
    return f.q * f.E.dot(n);
  };
  return time_average<double>(s, x, w, o);
}

std::vector<double> radial_poynting_directions(const ParticleSource& src, double r, double T) {
  std::vector<double> out;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j)
      for (int k = -1; k <= 1; ++k) {
        if (i == 0 && j == 0 && k == 0) continue;
        out.push_back(averaged_radial_poynting(src, r, T, Vec3(i, j, k)));
      }
  return out;
}

PulseEnergy pulse_energy(const ParticleSource& src, int pulse_index, double radius) {
  const auto& k = src.constants;
  const double R = radius > 0.0 ? radius : k.c * k.tau_prime;
  if (src.lifetime.pulses && (pulse_index < 0 || pulse_index >= *src.lifetime.pulses)) {
    throw Error(ErrorCode::DegenerateInput, "pulse index outside the particle lifetime");
  }
  const double sphere = 4.0 * std::numbers::pi * R * R;
  const double T = R / k.c + pulse_index * k.tau_prime;

  PulseEnergy out;
  out.radius = R;
  out.expected = k.omega_prime * k.hbar;
  out.per_pulse = k.c * k.tau_prime * sphere * averaged_radial_poynting(src, R, T);

  if (src.lifetime.pulses) {
    const int n = *src.lifetime.pulses;
    ParticleSource rest = src;
    rest.v_lab = Vec3::Zero();
    const Vec3 x = R * Vec3::UnitX();
    std::vector<double> cuts;
    for (int j = 0; j <= n; ++j) cuts.push_back(R / k.c + j * k.tau_prime);
    const double flux_time_integral = integrate_with_breakpoints(
        [&](double t) {
          const FieldSample f = rest_fields(rest, x, t);
          return f.q * f.E.x();
        },
        cuts.front(), cuts.back(), cuts, 1e-13);
    out.total = k.c * sphere * flux_time_integral;
  } else {
    out.total = out.per_pulse;
  }
  return out;
}

ClassicalComparison classical_comparison(const ParticleSource& src, const Vec3& x_rest, double T) {
  const AveragedParticle avg = averaged_particle_quantities(src, x_rest);
  ParticleSource rest = src;
  rest.v_lab = Vec3::Zero();
  const auto w = AveragingWindow::at_rest(T, src.constants.tau_prime);
  AverageOptions o;
  o.breakpoints = pulse_breakpoints(rest, x_rest, w);
  using Packed = Eigen::Matrix<double, 4, 1>;
  const std::function<Packed(const Event&)> s = [&](const Event& ev) {
    const EnergySample e = energy_density_flux(rest_fields(rest, ev.x, ev.t));
    Packed p;
    p << e.u, e.S;
    return p;
  };
  const Packed p = time_average<Packed>(s, x_rest, w, o);
  ClassicalComparison out;
  out.u_cl = 0.5 * (avg.E.squaredNorm() + avg.B.squaredNorm());
  out.S_cl = avg.E.cross(avg.B);
  out.Au = p[0];
  out.AS = p.tail<3>();
  return out;
}

}  // namespace nifield
