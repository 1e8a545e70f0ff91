#include "nifield/solenoid.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "nifield/errors.hpp"
#include "nifield/quadrature.hpp"

namespace nifield {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double SolenoidSpec::omega() const { return kTwoPi / period; }

double SolenoidSpec::modulation_at(double t) const {
  if (t_on && t < *t_on) return 0.0;
  if (modulation == Modulation::Steady) return 1.0;
  const double psi = omega() * (t - t_on.value_or(0.0));
  if (t_on) {
    // Pulses j >= 0 only; a negative phase is before the first pulse.
    if (psi < 0.0) return 0.0;
  }
  return pulse.train(psi).f0;
}

double SolenoidSpec::surface_distance(double R, double z) const {
  const double dr = R - radius;
  const double over = std::abs(z) - 0.5 * length;
  if (over <= 0.0) return std::abs(dr);
  return std::hypot(dr, over);
}

void SolenoidSpec::validate() const {
  if (!(radius > 0.0 && length > 0.0 && period > 0.0 && c > 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "solenoid geometry must be positive");
  }
  if (!(v_drift > 0.0 && v_drift < c)) throw Error(ErrorCode::DegenerateInput, "drift speed must lie in (0, c)");
}

Vec3 surface_current(const SolenoidSpec& spec, const Vec3& point, double t) {
  const double phi = std::atan2(point.y(), point.x());
  const double k = spec.mean_current() * spec.modulation_at(t);
  return k * Vec3(-std::sin(phi), std::cos(phi), 0.0);
}

namespace {

struct AxialNodes {
  std::vector<double> z;
  std::vector<double> w;
};

AxialNodes axial_nodes(const SolenoidSpec& spec, const SurfaceQuadrature& quad) {
  const GaussLegendreRule rule = gauss_legendre(quad.panel_order);
  const double width = quad.panel_width * spec.c * spec.period;
  const int panels = std::max(1, static_cast<int>(std::ceil(spec.length / width)));
  const double dz = spec.length / panels;
  AxialNodes out;
  out.z.reserve(panels * quad.panel_order);
  out.w.reserve(panels * quad.panel_order);
  for (int p = 0; p < panels; ++p) {
    const double center = -0.5 * spec.length + (p + 0.5) * dz;
    for (int k = 0; k < quad.panel_order; ++k) {
      out.z.push_back(center + 0.5 * dz * rule.nodes[k]);
      out.w.push_back(0.5 * dz * rule.weights[k]);
    }
  }
  return out;
}

}  // namespace

double vector_potential_phi(const SolenoidSpec& spec, double R, double z, double t, const SurfaceQuadrature& quad) {
  spec.validate();
  if (quad.azimuth_nodes < 4 || quad.azimuth_nodes % 2 != 0) {
    throw Error(ErrorCode::DegenerateInput, "azimuth node count must be even and >= 4");
  }
  const double dist = spec.surface_distance(R, z);
  if (dist <= 1e-12 * spec.radius) throw Error(ErrorCode::OnSurface, "observation point on the current sheet");
  if (R == 0.0) return 0.0;
  // Retarded support is empty before the switch-on front arrives.
  if (spec.t_on && t - dist / spec.c < *spec.t_on) return 0.0;

  const AxialNodes ax = axial_nodes(spec, quad);

  // cos(phi_s) is even, so nodes k and N - k share a value; sum k = 0..N/2.
  const int n = quad.azimuth_nodes;
  const int half = n / 2;
  const double dphi = kTwoPi / n;
  const bool steady = spec.modulation == Modulation::Steady;
  const double inv_c = 1.0 / spec.c;

  double total = 0.0;
  for (int k = 0; k <= half; ++k) {
    const double phi = k * dphi;
    const double cphi = std::cos(phi);
    const double weight = (k == 0 || k == half) ? 1.0 : 2.0;
    const double rho2 = R * R + spec.radius * spec.radius - 2.0 * R * spec.radius * cphi;
    double line = 0.0;
    for (std::size_t i = 0; i < ax.z.size(); ++i) {
      const double dz = z - ax.z[i];
      const double d = std::sqrt(rho2 + dz * dz);
      const double m = steady ? (spec.t_on && t - d * inv_c < *spec.t_on ? 0.0 : 1.0) : spec.modulation_at(t - d * inv_c);
      line += ax.w[i] * m / d;
    }
    total += weight * cphi * line;
  }
  return total * dphi * spec.radius * spec.mean_current() * inv_c;
}

Vec3 vector_potential(const SolenoidSpec& spec, const Event& ev, const SurfaceQuadrature& quad) {
  const double R = std::hypot(ev.x.x(), ev.x.y());
  const double a = vector_potential_phi(spec, R, ev.x.z(), ev.t, quad);
  if (R == 0.0) return Vec3::Zero();
  return a * Vec3(-ev.x.y() / R, ev.x.x() / R, 0.0);
}

SolenoidFields solenoid_fields(const SolenoidSpec& spec, const Event& ev, double h, const SurfaceQuadrature& quad) {
  if (!(h > 0.0)) throw Error(ErrorCode::DegenerateInput, "step must be positive");
  const double R = std::hypot(ev.x.x(), ev.x.y());
  const double z = ev.x.z();
  const double t = ev.t;
  const auto A = [&](double r, double zz, double tt) { return vector_potential_phi(spec, r, zz, tt, quad); };

  double b_r = 0.0, b_z = 0.0, e_phi = 0.0;
  if (R < h) {
    // On (or within one step of) the axis only B_z survives.
    b_z = 2.0 * A(h, z, t) / h;
  } else {
    b_r = -(A(R, z + h, t) - A(R, z - h, t)) / (2.0 * h);
    b_z = ((R + h) * A(R + h, z, t) - (R - h) * A(R - h, z, t)) / (2.0 * h * R);
    const double dt = h / spec.c;
    e_phi = -(A(R, z, t + dt) - A(R, z, t - dt)) / (2.0 * dt * spec.c);
  }

  SolenoidFields out;
  if (R > 0.0) {
    const Vec3 e_r(ev.x.x() / R, ev.x.y() / R, 0.0);
    const Vec3 e_phi_hat(-e_r.y(), e_r.x(), 0.0);
    out.B = b_r * e_r + b_z * Vec3::UnitZ();
    out.E = e_phi * e_phi_hat;
  } else {
    out.B = b_z * Vec3::UnitZ();
  }
  return out;
}

double solenoid_q(const SolenoidSpec& spec, const Event& ev, double h, const SurfaceQuadrature& quad) {
  double div = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    Event p = ev, m = ev;
    p.x[axis] += h;
    m.x[axis] -= h;
    div += (vector_potential(spec, p, quad)[axis] - vector_potential(spec, m, quad)[axis]) / (2.0 * h);
  }
  return div;
}

Vec3 averaged_B(const SolenoidSpec& spec, double R, double z, double T, const SolenoidAverageOptions& opts) {
  const std::function<Vec3(const Event&)> sampler = [&](const Event& ev) {
    return solenoid_fields(spec, ev, opts.h, opts.quad).B;
  };
  AverageOptions o;
  o.n = opts.time_nodes;
  return time_average<Vec3>(sampler, Vec3(R, 0.0, z), AveragingWindow::at_rest(T, spec.period), o);
}

double steady_axis_field(const SolenoidSpec& spec, double z) {
  const double half = 0.5 * spec.length;
  const double a = half - z, b = half + z;
  const double r2 = spec.radius * spec.radius;
  return kTwoPi * spec.mean_current() / spec.c * (a / std::sqrt(a * a + r2) + b / std::sqrt(b * b + r2));
}

double circulation(const SolenoidSpec& spec, const LoopSpec& loop, CirculationMode mode,
                   const SolenoidAverageOptions& opts) {
  if (!(loop.radius > 0.0)) throw Error(ErrorCode::DegenerateInput, "loop radius must be positive");
  double a_phi;
  if (mode.averaged) {
    const std::function<double(const Event&)> sampler = [&](const Event& ev) {
      return vector_potential_phi(spec, ev.x.x(), ev.x.z(), ev.t, opts.quad);
    };
    AverageOptions o;
    o.n = opts.time_nodes;
    a_phi = time_average<double>(sampler, Vec3(loop.radius, 0.0, loop.z), AveragingWindow::at_rest(mode.t, spec.period),
                                 o);
  } else {
    a_phi = vector_potential_phi(spec, loop.radius, loop.z, mode.t, opts.quad);
  }
  return kTwoPi * loop.radius * a_phi;
}

CausalityFront causality_front(const SolenoidSpec& spec, double R, double z, int samples,
                               const SolenoidAverageOptions& opts) {
  if (!spec.t_on) throw Error(ErrorCode::DegenerateInput, "causality front needs a finite switch-on time");
  if (samples < 1) throw Error(ErrorCode::DegenerateInput, "need at least one sample");
  CausalityFront out;
  const double dist = spec.surface_distance(R, z);
  out.arrival = *spec.t_on + dist / spec.c;
  // Keep the whole stencil (spatial +-h, temporal +-h/c) outside the cone.
  const double latest = out.arrival - 2.0 * opts.h / spec.c;
  const double earliest = out.arrival - 2.0 * spec.period;
  for (int i = 0; i < samples; ++i) {
    const double t = samples == 1 ? latest : earliest + (latest - earliest) * i / (samples - 1);
    const SolenoidFields f = solenoid_fields(spec, {t, Vec3(R, 0.0, z)}, opts.h, opts.quad);
    out.max_field_before = std::max(out.max_field_before, f.E.norm() + f.B.norm());
  }
  return out;
}

AmpereLoop ampere_loop_average(const SolenoidSpec& spec, double r_inner, double r_outer, double z, double d, double T,
                               const SolenoidAverageOptions& opts) {
  if (!(r_outer > r_inner && r_inner >= 0.0 && d > 0.0)) {
    throw Error(ErrorCode::DegenerateInput, "rectangle needs 0 <= r_inner < r_outer and d > 0");
  }
  AmpereLoop out;
  out.lhs = averaged_B(spec, r_inner, z, T, opts).z() - averaged_B(spec, r_outer, z, T, opts).z();
  // The window average of the surface current is sigma v_drift (tiling
  // identity), crossing the rectangle only where it straddles R_S.
  if (r_inner < spec.radius && spec.radius < r_outer) {
    const double lo = std::max(z - 0.5 * d, -0.5 * spec.length);
    const double hi = std::min(z + 0.5 * d, 0.5 * spec.length);
    const double overlap = std::max(0.0, hi - lo);
    out.rhs = 4.0 * std::numbers::pi / (spec.c * d) * spec.mean_current() * overlap;
  }
  return out;
}

}  // namespace nifield
