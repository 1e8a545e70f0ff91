#include "nifield/averaging.hpp"

#include <cmath>
#include <numbers>

namespace nifield {

AveragingWindow AveragingWindow::make(double T, double tau_rest, const Vec3& v, double c) {
  if (!(v.norm() < c)) throw Error(ErrorCode::Superluminal, "window drift must be below c");
  if (!(tau_rest > 0.0)) throw Error(ErrorCode::DegenerateInput, "window length must be positive");
  const double gamma = 1.0 / std::sqrt(1.0 - v.squaredNorm() / (c * c));
  return {T, gamma * tau_rest, tau_rest, gamma, v};
}

AveragingWindow source_window(const ParticleSource& src, double T) {
  return AveragingWindow::make(T, src.constants.tau_prime, src.v_lab, src.constants.c);
}

std::vector<double> pulse_breakpoints(const ParticleSource& src, const Vec3& x, const AveragingWindow& w) {
  const Event start = to_rest_frame(src, w.event_at(x, w.T));
  const Event end = to_rest_frame(src, w.event_at(x, w.T + w.tau));
  const double r = start.x.norm();
  const double two_pi = 2.0 * std::numbers::pi;
  const double psi0 = src.phase(r, start.t);
  const double psi1 = src.phase(r, end.t);
  std::vector<double> out;
  if (!(psi1 > psi0)) return out;
  for (double m = std::ceil(psi0 / two_pi); m * two_pi <= psi1; m += 1.0) {
    // Phase is affine in lab time along the path.
    out.push_back(w.T + w.tau * (m * two_pi - psi0) / (psi1 - psi0));
  }
  return out;
}

AveragedParticle averaged_particle_quantities(const ParticleSource& src, const Vec3& x_rest) {
  if (!src.lifetime.is_eternal()) {
    throw Error(ErrorCode::DegenerateInput, "the tiling identity needs an eternal pulse train");
  }
  const double r = x_rest.norm();
  if (!(r > 0.0)) throw Error(ErrorCode::AtSource, "average evaluated at the source");
  AveragedParticle out;
  out.phi = src.charge / r;
  out.E = src.charge / (r * r * r) * x_rest;
  return out;
}

AveragedParticle averaged_particle_quantities_quadrature(const ParticleSource& src, const Vec3& x_rest, double T,
                                                         const AverageOptions& opts) {
  using Packed = Eigen::Matrix<double, 8, 1>;
  const std::function<Packed(const Event&)> sampler = [&](const Event& ev) {
    const FieldSample f = rest_fields(src, ev.x, ev.t);
    Packed p;
    p << rest_potential(src, ev.x, ev.t), f.E, f.B, f.q;
    return p;
  };
  const auto w = AveragingWindow::at_rest(T, src.constants.tau_prime);
  AverageOptions o = opts;
  if (o.breakpoints.empty()) {
    ParticleSource rest = src;
    rest.v_lab = Vec3::Zero();
    o.breakpoints = pulse_breakpoints(rest, x_rest, w);
  }
  const Packed p = time_average<Packed>(sampler, x_rest, w, o);
  return {p[0], p.segment<3>(1), p.segment<3>(4), p[7]};
}

double commutation_residual(const ScalarSampler& sampler, const Vec3& x, const AveragingWindow& w, double h,
                            const AverageOptions& opts) {
  if (!(h > 0.0)) throw Error(ErrorCode::DegenerateInput, "step must be positive");
  const std::function<double(const Event&)> s = sampler;
  double worst = 0.0;
  for (int axis = 0; axis < 3; ++axis) {
    const Vec3 dx = h * Vec3::Unit(axis);
    const double outer =
        (time_average<double>(s, x + dx, w, opts) - time_average<double>(s, x - dx, w, opts)) / (2.0 * h);
    const std::function<double(const Event&)> ds = [&](const Event& ev) {
      return (sampler({ev.t, ev.x + dx}) - sampler({ev.t, ev.x - dx})) / (2.0 * h);
    };
    worst = std::max(worst, std::abs(outer - time_average<double>(ds, x, w, opts)));
  }
  AveragingWindow later = w, earlier = w;
  later.T += h;
  earlier.T -= h;
  const double outer =
      (time_average<double>(s, x + w.drift * h, later, opts) - time_average<double>(s, x - w.drift * h, earlier, opts)) /
      (2.0 * h);
  const std::function<double(const Event&)> dt = [&](const Event& ev) {
    return (sampler({ev.t + h, ev.x + w.drift * h}) - sampler({ev.t - h, ev.x - w.drift * h})) / (2.0 * h);
  };
  worst = std::max(worst, std::abs(outer - time_average<double>(dt, x, w, opts)));
  return worst;
}

}  // namespace nifield
