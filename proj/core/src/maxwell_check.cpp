#include "nifield/maxwell_check.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "nifield/errors.hpp"

namespace nifield {
namespace {

void check_distance(const StencilOptions& opts, const Event& ev, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::DegenerateInput, "step must be positive");
  if (opts.distance && !(opts.distance(ev) > opts.min_distance_in_steps * h)) {
    throw Error(ErrorCode::TooCloseToSource, "stencil too close to a source");
  }
}

Event shifted(const Event& ev, int axis, double step) {
  Event out = ev;
  if (axis == 3) out.t += step;
  else out.x[axis] += step;
  return out;
}

}  // namespace

SourceDistance particle_distance(const ParticleSource& src) {
  return [v = src.v_lab](const Event& ev) { return (ev.x - v * ev.t).norm(); };
}

ResidualReport maxwell_residuals(const FieldSampler& sampler, const Event& ev, double h, const StencilOptions& opts) {
  check_distance(opts, ev, h);
  const double c = opts.c;
  const double dt = h / c;

  // d[axis] holds centred derivatives of (E, B, q) along x, y, z, t.
  struct Deriv {
    Vec3 E, B;
    double q;
  };
  std::array<Deriv, 4> d;
  for (int axis = 0; axis < 4; ++axis) {
    const double step = axis == 3 ? dt : h;
    const FieldSample p = sampler(shifted(ev, axis, step));
    const FieldSample m = sampler(shifted(ev, axis, -step));
    d[axis] = {(p.E - m.E) / (2.0 * step), (p.B - m.B) / (2.0 * step), (p.q - m.q) / (2.0 * step)};
  }

  const auto div = [&](auto member) { return (d[0].*member)[0] + (d[1].*member)[1] + (d[2].*member)[2]; };
  const auto curl = [&](auto member) {
    return Vec3((d[1].*member)[2] - (d[2].*member)[1], (d[2].*member)[0] - (d[0].*member)[2],
                (d[0].*member)[1] - (d[1].*member)[0]);
  };
  const Vec3 grad_q(d[0].q, d[1].q, d[2].q);

  ResidualReport r;
  r.gauss = div(&Deriv::E) + d[3].q / c;
  r.faraday = curl(&Deriv::E) + d[3].B / c;
  r.div_b = div(&Deriv::B);
  r.ampere = curl(&Deriv::B) - d[3].E / c - grad_q;
  r.h = h;
  r.at = ev;
  return r;
}

FourVector wave_residual(const PotentialSampler& potential, const Event& ev, double h, const StencilOptions& opts) {
  check_distance(opts, ev, h);
  const double dt = h / opts.c;
  const FourVector center = potential(ev);
  FourVector lap{};
  for (int axis = 0; axis < 3; ++axis) {
    lap += (potential(shifted(ev, axis, h)) + potential(shifted(ev, axis, -h)) - 2.0 * center) * (1.0 / (h * h));
  }
  const FourVector tt =
      (potential(shifted(ev, 3, dt)) + potential(shifted(ev, 3, -dt)) - 2.0 * center) * (1.0 / (h * h));
  return lap - tt;
}

FieldSampler fields_from_potential(PotentialSampler potential, double h, double c) {
  return [potential = std::move(potential), h, c](const Event& ev) {
    const double dt = h / c;
    std::array<FourVector, 4> d;
    for (int axis = 0; axis < 4; ++axis) {
      const double step = axis == 3 ? dt : h;
      d[axis] = (potential(shifted(ev, axis, step)) - potential(shifted(ev, axis, -step))) * (1.0 / (2.0 * step));
    }
    FieldSample out;
    out.E = -Vec3(d[0].v0, d[1].v0, d[2].v0) - d[3].v / c;
    out.B = Vec3(d[1].v[2] - d[2].v[1], d[2].v[0] - d[0].v[2], d[0].v[1] - d[1].v[0]);
    out.q = d[3].v0 / c + d[0].v[0] + d[1].v[1] + d[2].v[2];
    out.at = ev;
    return out;
  };
}

double convergence_order(const std::function<double(double)>& residual, double h, double noise_floor) {
  const double coarse = residual(h);
  const double fine = residual(0.5 * h);
  if (coarse <= noise_floor && fine <= noise_floor) {
    throw Error(ErrorCode::DegenerateResidual, "residual below noise floor at both steps");
  }
  if (fine == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(coarse / fine);
}

namespace {

std::optional<double> order_of(double coarse, double fine, double floor) {
  if (coarse <= floor && fine <= floor) return std::nullopt;
  if (fine == 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(coarse / fine);
}

}  // namespace

MaxwellOrders convergence_order(const FieldSampler& sampler, const Event& ev, double h, const StencilOptions& opts,
                                double noise_floor) {
  const ResidualReport a = maxwell_residuals(sampler, ev, h, opts);
  const ResidualReport b = maxwell_residuals(sampler, ev, 0.5 * h, opts);
  MaxwellOrders o;
  o.gauss = order_of(std::abs(a.gauss), std::abs(b.gauss), noise_floor);
  o.faraday = order_of(a.faraday.norm(), b.faraday.norm(), noise_floor);
  o.div_b = order_of(std::abs(a.div_b), std::abs(b.div_b), noise_floor);
  o.ampere = order_of(a.ampere.norm(), b.ampere.norm(), noise_floor);
  if (!o.gauss && !o.faraday && !o.div_b && !o.ampere) {
    throw Error(ErrorCode::DegenerateResidual, "all residual components below noise floor");
  }
  return o;
}

WaveOrders wave_convergence_order(const PotentialSampler& potential, const Event& ev, double h,
                                  const StencilOptions& opts, double noise_floor) {
  const FourVector a = wave_residual(potential, ev, h, opts);
  const FourVector b = wave_residual(potential, ev, 0.5 * h, opts);
  WaveOrders o;
  o.phi = order_of(std::abs(a.v0), std::abs(b.v0), noise_floor);
  o.a = order_of(a.v.norm(), b.v.norm(), noise_floor);
  if (!o.phi && !o.a) throw Error(ErrorCode::DegenerateResidual, "wave residual below noise floor");
  return o;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string residual_csv_header() {
  return "t,x,y,z,gauss,faraday_x,faraday_y,faraday_z,divB,ampere_x,ampere_y,ampere_z,h";
}

void write_residual_csv(std::ostream& os, std::span<const ResidualReport> rows) {
  os << residual_csv_header() << '\n';
  for (const auto& r : rows) {
    const std::array<double, 13> cols{r.at.t,       r.at.x.x(),     r.at.x.y(),     r.at.x.z(),     r.gauss,
                                      r.faraday.x(), r.faraday.y(), r.faraday.z(), r.div_b,        r.ampere.x(),
                                      r.ampere.y(),  r.ampere.z(),  r.h};
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << format_number(cols[i]);
    os << '\n';
  }
}

}  // namespace nifield
