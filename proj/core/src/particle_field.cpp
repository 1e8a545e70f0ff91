#include "nifield/particle_field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nifield/errors.hpp"
#include "nifield/quadrature.hpp"

namespace nifield {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

ParticleSource ParticleSource::make(double charge, PulseProfile pulse, Lifetime lifetime, Vec3 v_lab,
                                    SimulationConstants constants) {
  if (!(v_lab.norm() < constants.c)) throw Error(ErrorCode::Superluminal, "source velocity must be below c");
  if (lifetime.pulses && *lifetime.pulses < 1) {
    throw Error(ErrorCode::DegenerateInput, "finite lifetime needs at least one pulse");
  }
  return {charge, pulse, lifetime, v_lab, constants};
}

ParticleSource::TrainValue ParticleSource::train(double psi) const {
  TrainValue out;
  const auto j_mid = static_cast<long long>(std::floor(psi / kTwoPi));
  for (long long j = j_mid - 1; j <= j_mid + 1; ++j) {
    if (lifetime.pulses && (j < 0 || j >= *lifetime.pulses)) continue;
    const double r = psi - kTwoPi * static_cast<double>(j);
    const auto v = pulse.eval(r);
    out.f0 += v.f0;
    out.df0 += v.df0;
    out.d2f0 += pulse.d2f0(r);
  }
  return out;
}

namespace {

double checked_radius(const Vec3& x) {
  const double r = x.norm();
  if (!(r > 0.0)) throw Error(ErrorCode::AtSource, "field evaluated on the source worldline");
  return r;
}

}  // namespace

double rest_potential(const ParticleSource& src, const Vec3& x_rest, double t_rest) {
  const double r = checked_radius(x_rest);
  return src.charge * src.train(src.phase(r, t_rest)).f0 / r;
}

FieldSample rest_fields(const ParticleSource& src, const Vec3& x_rest, double t_rest) {
  const double r = checked_radius(x_rest);
  const auto tv = src.train(src.phase(r, t_rest));
  const double k = src.constants.k_prime;
  FieldSample out;
  out.E = src.charge * (k * tv.df0 / r + tv.f0 / (r * r)) * (x_rest / r);
  out.B = Vec3::Zero();
  out.q = src.charge * k * tv.df0 / r;
  out.at = {t_rest, x_rest};
  return out;
}

double rest_dq_dt(const ParticleSource& src, const Vec3& x_rest, double t_rest) {
  const double r = checked_radius(x_rest);
  const auto tv = src.train(src.phase(r, t_rest));
  return src.charge * src.constants.k_prime * src.constants.omega_prime * tv.d2f0 / r;
}

Event to_rest_frame(const ParticleSource& src, const Event& lab) {
  return boost_event(lab, -src.v_lab, src.constants.c);
}

FourVector lab_potential(const ParticleSource& src, const Event& ev) {
  const Event rest = to_rest_frame(src, ev);
  const FourVector rest_a{rest_potential(src, rest.x, rest.t), Vec3::Zero()};
  return boost_four_vector(rest_a, src.v_lab, src.constants.c);
}

FieldSample lab_fields(const ParticleSource& src, const Event& ev) {
  const Event rest = to_rest_frame(src, ev);
  const FieldSample r = rest_fields(src, rest.x, rest.t);
  const FieldTensor F = boost_field_tensor(assemble_field_tensor(r.E, r.B), src.v_lab, src.constants.c);
  return {F.electric(), F.magnetic(), r.q, ev};
}

double effective_charge(const ParticleSource& src, double t_rest) {
  return src.charge * src.train(src.constants.omega_prime * t_rest).f0;
}

FieldSampler rest_field_sampler(const ParticleSource& src) {
  return [src](const Event& ev) { return rest_fields(src, ev.x, ev.t); };
}

FieldSampler lab_field_sampler(const ParticleSource& src) {
  return [src](const Event& ev) { return lab_fields(src, ev); };
}

PotentialSampler rest_potential_sampler(const ParticleSource& src) {
  return [src](const Event& ev) { return FourVector{rest_potential(src, ev.x, ev.t), Vec3::Zero()}; };
}

PotentialSampler lab_potential_sampler(const ParticleSource& src) {
  return [src](const Event& ev) { return lab_potential(src, ev); };
}

QSampler rest_q_sampler(const ParticleSource& src) {
  return [src](const Vec3& x, double t) { return rest_fields(src, x, t).q; };
}

double recover_tau(const QSampler& q, const Vec3& x_rest, const TauRecoveryOptions& opts) {
  if (!(opts.scan_limit > 0.0) || opts.scan_points < 4) {
    throw Error(ErrorCode::DegenerateInput, "scan bracket must be positive with at least 4 points");
  }
  const auto qf = [&](double t) { return q(x_rest, t); };
  const int n = opts.scan_points;
  const double dt = opts.scan_limit / n;

  std::vector<double> tau(n + 1), G(n + 1), qv(n + 1);
  double max_q = 0.0;
  for (int i = 0; i <= n; ++i) {
    tau[i] = dt * i;
    qv[i] = qf(tau[i]);
    max_q = std::max(max_q, std::abs(qv[i]));
  }
  if (max_q == 0.0) {
    throw Error(ErrorCode::DegenerateInput, "q vanishes on the scan bracket; every tau is a zero");
  }
  const double qtol = opts.quadrature_tol * std::max(1.0, max_q * opts.scan_limit);
  G[0] = 0.0;
  double max_g = 0.0;
  for (int i = 1; i <= n; ++i) {
    G[i] = G[i - 1] + integrate(qf, tau[i - 1], tau[i], qtol);
    max_g = std::max(max_g, std::abs(G[i]));
  }
  if (max_g == 0.0) {
    throw Error(ErrorCode::DegenerateInput, "int q vanishes on the scan bracket; every tau is a zero");
  }

  const auto G_at = [&](int i, double t) { return G[i] + integrate(qf, tau[i], t, qtol); };

  // Bisection of a sign change of g on [lo, hi].
  const auto bisect = [](auto&& g, double lo, double hi) {
    double g_lo = g(lo);
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const double g_mid = g(mid);
      if (g_mid == 0.0) return mid;
      if ((g_mid < 0.0) == (g_lo < 0.0)) {
        lo = mid;
        g_lo = g_mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  const double valid_tol = 1e-6 * max_g;
  const auto is_period = [&](double cand) {
    for (double frac : {0.137, 0.419, 0.773}) {
      const double s = frac * cand;
      if (std::abs(integrate(qf, s, s + cand, qtol)) > valid_tol) return false;
    }
    return true;
  };

  const double noise = 1e-12 * max_g;
  for (int i = 1; i <= n; ++i) {
    std::optional<double> cand;
    if (std::abs(G[i]) <= noise && i < n && std::abs(G[i - 1]) > noise) {
      // Touching zero near a grid point: the integrand q changes sign there.
      const double lo = tau[i - 1], hi = tau[i + 1];
      if ((qv[i - 1] < 0.0) != (qv[i + 1] < 0.0)) cand = bisect(qf, lo, hi);
      else cand = tau[i];
    } else if (std::abs(G[i - 1]) > noise && std::abs(G[i]) > noise && (G[i - 1] < 0.0) != (G[i] < 0.0)) {
      const int base = i - 1;
      cand = bisect([&](double t) { return G_at(base, t); }, tau[i - 1], tau[i]);
    } else if (i < n && std::abs(G[i]) <= std::abs(G[i - 1]) && std::abs(G[i]) <= std::abs(G[i + 1]) &&
               std::abs(G[i]) < 1e-3 * max_g && (qv[i - 1] < 0.0) != (qv[i + 1] < 0.0)) {
      // Local minimum of |G| without a sign change: a tangential zero,
      // located where G' = q changes sign.
      const double t0 = bisect(qf, tau[i - 1], tau[i + 1]);
      const int base = t0 >= tau[i] ? i : i - 1;
      if (std::abs(G_at(base, t0)) <= 1e-9 * max_g) cand = t0;
    }
    if (cand && *cand > 0.0 && is_period(*cand)) return *cand;
  }
  throw Error(ErrorCode::NotFound, "no period of q found in the scan bracket");
}

std::vector<PulseSample> recover_pulse(const QSampler& q, const Vec3& x_rest, std::span<const double> t0_grid,
                                       double charge, const SimulationConstants& constants,
                                       const PulseRecoveryOptions& opts) {
  const double r = checked_radius(x_rest);
  if (charge == 0.0) throw Error(ErrorCode::DegenerateInput, "charge must be non-zero");
  const auto qf = [&](double t) { return q(x_rest, t); };
  const double scale = r * constants.c / charge;

  std::vector<PulseSample> out;
  out.reserve(t0_grid.size());
  for (double t0 : t0_grid) {
    const double psi = constants.omega_prime * t0 - constants.k_prime * r;
    double lower;
    if (opts.t_lower) {
      lower = std::min(*opts.t_lower, t0);
    } else {
      lower = t0 - (psi - kTwoPi * std::floor(psi / kTwoPi)) / constants.omega_prime;
    }
    out.push_back({psi, scale * integrate(qf, lower, t0, opts.quadrature_tol)});
  }
  return out;
}

double literal_pulse_reconstruction(const QSampler& q, double r, double charge, const SimulationConstants& constants,
                                    double t_lower, double quadrature_tol) {
  if (charge == 0.0) throw Error(ErrorCode::DegenerateInput, "charge must be non-zero");
  const double d = constants.c * constants.tau_prime * r / kTwoPi;
  const Vec3 x(-d, 0.0, 0.0);
  const double integral = integrate([&](double t) { return q(x, t); }, std::min(t_lower, 0.0), 0.0, quadrature_tol);
  return -(constants.c * constants.c * constants.tau_prime * r / (kTwoPi * charge)) * integral;
}

}  // namespace nifield
