#include <algorithm>
#include <cmath>
#include <numbers>

#include "nifield/averaging.hpp"
#include "nifield/energy.hpp"
#include "nifield/maxwell_check.hpp"
#include "nifield/relativity.hpp"
#include "scenarios.hpp"
#include "support.hpp"

namespace nifield::tools {
namespace {

using detail::kTwoPi;

/// max over the support of |f0'|.
double max_slope(const PulseProfile& p) {
  double m = 0.0;
  for (int i = 0; i <= 20000; ++i) m = std::max(m, std::abs(p.df0(kTwoPi * i / 20000.0)));
  return m;
}

void correspondence_checks(VerificationReport& r, const ScenarioConfig& cfg, const ParticleSource& src,
                           std::mt19937_64& rng) {
  const auto& pc = cfg.particle;
  const double q_scale_unit = src.charge * src.constants.k_prime * max_slope(src.pulse);
  AverageOptions opts;
  opts.rel_tol = 1e-13;

  DataSeries csv{"particle_average.csv", {"r", "phi_quadrature", "phi_tiling", "coulomb", "rel_err"}, {}};
  double phi_quad = 0.0, phi_fast = 0.0, q_avg = 0.0, b_avg = 0.0, grad = 0.0;
  for (int i = 0; i < pc.radii; ++i) {
    const double rad = pc.radii == 1 ? pc.r_min : pc.r_min + (pc.r_max - pc.r_min) * i / (pc.radii - 1);
    const Vec3 x = rad * detail::random_direction(rng);
    const double T = detail::uniform(rng, 0.0, src.constants.tau_prime);
    const double coulomb = src.charge / rad;

    const AveragedParticle avg = averaged_particle_quantities_quadrature(src, x, T, opts);
    const AveragedParticle fast = averaged_particle_quantities(src, x);
    phi_quad = std::max(phi_quad, detail::rel_err(avg.phi, coulomb));
    phi_fast = std::max(phi_fast, detail::rel_err(fast.phi, coulomb));
    q_avg = std::max(q_avg, std::abs(avg.q) / (q_scale_unit / rad));
    b_avg = std::max(b_avg, avg.B.norm());

    // -grad of the averaged potential, sixth-order differences of averages.
    const double h = 0.02 * rad;
    static constexpr double w[3] = {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
    Vec3 g = Vec3::Zero();
    for (int axis = 0; axis < 3; ++axis) {
      for (int s = 1; s <= 3; ++s) {
        const Vec3 dx = s * h * Vec3::Unit(axis);
        g[axis] -= w[s - 1] *
                   (averaged_particle_quantities_quadrature(src, x + dx, T, opts).phi -
                    averaged_particle_quantities_quadrature(src, x - dx, T, opts).phi) /
                   h;
      }
    }
    grad = std::max(grad, (avg.E - g).norm() / g.norm());
    csv.rows.push_back({rad, avg.phi, fast.phi, coulomb, detail::rel_err(avg.phi, coulomb)});
  }
  r.checks.push_back(make_check("particle.avg_phi_quadrature_rel", phi_quad, 0.0, 1e-6));
  r.checks.push_back(make_check("particle.avg_phi_tiling_rel", phi_fast, 0.0, 1e-10));
  r.checks.push_back(make_check("particle.avg_q_rel", q_avg, 0.0, 1e-8));
  r.checks.push_back(make_check("particle.avg_B", b_avg, 0.0, 0.0));
  r.checks.push_back(make_check("particle.avg_E_gradient_rel", grad, 0.0, 1e-8));
  r.series.push_back(std::move(csv));
}

void lorentz_checks(VerificationReport& r, const ScenarioConfig& cfg, const ParticleSource& rest,
                    std::mt19937_64& rng) {
  const auto& pc = cfg.particle;
  const double c = rest.constants.c;
  ParticleSource src = rest;
  src.v_lab = Vec3(pc.speed * c, 0.0, 0.0);
  const PotentialSampler A = lab_potential_sampler(src);
  const std::function<FourVector(const Event&)> sampler = A;

  const auto averaged = [&](const Vec3& x, double T) {
    const AveragingWindow w = source_window(src, T);
    AverageOptions o;
    o.rel_tol = 1e-13;
    o.breakpoints = pulse_breakpoints(src, x, w);
    return time_average<FourVector>(sampler, x, w, o);
  };

  double worst = 0.0;
  const double h = pc.fd_step;
  for (int i = 0; i < pc.points; ++i) {
    const Event ev = boost_event(detail::random_rest_event(src, rng, 1.0, 4.0), src.v_lab, c);
    double div = (averaged(ev.x, ev.t + h / c).v0 - averaged(ev.x, ev.t - h / c).v0) / (2.0 * h);
    for (int axis = 0; axis < 3; ++axis) {
      const Vec3 dx = h * Vec3::Unit(axis);
      div += (averaged(ev.x + dx, ev.t).v[axis] - averaged(ev.x - dx, ev.t).v[axis]) / (2.0 * h);
    }
    worst = std::max(worst, std::abs(div));
  }
  r.checks.push_back(make_check("particle.lorentz_after_average", worst, 0.0, 1e-6));
}

void invariance_checks(VerificationReport& r, const ScenarioConfig& cfg, const ParticleSource& rest,
                       std::mt19937_64& rng) {
  const auto& pc = cfg.particle;
  const double c = rest.constants.c;
  const double slope = max_slope(rest.pulse);
  double q_err = 0.0, i1_err = 0.0, i2_err = 0.0;
  for (int i = 0; i < pc.points; ++i) {
    ParticleSource src = rest;
    src.v_lab = detail::uniform(rng, 0.0, pc.max_speed) * c * detail::random_direction(rng);
    const Event rest_ev = detail::random_rest_event(src, rng, 1.0, 4.0);
    const Event lab_ev = boost_event(rest_ev, src.v_lab, c);
    const double rad = rest_ev.x.norm();

    const FieldSample fr = rest_fields(src, rest_ev.x, rest_ev.t);
    const FieldSample fl = lab_fields(src, lab_ev);
    const auto ir = tensor_invariants(assemble_field_tensor(fr.E, fr.B));
    const auto il = tensor_invariants(assemble_field_tensor(fl.E, fl.B));
    const double q_lab = detail::divergence_6th(lab_potential_sampler(src), lab_ev, 2e-3 * c * src.constants.tau_prime, c);

    const double q_scale = src.charge * src.constants.k_prime * slope / rad;
    const double e_scale = q_scale + src.charge * src.pulse.amplitude / (rad * rad);
    q_err = std::max(q_err, std::abs(q_lab - fr.q) / q_scale);
    i1_err = std::max(i1_err, std::abs(il.first - ir.first) / (2.0 * e_scale * e_scale));
    i2_err = std::max(i2_err, std::abs(il.second - ir.second) / (8.0 * e_scale * e_scale));
  }
  r.checks.push_back(make_check("particle.invariant_q_rel", q_err, 0.0, 1e-8));
  r.checks.push_back(make_check("particle.invariant_first_rel", i1_err, 0.0, 1e-8));
  r.checks.push_back(make_check("particle.invariant_second_rel", i2_err, 0.0, 1e-8));
}

void recovery_checks(VerificationReport& r, const ParticleSource& eternal, std::mt19937_64& rng) {
  const auto& k = eternal.constants;
  const Vec3 x = detail::uniform(rng, 0.5, 3.0) * detail::random_direction(rng);
  const double rad = x.norm();

  const double tau = recover_tau(rest_q_sampler(eternal), x);
  r.checks.push_back(make_check("particle.tau_recovery", tau, k.tau_prime, 1e-8 * k.tau_prime));

  ParticleSource once = eternal;
  once.lifetime = Lifetime::finite(1);
  SimulationConstants recovered = k;
  recovered = SimulationConstants::make(k.c, k.hbar, k.alpha, tau);
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(rad / k.c + tau * i / 400.0);
  PulseRecoveryOptions opts;
  opts.t_lower = 0.0;
  const auto samples = recover_pulse(rest_q_sampler(once), x, grid, once.charge, recovered, opts);

  DataSeries csv{"pulse_recovery.csv", {"phase", "f0_recovered", "f0_exact"}, {}};
  double worst = 0.0;
  for (const auto& s : samples) {
    const double exact = eternal.pulse.f0(s.phase);
    worst = std::max(worst, std::abs(s.f0 - exact));
    csv.rows.push_back({s.phase, s.f0, exact});
  }
  r.checks.push_back(make_check("particle.pulse_recovery_max_error", worst, 0.0, 1e-6 * eternal.pulse.amplitude));
  r.series.push_back(std::move(csv));

  // The fixed-upper-limit form only sees phases before creation.
  double literal = 0.0;
  for (double s : {0.5, 1.0, 2.0})
    literal = std::max(literal, std::abs(literal_pulse_reconstruction(rest_q_sampler(once), s, once.charge, k, -1.0)));
  r.checks.push_back(make_check("particle.literal_reconstruction", literal, 0.0, 1e-12));
}

struct StencilEvent {
  Event ev;
  FieldSampler fields;
  StencilOptions opts;
};

/// `events` rest-frame and `events` lab-frame (boost along x) events.
std::vector<std::pair<std::string, std::vector<StencilEvent>>> stencil_events(const ScenarioConfig::Stencil& st,
                                                                             const ParticleSource& rest,
                                                                             std::mt19937_64& rng) {
  const double c = rest.constants.c;
  ParticleSource moving = rest;
  moving.v_lab = Vec3(st.speed * c, 0.0, 0.0);
  std::vector<StencilEvent> r_events, b_events;
  for (int i = 0; i < st.events; ++i) {
    StencilOptions o;
    o.c = c;
    o.distance = particle_distance(rest);
    r_events.push_back({detail::random_rest_event(rest, rng, st.r_min, st.r_max), rest_field_sampler(rest), o});
  }
  for (int i = 0; i < st.events; ++i) {
    StencilOptions o;
    o.c = c;
    o.distance = particle_distance(moving);
    const Event lab = boost_event(detail::random_rest_event(moving, rng, st.r_min, st.r_max), moving.v_lab, c);
    b_events.push_back({lab, lab_field_sampler(moving), o});
  }
  return {{"rest", std::move(r_events)}, {"boosted", std::move(b_events)}};
}

/// The order farthest from 2 among the non-degenerate ones.
double worst_order(double current, std::optional<double> o) {
  if (!o) return current;
  return std::abs(*o - 2.0) > std::abs(current - 2.0) ? *o : current;
}

}  // namespace

VerificationReport run_particle(const ScenarioConfig& cfg, const PulseProfile& pulse) {
  VerificationReport r;
  const ParticleSource src = detail::make_source(cfg, pulse);
  auto rng = detail::scenario_rng(cfg.seed, 1);
  detail::timed(r, [&] { correspondence_checks(r, cfg, src, rng); });
  detail::timed(r, [&] { lorentz_checks(r, cfg, src, rng); });
  detail::timed(r, [&] { invariance_checks(r, cfg, src, rng); });
  detail::timed(r, [&] { recovery_checks(r, src, rng); });
  return r;
}

VerificationReport run_maxwell(const ScenarioConfig& cfg, const PulseProfile& pulse) {
  VerificationReport r;
  const ParticleSource src = detail::make_source(cfg, pulse);
  auto rng = detail::scenario_rng(cfg.seed, 2);
  std::vector<ResidualReport> rows;
  for (const auto& [frame, events] : stencil_events(cfg.maxwell, src, rng)) {
    detail::timed(r, [&] {
      double worst = 2.0;
      for (const auto& e : events) {
        const MaxwellOrders o = convergence_order(e.fields, e.ev, cfg.maxwell.h, e.opts);
        for (auto c : {o.gauss, o.faraday, o.div_b, o.ampere}) worst = worst_order(worst, c);
        rows.push_back(maxwell_residuals(e.fields, e.ev, cfg.maxwell.h, e.opts));
        rows.push_back(maxwell_residuals(e.fields, e.ev, 0.5 * cfg.maxwell.h, e.opts));
      }
      r.checks.push_back(make_check("maxwell." + frame + ".order", worst, 2.0, 0.2));
    });
  }
  DataSeries csv{"maxwell_residuals.csv", {}, {}};
  for (const auto& s : {"t", "x", "y", "z", "gauss", "faraday_x", "faraday_y", "faraday_z", "divB", "ampere_x",
                        "ampere_y", "ampere_z", "h"})
    csv.header.push_back(s);
  for (const auto& row : rows) {
    csv.rows.push_back({row.at.t, row.at.x.x(), row.at.x.y(), row.at.x.z(), row.gauss, row.faraday.x(),
                        row.faraday.y(), row.faraday.z(), row.div_b, row.ampere.x(), row.ampere.y(), row.ampere.z(),
                        row.h});
  }
  r.series.push_back(std::move(csv));
  return r;
}

VerificationReport run_conservation(const ScenarioConfig& cfg, const PulseProfile& pulse) {
  VerificationReport r;
  const ParticleSource src = detail::make_source(cfg, pulse);
  auto rng = detail::scenario_rng(cfg.seed, 3);
  DataSeries csv{"conservation_residuals.csv", {"t", "x", "y", "z", "residual_h", "residual_h2", "order"}, {}};
  for (const auto& [frame, events] : stencil_events(cfg.conservation, src, rng)) {
    detail::timed(r, [&] {
      double worst = 2.0;
      const double h = cfg.conservation.h;
      for (const auto& e : events) {
        const auto res = [&](double step) { return std::abs(conservation_residual(e.fields, e.ev, step, e.opts)); };
        const double order = convergence_order(res, h);
        worst = worst_order(worst, order);
        csv.rows.push_back({e.ev.t, e.ev.x.x(), e.ev.x.y(), e.ev.x.z(), res(h), res(0.5 * h), order});
      }
      r.checks.push_back(make_check("conservation." + frame + ".order", worst, 2.0, 0.2));
    });
  }
  r.series.push_back(std::move(csv));
  return r;
}

}  // namespace nifield::tools
