#include <algorithm>
#include <cmath>
#include <numbers>

#include "nifield/quadrature.hpp"
#include "nifield/solenoid.hpp"
#include "scenarios.hpp"
#include "support.hpp"

namespace nifield::tools {
namespace {

using detail::kTwoPi;

struct Point {
  double R, z;
};

/// Exterior observation points, radially 0.5 .. 5 outside the sheet.
std::vector<Point> exterior_points(const SolenoidSpec& s, int n, std::mt19937_64& rng) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    const double R = s.radius + 0.5 + 4.5 * i / std::max(1, n - 1);
    out.push_back({R, detail::uniform(rng, -0.25 * s.length, 0.25 * s.length)});
  }
  return out;
}

/// Interior points away from the sheet and the ends.
std::vector<Point> interior_points(const SolenoidSpec& s, int n, std::mt19937_64& rng) {
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) {
    out.push_back({detail::uniform(rng, 0.0, 0.7 * s.radius), detail::uniform(rng, -0.25 * s.length, 0.25 * s.length)});
  }
  return out;
}

/// Flux of A[B_z] through the disk R < R_S at height z.
double interior_flux(const SolenoidSpec& s, double z, double T, const SolenoidAverageOptions& o) {
  const auto rule = gauss_legendre(6);
  double flux = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double R = 0.5 * s.radius * (rule.nodes[i] + 1.0);
    flux += 0.5 * s.radius * rule.weights[i] * kTwoPi * R * averaged_B(s, R, z, T, o).z();
  }
  return flux;
}

}  // namespace

VerificationReport run_solenoid(const ScenarioConfig& cfg, const PulseProfile& pulse) {
  VerificationReport r;
  const SolenoidAverageOptions o = detail::solenoid_options(cfg);
  SolenoidSpec always = detail::make_solenoid(cfg, pulse);  // on since t = -infinity
  SolenoidSpec switched = always;
  switched.t_on = cfg.solenoid.t_on;
  auto rng = detail::scenario_rng(cfg.seed, 4);
  const int n = cfg.solenoid.points;

  detail::timed(r, [&] {
    double before = 0.0;
    int lit = 0;
    for (const Point& p : exterior_points(switched, n, rng)) {
      const CausalityFront f = causality_front(switched, p.R, p.z, 16, o);
      before = std::max(before, f.max_field_before);
      double after = 0.0;
      for (int i = 1; i <= 8; ++i) {
        const double t = f.arrival + switched.period * i / 8.0;
        const SolenoidFields fs = solenoid_fields(switched, {t, Vec3(p.R, 0.0, p.z)}, o.h, o.quad);
        after = std::max(after, fs.E.norm() + fs.B.norm());
      }
      lit += after > 1e-12 ? 1 : 0;
    }
    r.checks.push_back(make_check("solenoid.causality_max_field_before", before, 0.0, 1e-12));
    r.checks.push_back(make_check("solenoid.causality_lit_fraction", static_cast<double>(lit) / n, 1.0, 0.0));
  });

  const double T = 0.0;
  const double interior = averaged_B(always, 0.0, 0.0, T, o).norm();
  detail::timed(r, [&] {
    const double exterior = averaged_B(always, always.radius + 0.5, 0.0, T, o).norm();
    r.checks.push_back(make_check("solenoid.exterior_interior_ratio", exterior / interior, 0.0, 1e-3));

    const AmpereLoop across = ampere_loop_average(always, 0.0, always.radius + 0.5, 0.0, 1.0, T, o);
    r.checks.push_back(make_check("solenoid.ampere_loop_rel", detail::rel_err(across.lhs, across.rhs), 0.0, 1e-2));
    const AmpereLoop outside = ampere_loop_average(always, always.radius + 0.5, always.radius + 2.0, 0.0, 1.0, T, o);
    r.checks.push_back(make_check("solenoid.ampere_outside", std::abs(outside.lhs) / interior, 0.0, 1e-3));
  });

  detail::timed(r, [&] {
    const SolenoidSpec steady = always.steady();
    double b_err = 0.0, a_err = 0.0;
    for (const Point& p : interior_points(always, n, rng)) {
      const Vec3 avg = averaged_B(always, p.R, p.z, T, o);
      const Vec3 ref = solenoid_fields(steady, {T, Vec3(p.R, 0.0, p.z)}, o.h, o.quad).B;
      b_err = std::max(b_err, (avg - ref).norm() / ref.norm());
    }
    for (const Point& p : exterior_points(always, n, rng)) {
      const double avg = circulation(always, {p.R, p.z}, CirculationMode::window(T), o);
      const double ref = circulation(steady, {p.R, p.z}, CirculationMode::instantaneous(T), o);
      a_err = std::max(a_err, detail::rel_err(avg, ref));
    }
    r.checks.push_back(make_check("solenoid.correspondence_B_rel", b_err, 0.0, 1e-3));
    r.checks.push_back(make_check("solenoid.correspondence_A_rel", a_err, 0.0, 1e-3));
  });

  DataSeries ts{"solenoid_timeseries.csv", {"t", "R", "z", "A_phi", "E_w", "B_w_z"}, {}};
  const double R = switched.radius + 0.5;
  const double arrival = *switched.t_on + switched.surface_distance(R, 0.0) / switched.c;
  for (int i = 0; i <= 48; ++i) {
    const double t = *switched.t_on + (arrival - *switched.t_on + 3.0 * switched.period) * i / 48.0;
    const SolenoidFields f = solenoid_fields(switched, {t, Vec3(R, 0.0, 0.0)}, o.h, o.quad);
    ts.rows.push_back({t, R, 0.0, vector_potential_phi(switched, R, 0.0, t, o.quad), f.E.norm(), f.B.z()});
  }
  r.series.push_back(std::move(ts));
  return r;
}

VerificationReport run_ab_loops(const ScenarioConfig& cfg, const PulseProfile& pulse) {
  VerificationReport r;
  const SolenoidAverageOptions o = detail::solenoid_options(cfg);
  const SolenoidSpec s = detail::make_solenoid(cfg, pulse);
  const double R1 = s.radius + cfg.ab_loops.inner_offset;
  const double R2 = s.radius + cfg.ab_loops.outer_offset;
  const double T = 0.0;

  DataSeries loops{"solenoid_loops.csv", {"R", "circulation_avg"}, {}};
  detail::timed(r, [&] {
    const double c1 = circulation(s, {R1, 0.0}, CirculationMode::window(T), o);
    const double c2 = circulation(s, {R2, 0.0}, CirculationMode::window(T), o);
    const double flux = interior_flux(s, 0.0, T, o);
    r.checks.push_back(make_check("ab-loops.circulation_equality_rel", detail::rel_err(c2, c1), 0.0, 1e-2));
    r.checks.push_back(make_check("ab-loops.inner_vs_flux_rel", detail::rel_err(c1, flux), 0.0, 1e-2));
    r.checks.push_back(make_check("ab-loops.outer_vs_flux_rel", detail::rel_err(c2, flux), 0.0, 1e-2));

    // Instantaneous loops see the modulation at different retarded times.
    double spread = 0.0;
    for (int i = 0; i < 8; ++i) {
      const double t = T + s.period * i / 8.0;
      const double i1 = circulation(s, {R1, 0.0}, CirculationMode::instantaneous(t), o);
      const double i2 = circulation(s, {R2, 0.0}, CirculationMode::instantaneous(t), o);
      spread = std::max(spread, std::abs(i1 - i2) / std::abs(flux));
    }
    r.checks.push_back(make_check("ab-loops.instantaneous_differ", spread > 1e-2 ? 1.0 : 0.0, 1.0, 0.0));

    loops.rows.push_back({R1, c1});
    loops.rows.push_back({R2, c2});
  });
  for (double R : {s.radius + 1.0, s.radius + 3.0, s.radius + 5.0})
    loops.rows.push_back({R, circulation(s, {R, 0.0}, CirculationMode::window(T), o)});
  std::sort(loops.rows.begin(), loops.rows.end());
  r.series.push_back(std::move(loops));
  return r;
}

}  // namespace nifield::tools
