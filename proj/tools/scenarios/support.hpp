#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "nifield/particle_field.hpp"
#include "nifield/solenoid.hpp"
#include "config.hpp"
#include "report.hpp"

namespace nifield::tools::detail {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Independent stream per scenario so adding checks to one scenario does not
/// move the test points of another.
inline std::mt19937_64 scenario_rng(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{seed, salt};
  return std::mt19937_64(seq);
}

inline Vec3 random_direction(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  for (;;) {
    const Vec3 v(n(rng), n(rng), n(rng));
    if (v.norm() > 1e-3) return v.normalized();
  }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Rest-frame event at a random distance in [r_lo, r_hi] and random base
/// phase in [psi_lo, psi_hi] of one of the first few pulses.
inline Event random_rest_event(const ParticleSource& src, std::mt19937_64& rng, double r_lo, double r_hi,
                               double psi_lo = 0.25 * std::numbers::pi, double psi_hi = 1.75 * std::numbers::pi) {
  const double r = uniform(rng, r_lo, r_hi);
  const double psi = uniform(rng, psi_lo, psi_hi);
  const int j = std::uniform_int_distribution<int>(0, 3)(rng);
  const auto& k = src.constants;
  return {(psi + k.k_prime * r + kTwoPi * j) / k.omega_prime, r * random_direction(rng)};
}

/// Runs fn, then stamps the elapsed time on every check it appended.
template <typename Fn>
void timed(VerificationReport& report, Fn&& fn) {
  const std::size_t before = report.checks.size();
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (std::size_t i = before; i < report.checks.size(); ++i) report.checks[i].runtime_s = dt;
}

/// q = (1/c) dA0/dt + div A with sixth-order centred differences.
inline double divergence_6th(const PotentialSampler& A, const Event& ev, double h, double c) {
  static constexpr double w[3] = {45.0 / 60.0, -9.0 / 60.0, 1.0 / 60.0};
  double q = 0.0;
  for (int s = 1; s <= 3; ++s) {
    const double dt = s * h / c;
    q += w[s - 1] * (A({ev.t + dt, ev.x}).v0 - A({ev.t - dt, ev.x}).v0) / (h);
    for (int axis = 0; axis < 3; ++axis) {
      Vec3 dx = Vec3::Zero();
      dx[axis] = s * h;
      q += w[s - 1] * (A({ev.t, ev.x + dx}).v[axis] - A({ev.t, ev.x - dx}).v[axis]) / h;
    }
  }
  return q;
}

inline ParticleSource make_source(const ScenarioConfig& cfg, const PulseProfile& pulse,
                                  Lifetime life = Lifetime::eternal(), Vec3 v = Vec3::Zero()) {
  const auto k = cfg.constants();
  return ParticleSource::make(k.e, pulse, life, v, k);
}

inline SolenoidSpec make_solenoid(const ScenarioConfig& cfg, const PulseProfile& pulse) {
  SolenoidSpec s;
  s.radius = cfg.solenoid.radius;
  s.length = cfg.solenoid.length;
  s.sigma = cfg.solenoid.sigma;
  s.v_drift = cfg.solenoid.v_drift;
  s.pulse = pulse;
  s.period = cfg.tau_prime;
  s.validate();
  return s;
}

inline SolenoidAverageOptions solenoid_options(const ScenarioConfig& cfg) {
  SolenoidAverageOptions o;
  o.h = cfg.solenoid.fd_step;
  o.time_nodes = cfg.solenoid.time_nodes;
  o.quad.azimuth_nodes = cfg.solenoid.azimuth_nodes;
  o.quad.panel_width = cfg.solenoid.panel_width;
  o.quad.panel_order = cfg.solenoid.panel_order;
  return o;
}

inline double rel_err(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

}  // namespace nifield::tools::detail
