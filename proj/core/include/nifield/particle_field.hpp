#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "nifield/constants.hpp"
#include "nifield/pulse.hpp"
#include "nifield/relativity.hpp"

namespace nifield {

/// Pulse schedule of a particle in its rest frame: either pulses j in Z, or
/// j = 0 .. N-1 for a particle created at t' = 0 and destroyed at t' = N tau'.
struct Lifetime {
  std::optional<int> pulses;  // nullopt = eternal

  static Lifetime eternal() { return {}; }
  static Lifetime finite(int n) { return {n}; }
  bool is_eternal() const { return !pulses.has_value(); }
};

/// A point charge at the origin of its rest frame S', which moves with the
/// constant velocity v_lab relative to the lab. Rest and lab clocks agree at
/// the origin at t = t' = 0.
struct ParticleSource {
  double charge = 0.0;  // Q0, invariant
  PulseProfile pulse;
  Lifetime lifetime = Lifetime::eternal();
  Vec3 v_lab = Vec3::Zero();
  SimulationConstants constants = SimulationConstants::sim_units();

  /// An electron (Q0 = e) with the given calibrated pulse. Throws
  /// Error{Superluminal} if |v_lab| >= c and Error{DegenerateInput} for N < 1.
  static ParticleSource make(double charge, PulseProfile pulse, Lifetime lifetime, Vec3 v_lab,
                             SimulationConstants constants);

  /// Phase omega' t' - k' |x'| of pulse j = 0.
  double phase(double r, double t_rest) const {
    return constants.omega_prime * t_rest - constants.k_prime * r;
  }

  /// sum over the live pulses of (f0, f0', f0'') at base phase psi, where
  /// pulse j contributes at psi - 2 pi j. At most two terms are non-zero.
  struct TrainValue {
    double f0 = 0.0, df0 = 0.0, d2f0 = 0.0;
  };
  TrainValue train(double psi) const;
};

/// E, B and the invariant q = d_mu A^mu at one event.
struct FieldSample {
  Vec3 E = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  double q = 0.0;
  Event at;
};

using FieldSampler = std::function<FieldSample(const Event&)>;
using PotentialSampler = std::function<FourVector(const Event&)>;
using ScalarSampler = std::function<double(const Event&)>;

/// phi'(x', t') = Q0 sum_j f0(omega'(t' - j tau') - k'|x'|) / |x'|; A' = 0.
/// Throws Error{AtSource} at x' = 0.
double rest_potential(const ParticleSource& src, const Vec3& x_rest, double t_rest);

/// Closed-form rest-frame fields:
///   E' = Q0 sum_j [k' f0'(.) / r + f0(.) / r^2] e_R,  B' = 0,
///   q' = (1/c) d phi'/dt' = Q0 k' sum_j f0'(.) / r.
FieldSample rest_fields(const ParticleSource& src, const Vec3& x_rest, double t_rest);

/// d q' / d t' in closed form (uses f0''). Used by the averaging identities.
double rest_dq_dt(const ParticleSource& src, const Vec3& x_rest, double t_rest);

/// Lab event -> rest-frame event of the source.
Event to_rest_frame(const ParticleSource& src, const Event& lab);

/// Lab four-potential: the rest potential (phi', 0) boosted by v_lab.
FourVector lab_potential(const ParticleSource& src, const Event& ev);

/// Lab fields from boosting the rest-frame tensor. q is copied unchanged.
FieldSample lab_fields(const ParticleSource& src, const Event& ev);

/// Time-modulation factor of the source charge, Q0 sum_j f0(omega'(t' - j tau')).
double effective_charge(const ParticleSource& src, double t_rest);

FieldSampler rest_field_sampler(const ParticleSource& src);
FieldSampler lab_field_sampler(const ParticleSource& src);
PotentialSampler rest_potential_sampler(const ParticleSource& src);
PotentialSampler lab_potential_sampler(const ParticleSource& src);

/// q' as a function of (position, time) in the frame where it is measured.
using QSampler = std::function<double(const Vec3&, double)>;

QSampler rest_q_sampler(const ParticleSource& src);

struct TauRecoveryOptions {
  double scan_limit = 4.0;   // scan tau in (0, scan_limit]
  int scan_points = 400;
  double quadrature_tol = 1e-13;
};

/// Smallest tau > 0 with int_0^tau q'(x', r) dr = 0 that is also a period of
/// the potential, i.e. int_s^{s+tau} q' dr = 0 for other offsets s. The
/// extra check discards the zeros that occur inside a single pulse when the
/// scan starts mid-pulse. Found by scan + bisection. Throws
/// Error{DegenerateInput} if q vanishes on the whole scan (every tau is a
/// zero) and Error{NotFound} if no admissible zero lies in the bracket.
double recover_tau(const QSampler& q, const Vec3& x_rest, const TauRecoveryOptions& opts = {});

struct PulseSample {
  double phase;  // omega' t0 - k' |x'|
  double f0;
};

struct PulseRecoveryOptions {
  /// Lower integration limit standing in for -infinity. Valid for sources
  /// created at a finite time: any instant before the first arrival. When
  /// unset, integration starts at the most recent pulse boundary at x',
  /// which is what an eternal train requires.
  std::optional<double> t_lower;
  double quadrature_tol = 1e-12;
};

/// f0(omega' t0 - k'|x'|) = (|x'| c / Q0) int_{lower}^{t0} q'(x', t) dt for
/// each t0 in the grid. tau' comes from `constants` (typically from
/// recover_tau()).
std::vector<PulseSample> recover_pulse(const QSampler& q, const Vec3& x_rest, std::span<const double> t0_grid,
                                       double charge, const SimulationConstants& constants,
                                       const PulseRecoveryOptions& opts = {});

/// The reconstruction with fixed upper limit 0, evaluated literally:
///   -(c^2 tau' r / (2 pi Q0)) int_{lower}^0 q'(-c tau' r / (2 pi), 0, 0, t) dt.
/// For a source created at t' = 0 this only ever sees non-positive phases and
/// therefore returns 0 for every r > 0.
double literal_pulse_reconstruction(const QSampler& q, double r, double charge, const SimulationConstants& constants,
                                    double t_lower, double quadrature_tol = 1e-12);

}  // namespace nifield
