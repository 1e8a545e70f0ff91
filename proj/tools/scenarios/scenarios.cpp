#include "scenarios.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "nifield/errors.hpp"
#include "support.hpp"

namespace nifield::tools {
namespace {

using Runner = std::function<VerificationReport(const ScenarioConfig&, const PulseProfile&)>;

VerificationReport guarded(const std::string& name, const Runner& run, const ScenarioConfig& cfg,
                           const PulseProfile& pulse) {
  VerificationReport r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r = run(cfg, pulse);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    r.checks.push_back(make_check(name + ".error", std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0));
  }
  r.timings.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  return r;
}

}  // namespace

VerificationReport run_calibrate(const ScenarioConfig& cfg, PulseProfile& pulse_out) {
  VerificationReport r;
  detail::timed(r, [&] {
    CalibrationOptions opts;
    opts.exponent_lo = cfg.calibrate.exponent_lo;
    opts.exponent_hi = cfg.calibrate.exponent_hi;
    pulse_out = calibrate_pulse(cfg.alpha, cfg.calibrate.tol, opts);
    r.checks.push_back(make_check("calibrate.mean_residual", pulse_out.mean_residual, 0.0, cfg.calibrate.tol));
    r.checks.push_back(make_check("calibrate.energy_residual", pulse_out.energy_residual, 0.0, cfg.calibrate.tol));
  });

  DataSeries profile{"pulse_profile.csv", {"r", "f0", "df0"}, {}};
  for (int i = 0; i <= 256; ++i) {
    const double x = detail::kTwoPi * i / 256.0;
    const auto v = pulse_out.eval(x);
    profile.rows.push_back({x, v.f0, v.df0});
  }
  r.series.push_back(std::move(profile));
  r.provenance = {{"pulse_exponent", pulse_out.exponent}, {"pulse_amplitude", pulse_out.amplitude}};
  return r;
}

VerificationReport run_scenario(const ScenarioConfig& cfg) {
  validate_scenario(cfg.scenario);
  const auto k = cfg.constants();

  VerificationReport report;
  report.seed = cfg.seed;
  report.provenance = {{"c", k.c},           {"hbar", k.hbar},       {"alpha", k.alpha},     {"e", k.e},
                       {"tau_prime", k.tau_prime}, {"omega_prime", k.omega_prime}, {"k_prime", k.k_prime}};

  // Every scenario needs the calibrated pulse; only "calibrate" and "all"
  // report on the calibration itself.
  PulseProfile pulse;
  try {
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport cal = run_calibrate(cfg, pulse);
    cal.timings.emplace_back("calibrate", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    if (cfg.scenario == "calibrate" || cfg.scenario == "all") {
      report.append(std::move(cal));
    } else {
      report.provenance.insert(report.provenance.end(), cal.provenance.begin(), cal.provenance.end());
      report.timings = cal.timings;
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigInvalid) throw;
    report.checks.push_back(make_check("calibrate.error", std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0));
    return report;
  }
  if (cfg.scenario == "calibrate") return report;

  const std::pair<const char*, Runner> runners[] = {
      {"particle", run_particle}, {"maxwell", run_maxwell},   {"conservation", run_conservation},
      {"energy", run_energy},     {"solenoid", run_solenoid}, {"ab-loops", run_ab_loops},
  };
  for (const auto& [name, run] : runners) {
    if (cfg.scenario == name || cfg.scenario == "all") report.append(guarded(name, run, cfg, pulse));
  }
  return report;
}

}  // namespace nifield::tools
