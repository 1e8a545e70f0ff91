#pragma once

#include "config.hpp"
#include "nifield/pulse.hpp"
#include "report.hpp"

namespace nifield::tools {

/// Runs one scenario (or every scenario for "all") and returns the checks.
/// A library error inside a scenario is recorded as a failed check named
/// "<scenario>.error"; only Error{ConfigInvalid} propagates.
VerificationReport run_scenario(const ScenarioConfig& cfg);

VerificationReport run_calibrate(const ScenarioConfig& cfg, PulseProfile& pulse_out);
VerificationReport run_particle(const ScenarioConfig& cfg, const PulseProfile& pulse);
VerificationReport run_maxwell(const ScenarioConfig& cfg, const PulseProfile& pulse);
VerificationReport run_conservation(const ScenarioConfig& cfg, const PulseProfile& pulse);
VerificationReport run_energy(const ScenarioConfig& cfg, const PulseProfile& pulse);
VerificationReport run_solenoid(const ScenarioConfig& cfg, const PulseProfile& pulse);
VerificationReport run_ab_loops(const ScenarioConfig& cfg, const PulseProfile& pulse);

}  // namespace nifield::tools
