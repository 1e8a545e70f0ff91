#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "nifield/constants.hpp"

namespace nifield::tools {

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names{"calibrate", "particle", "maxwell", "solenoid",
                                              "ab-loops",  "energy",   "conservation", "all"};
  return names;
}

struct ScenarioConfig {
  std::string scenario = "all";
  std::uint64_t seed = 1;
  std::filesystem::path out_dir;

  // top-level keys
  double tau_prime = 1.0;
  double alpha = kFineStructure;

  struct Calibrate {
    double tol = 1e-10;
    double exponent_lo = 1.0;
    double exponent_hi = 10.0;
  } calibrate;

  struct Particle {
    int radii = 50;
    double r_min = 0.5;
    double r_max = 10.0;
    int points = 20;
    double speed = 0.6;
    double max_speed = 0.9;
    double fd_step = 1e-3;
  } particle;

  struct Stencil {
    int events = 20;
    double h = 1.25e-3;
    double speed = 0.6;
    double r_min = 1.5;
    double r_max = 3.0;
  } maxwell, conservation;

  struct Energy {
    int lifetime = 3;
    double radius = 0.0;  // 0 = c tau'
  } energy;

  struct Solenoid {
    double radius = 1.0;
    double length = 64.0;
    double sigma = 1.0;
    double v_drift = 1e-3;
    double t_on = 0.0;
    int azimuth_nodes = 256;
    double panel_width = 0.25;
    int panel_order = 8;
    double fd_step = 1e-3;
    int time_nodes = 64;
    int points = 10;
  } solenoid;

  struct Loops {
    double inner_offset = 0.5;
    double outer_offset = 2.0;
  } ab_loops;

  SimulationConstants constants() const { return SimulationConstants::make(1.0, 1.0, alpha, tau_prime); }
};

/// Flat INI: top-level `key = value` lines, then one [section] per scenario.
/// Throws Error{ConfigInvalid} for unknown sections or keys, unparsable or
/// out-of-range values, and Error{IoError} if the file cannot be read.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::filesystem::path& file);

/// Throws Error{ConfigInvalid} unless `name` is one of scenario_names().
void validate_scenario(const std::string& name);

}  // namespace nifield::tools
