#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nifield/errors.hpp"

namespace nifield::tools {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

double parse_double(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) invalid(key + ": not a number: '" + text + "'");
  return v;
}

long long parse_int(const std::string& key, const std::string& text) {
  long long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) invalid(key + ": not an integer: '" + text + "'");
  return v;
}

using Setter = std::function<void(const std::string&)>;

Setter real(double& slot, double lo, double hi, const std::string& key) {
  return [&slot, lo, hi, key](const std::string& text) {
    const double v = parse_double(key, text);
    if (!(v >= lo && v <= hi)) invalid(key + " out of range");
    slot = v;
  };
}

Setter positive(double& slot, double hi, const std::string& key) {
  return [&slot, hi, key](const std::string& text) {
    const double v = parse_double(key, text);
    if (!(v > 0.0 && v <= hi)) invalid(key + " must lie in (0, " + std::to_string(hi) + "]");
    slot = v;
  };
}

Setter integer(int& slot, int lo, int hi, const std::string& key) {
  return [&slot, lo, hi, key](const std::string& text) {
    const long long v = parse_int(key, text);
    if (v < lo || v > hi) invalid(key + " out of range");
    slot = static_cast<int>(v);
  };
}

std::map<std::string, Setter> setters(ScenarioConfig& c) {
  std::map<std::string, Setter> s;
  s["tau_prime"] = positive(c.tau_prime, 1e6, "tau_prime");
  s["alpha"] = [&c](const std::string& text) {
    const double v = parse_double("alpha", text);
    if (!(v > 0.0 && v < 1.0)) invalid("alpha must lie in (0, 1)");
    c.alpha = v;
  };
  s["seed"] = [&c](const std::string& text) {
    std::uint64_t v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end) invalid("seed: not an unsigned integer");
    c.seed = v;
  };

  s["calibrate.tol"] = positive(c.calibrate.tol, 1e-2, "calibrate.tol");
  s["calibrate.exponent_lo"] = real(c.calibrate.exponent_lo, 0.5, 100.0, "calibrate.exponent_lo");
  s["calibrate.exponent_hi"] = real(c.calibrate.exponent_hi, 0.5, 100.0, "calibrate.exponent_hi");

  s["particle.radii"] = integer(c.particle.radii, 1, 10000, "particle.radii");
  s["particle.r_min"] = positive(c.particle.r_min, 1e4, "particle.r_min");
  s["particle.r_max"] = positive(c.particle.r_max, 1e4, "particle.r_max");
  s["particle.points"] = integer(c.particle.points, 1, 10000, "particle.points");
  s["particle.speed"] = real(c.particle.speed, 0.0, 0.99, "particle.speed");
  s["particle.max_speed"] = real(c.particle.max_speed, 0.0, 0.99, "particle.max_speed");
  s["particle.fd_step"] = positive(c.particle.fd_step, 0.1, "particle.fd_step");

  for (auto [name, st] : {std::pair{"maxwell", &c.maxwell}, std::pair{"conservation", &c.conservation}}) {
    const std::string p = std::string(name) + ".";
    s[p + "events"] = integer(st->events, 1, 10000, p + "events");
    s[p + "h"] = positive(st->h, 0.1, p + "h");
    s[p + "speed"] = real(st->speed, 0.0, 0.99, p + "speed");
    s[p + "r_min"] = positive(st->r_min, 1e4, p + "r_min");
    s[p + "r_max"] = positive(st->r_max, 1e4, p + "r_max");
  }

  s["energy.lifetime"] = integer(c.energy.lifetime, 1, 1000, "energy.lifetime");
  s["energy.radius"] = real(c.energy.radius, 0.0, 1e4, "energy.radius");

  auto& sol = c.solenoid;
  s["solenoid.radius"] = positive(sol.radius, 1e4, "solenoid.radius");
  s["solenoid.length"] = positive(sol.length, 1e6, "solenoid.length");
  s["solenoid.sigma"] = positive(sol.sigma, 1e6, "solenoid.sigma");
  s["solenoid.v_drift"] = positive(sol.v_drift, 0.5, "solenoid.v_drift");
  s["solenoid.t_on"] = real(sol.t_on, -1e6, 1e6, "solenoid.t_on");
  s["solenoid.azimuth_nodes"] = integer(sol.azimuth_nodes, 8, 1 << 16, "solenoid.azimuth_nodes");
  s["solenoid.panel_width"] = positive(sol.panel_width, 10.0, "solenoid.panel_width");
  s["solenoid.panel_order"] = integer(sol.panel_order, 1, 64, "solenoid.panel_order");
  s["solenoid.fd_step"] = positive(sol.fd_step, 0.1, "solenoid.fd_step");
  s["solenoid.time_nodes"] = integer(sol.time_nodes, 8, 1 << 16, "solenoid.time_nodes");
  s["solenoid.points"] = integer(sol.points, 1, 1000, "solenoid.points");

  s["ab-loops.inner_offset"] = positive(c.ab_loops.inner_offset, 1e4, "ab-loops.inner_offset");
  s["ab-loops.outer_offset"] = positive(c.ab_loops.outer_offset, 1e4, "ab-loops.outer_offset");
  return s;
}

void check_consistency(const ScenarioConfig& c) {
  if (c.calibrate.exponent_lo >= c.calibrate.exponent_hi) invalid("calibrate: exponent_lo >= exponent_hi");
  if (c.particle.r_min >= c.particle.r_max) invalid("particle: r_min >= r_max");
  if (c.particle.speed > c.particle.max_speed) invalid("particle: speed > max_speed");
  for (const auto* st : {&c.maxwell, &c.conservation})
    if (st->r_min >= st->r_max) invalid("r_min >= r_max");
  if (c.ab_loops.inner_offset >= c.ab_loops.outer_offset) invalid("ab-loops: inner_offset >= outer_offset");
}

bool is_section(const std::string& name) {
  return name == "calibrate" || name == "particle" || name == "maxwell" || name == "conservation" ||
         name == "energy" || name == "solenoid" || name == "ab-loops";
}

}  // namespace

void validate_scenario(const std::string& name) {
  const auto& names = scenario_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) invalid("unknown scenario '" + name + "'");
}

ScenarioConfig parse_config(std::string_view text) {
  boost::property_tree::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    invalid(std::string("config syntax: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  ScenarioConfig cfg;
  const auto table = setters(cfg);
  const auto apply = [&](const std::string& key, const std::string& value) {
    const auto it = table.find(key);
    if (it == table.end()) invalid("unknown key '" + key + "'");
    it->second(value);
  };
  for (const auto& [name, node] : tree) {
    if (node.empty()) {
      if (node.data().empty() && is_section(name)) continue;
      apply(name, node.data());
      continue;
    }
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty()) invalid("nested section under '" + name + "'");
      apply(name + "." + key, leaf.data());
    }
  }
  check_consistency(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace nifield::tools
