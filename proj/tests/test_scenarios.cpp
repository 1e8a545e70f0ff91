#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

#include "config.hpp"
#include "nifield/errors.hpp"
#include "report.hpp"
#include "scenarios.hpp"

using namespace nifield;
using namespace nifield::tools;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::NotFound;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const DataSeries* find_series(const VerificationReport& r, const std::string& file) {
  for (const auto& s : r.series)
    if (s.file == file) return &s;
  return nullptr;
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("nifield_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const ScenarioConfig c = parse_config("");
  EXPECT_EQ(c.seed, 1u);
  EXPECT_EQ(c.tau_prime, 1.0);
  EXPECT_EQ(c.alpha, kFineStructure);
  EXPECT_EQ(c.particle.radii, 50);
  EXPECT_EQ(c.solenoid.length, 64.0);
}

TEST(Config, SectionsAndTopLevelKeys) {
  const ScenarioConfig c = parse_config(
      "seed = 42\n"
      "tau_prime = 2\n"
      "; comment\n"
      "[particle]\n"
      "radii = 7\n"
      "speed = 0.5\n"
      "[solenoid]\n"
      "length = 12.5\n"
      "[ab-loops]\n"
      "outer_offset = 3\n"
      "[energy]\n");
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.tau_prime, 2.0);
  EXPECT_EQ(c.particle.radii, 7);
  EXPECT_EQ(c.particle.speed, 0.5);
  EXPECT_EQ(c.solenoid.length, 12.5);
  EXPECT_EQ(c.ab_loops.outer_offset, 3.0);
  EXPECT_EQ(c.constants().omega_prime, std::numbers::pi);
}

TEST(Config, UnknownKeyRejected) {
  EXPECT_EQ(code_of([] { parse_config("[particle]\nradiuses = 3\n"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("colour = red\n"); }), ErrorCode::ConfigInvalid);
  EXPECT_EQ(code_of([] { parse_config("[nonsense]\nx = 1\n"); }), ErrorCode::ConfigInvalid);
}

TEST(Config, BadValuesRejected) {
  for (const char* text : {"alpha = 1.5\n", "tau_prime = -1\n", "[particle]\nradii = 2.5\n", "[particle]\nspeed = 1\n",
                           "[maxwell]\nh = abc\n", "[particle]\nr_min = 5\nr_max = 4\n", "seed = -3\n",
                           "[ab-loops]\ninner_offset = 3\n", "alpha = nan\n", "[solenoid\n"}) {
    EXPECT_EQ(code_of([&] { parse_config(text); }), ErrorCode::ConfigInvalid) << text;
  }
}

TEST(Config, MissingFileIsIoError) {
  EXPECT_EQ(code_of([] { load_config("/nonexistent/dir/none.ini"); }), ErrorCode::IoError);
}

TEST(Config, ScenarioNames) {
  for (const auto& n : scenario_names()) EXPECT_NO_THROW(validate_scenario(n));
  EXPECT_EQ(code_of([] { validate_scenario("everything"); }), ErrorCode::ConfigInvalid);
}

TEST(Report, EmptyReportIsEmptyArray) {
  VerificationReport r;
  EXPECT_EQ(report_json(r), "[]\n");
  EXPECT_TRUE(r.passed());
}

TEST(Report, CheckPassRule) {
  EXPECT_TRUE(make_check("a", 1.0, 1.0, 0.0).pass);
  EXPECT_TRUE(make_check("a", 1.5, 1.0, 0.5).pass);
  EXPECT_FALSE(make_check("a", 1.5001, 1.0, 0.5).pass);
  EXPECT_FALSE(make_check("a", std::numeric_limits<double>::quiet_NaN(), 0.0, 1e300).pass);
  EXPECT_FALSE(make_check("a", std::numeric_limits<double>::infinity(), 0.0, 1e300).pass);
}

TEST(Report, JsonSchema) {
  VerificationReport r;
  r.checks.push_back(make_check("x.ok", 0.25, 0.0, 1.0));
  r.checks.push_back(make_check("x.bad", std::numeric_limits<double>::quiet_NaN(), 2.0, 0.1));
  EXPECT_FALSE(r.passed());
  const auto j = nlohmann::json::parse(report_json(r));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["name"], "x.ok");
  EXPECT_EQ(j[0]["value"], 0.25);
  EXPECT_EQ(j[0]["pass"], true);
  EXPECT_TRUE(j[1]["value"].is_null());
  EXPECT_EQ(j[1]["pass"], false);
  // key order is part of the format
  const std::string text = report_json(r);
  EXPECT_LT(text.find("\"name\""), text.find("\"value\""));
  EXPECT_LT(text.find("\"value\""), text.find("\"expected\""));
  EXPECT_LT(text.find("\"expected\""), text.find("\"tol\""));
  EXPECT_LT(text.find("\"tol\""), text.find("\"pass\""));
}

TEST(Report, CsvBytes) {
  const DataSeries s{"x.csv", {"r", "value"}, {{0.5, 1e-7}, {2.0, -0.1}}};
  EXPECT_EQ(csv_text(s), "r,value\n0.5,1e-07\n2,-0.1\n");
}

TEST(Report, AppendKeepsFirstProvenance) {
  VerificationReport a, b;
  a.provenance = {{"alpha", 1.0}};
  b.provenance = {{"alpha", 2.0}, {"c", 1.0}};
  b.checks.push_back(make_check("b", 0, 0, 0));
  a.append(b);
  ASSERT_EQ(a.provenance.size(), 2u);
  EXPECT_EQ(a.provenance[0].second, 1.0);
  EXPECT_EQ(a.checks.size(), 1u);
}

TEST(Report, WriteOutputs) {
  const auto dir = scratch("write");
  VerificationReport r;
  r.seed = 9;
  r.checks.push_back(make_check("k", 1.0, 1.0, 0.0));
  r.series.push_back({"s.csv", {"a"}, {{1.0}}});
  write_outputs(r, dir / "nested");
  EXPECT_EQ(slurp(dir / "nested" / "report.json"), report_json(r));
  EXPECT_EQ(slurp(dir / "nested" / "s.csv"), "a\n1\n");
  const auto run = nlohmann::json::parse(slurp(dir / "nested" / "run.json"));
  EXPECT_EQ(run["seed"], 9);
  EXPECT_EQ(run["pass"], true);
  EXPECT_FALSE(std::filesystem::exists(dir / "nested" / "report.json.tmp"));
  std::filesystem::remove_all(dir);
}

TEST(Report, WriteOutputsIntoFileFails) {
  const auto dir = scratch("blocked");
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "plain") << "x";
  EXPECT_EQ(code_of([&] { write_outputs(VerificationReport{}, dir / "plain"); }), ErrorCode::IoError);
  std::filesystem::remove_all(dir);
}

TEST(Scenario, CalibrateReportAndProfile) {
  ScenarioConfig c;
  c.scenario = "calibrate";
  const VerificationReport r = run_scenario(c);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(r.checks[0].name, "calibrate.mean_residual");
  const DataSeries* s = find_series(r, "pulse_profile.csv");
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(s->rows.size(), 257u);
  EXPECT_EQ(csv_text(*s).substr(0, 15), "r,f0,df0\n0,0,0\n");
}

TEST(Scenario, EnergyHeaders) {
  ScenarioConfig c;
  c.scenario = "energy";
  const VerificationReport r = run_scenario(c);
  EXPECT_TRUE(r.passed());
  const DataSeries* s = find_series(r, "energy_poynting.csv");
  ASSERT_NE(s, nullptr);
  EXPECT_EQ(csv_text(*s).substr(0, 42), "r,averaged_radial_poynting,expected,rel_er");
}

TEST(Scenario, MaxwellHeadersAndDeterminism) {
  ScenarioConfig c;
  c.scenario = "maxwell";
  c.maxwell.events = 3;
  const VerificationReport a = run_scenario(c);
  const VerificationReport b = run_scenario(c);
  EXPECT_TRUE(a.passed());
  EXPECT_EQ(report_json(a), report_json(b));
  const DataSeries* s = find_series(a, "maxwell_residuals.csv");
  ASSERT_NE(s, nullptr);
  const std::string text = csv_text(*s);
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,x,y,z,gauss,faraday_x,faraday_y,faraday_z,divB,ampere_x,ampere_y,ampere_z,h");
  EXPECT_EQ(csv_text(*s), csv_text(*find_series(b, "maxwell_residuals.csv")));
}

TEST(Scenario, SeedChangesSampledEvents) {
  ScenarioConfig c;
  c.scenario = "conservation";
  c.conservation.events = 2;
  const auto a = csv_text(*find_series(run_scenario(c), "conservation_residuals.csv"));
  c.seed = 2;
  const auto b = csv_text(*find_series(run_scenario(c), "conservation_residuals.csv"));
  EXPECT_NE(a, b);
  EXPECT_EQ(a.substr(0, a.find('\n')), "t,x,y,z,residual_h,residual_h2,order");
}

TEST(Scenario, FailingCheckIsRecorded) {
  ScenarioConfig c;
  c.scenario = "energy";
  c.energy.radius = 1e-9;  // far inside the source: flux sampling breaks down
  const VerificationReport r = run_scenario(c);
  EXPECT_FALSE(r.passed());
  bool any_false = false;
  for (const auto& k : nlohmann::json::parse(report_json(r))) any_false = any_false || k["pass"] == false;
  EXPECT_TRUE(any_false);
}
