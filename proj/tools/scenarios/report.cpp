#include "report.hpp"

#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "nifield/errors.hpp"
#include "nifield/maxwell_check.hpp"

namespace nifield::tools {
namespace {

nlohmann::ordered_json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

void write_atomic(const std::filesystem::path& file, const std::string& text) {
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::IoError, "write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, file, ec);
  if (ec) throw Error(ErrorCode::IoError, "rename to " + file.string() + ": " + ec.message());
}

}  // namespace

Check make_check(std::string name, double value, double expected, double tol) {
  const bool pass = std::isfinite(value) && std::abs(value - expected) <= tol;
  return {std::move(name), value, expected, tol, pass, 0.0};
}

bool VerificationReport::passed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

void VerificationReport::append(VerificationReport other) {
  for (auto& c : other.checks) checks.push_back(std::move(c));
  for (auto& s : other.series) series.push_back(std::move(s));
  for (auto& t : other.timings) timings.push_back(std::move(t));
  for (auto& p : other.provenance) {
    bool seen = false;
    for (const auto& q : provenance) seen = seen || q.first == p.first;
    if (!seen) provenance.push_back(std::move(p));
  }
}

std::string report_json(const VerificationReport& report) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : report.checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["value"] = number(c.value);
    j["expected"] = number(c.expected);
    j["tol"] = number(c.tol);
    j["pass"] = c.pass;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string run_json(const VerificationReport& report) {
  nlohmann::ordered_json j;
  j["seed"] = report.seed;
  j["pass"] = report.passed();
  auto& consts = j["constants"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.provenance) consts[k] = number(v);
  auto& scen = j["scenario_runtime_s"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.timings) scen[k] = v;
  auto& times = j["runtime_s"] = nlohmann::ordered_json::object();
  for (const auto& c : report.checks) times[c.name] = c.runtime_s;
  return j.dump(2) + "\n";
}

std::string csv_text(const DataSeries& series) {
  std::string out;
  for (std::size_t i = 0; i < series.header.size(); ++i) {
    if (i) out += ',';
    out += series.header[i];
  }
  out += '\n';
  for (const auto& row : series.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_outputs(const VerificationReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());
  write_atomic(dir / "report.json", report_json(report));
  write_atomic(dir / "run.json", run_json(report));
  for (const auto& s : report.series) write_atomic(dir / s.file, csv_text(s));
}

}  // namespace nifield::tools
