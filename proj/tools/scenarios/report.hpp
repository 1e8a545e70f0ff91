#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nifield::tools {

/// pass = |value - expected| <= tol, false for non-finite values.
struct Check {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool pass = false;
  double runtime_s = 0.0;
};

Check make_check(std::string name, double value, double expected, double tol);

/// One CSV file: a header row and numeric rows.
struct DataSeries {
  std::string file;
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct VerificationReport {
  std::vector<Check> checks;
  std::vector<DataSeries> series;
  std::vector<std::pair<std::string, double>> provenance;  // constants used
  std::vector<std::pair<std::string, double>> timings;     // wall seconds per scenario
  std::uint64_t seed = 0;

  bool passed() const;
  void append(VerificationReport other);
};

/// report.json: array of {name, value, expected, tol, pass} in check order.
/// Contains nothing run-dependent, so identical inputs give identical bytes.
std::string report_json(const VerificationReport& report);

/// run.json: seed, constants, per-scenario and per-check runtimes.
std::string run_json(const VerificationReport& report);

std::string csv_text(const DataSeries& series);

/// Writes report.json, run.json and every series into `dir` (created if
/// needed). Each file goes to a temporary name first and is renamed into
/// place. Throws Error{IoError}.
void write_outputs(const VerificationReport& report, const std::filesystem::path& dir);

}  // namespace nifield::tools
