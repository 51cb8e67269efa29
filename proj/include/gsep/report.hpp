#pragma once

#include "gsep/instance.hpp"
#include "gsep/varcheck.hpp"

namespace gsep {

enum class Outcome { verified, absent, error };
std::string to_string(Outcome o);
/// 0 verified, 1 property absent or none found, 2 error.
int exit_code(Outcome o);

/// One numeric claim with the tolerance it was checked under.
struct ResidualRow {
  std::string label;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;
  double tolerance = 0.0;
  bool holds = false;
};

struct Report {
  std::string command;
  std::string instance_name;
  std::string instance_digest;
  Outcome outcome = Outcome::error;
  /// Failing condition for errors and failed checks.
  std::string label;
  std::string message;
  nlohmann::json result = nlohmann::json::object();
  std::vector<ResidualRow> residuals;
  nlohmann::json budget = nlohmann::json::object();

  /// Report document including "digest", the FNV-1a of the other fields.
  nlohmann::json to_json() const;
};

enum class Format { json, table };
Format format_from_string(const std::string& s);

/// Deterministic bytes for a report.
std::string emit(const Report& r, Format f);

struct RunOptions {
  std::uint64_t seed = 1;
  /// Random directions of the stationarity scans; kappa sampling uses 40x.
  int budget = 256;
  double tol_scale = 1.0;

  SearchBudget search() const;
  SamplingBudget sampling() const;
  Tolerances tolerances() const { return Tolerances{}.scaled(tol_scale); }
};

const std::vector<std::string>& commands();

/// Runs one command; module errors become an error outcome with their label.
Report run(const std::string& command, const Instance& inst, const RunOptions& opt = {});

/// Per-file outcome matrix of a directory of instances (sorted by file name).
struct SuiteRun {
  std::vector<std::string> files;
  std::vector<Report> reports;
  Outcome outcome() const;
  nlohmann::json to_json() const;
  std::string csv() const;
  std::string table() const;
};
SuiteRun run_suite(const std::string& command, const std::string& dir, const RunOptions& opt = {});

}  // namespace gsep
