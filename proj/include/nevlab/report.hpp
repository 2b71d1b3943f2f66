#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nevlab/audit.hpp"

namespace nevlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "nevlab 0.1.0";

struct AuditConfig {
  /// A single height; overrides the range when set.
  std::optional<double> t;
  double t_min = 16.0;
  double t_max = 1e6;
  int t_points = 50;
  bool log_spacing = true;
  double c1 = 3.0;
  double delta = 0.01;
  std::optional<AuditRadii> radii;
  /// sigma values (theorem grid, lemma6 samples, zeta eval); empty means
  /// the command's default.
  std::vector<double> sigma;
  PrecisionMode precision = PrecisionMode::DoubleDouble;
  /// Worker threads; 0 means NEVLAB_JOBS or the hardware concurrency.
  int jobs = 0;
  std::string json_path;
  std::string csv_path;
};

/// Throws InvalidArgument on a malformed config. `conditional` adds
/// t >= 16 for the RH-conditional audits.
void validate(const AuditConfig& config, bool conditional);

/// The single t, or t_points values spanning [t_min, t_max].
std::vector<double> t_values(const AuditConfig& config);

/// requested if positive, else NEVLAB_JOBS, else the hardware concurrency.
int resolve_jobs(int requested);

AuditOptions audit_options(const AuditConfig& config);

Json to_json(const AuditConfig& config);
/// Overlays the keys present in `j` onto `base`.
AuditConfig config_from_json(const Json& j, AuditConfig base = {});

Json to_json(const LemmaVerdict& verdict);
Json to_json(const ConstantsLedger& ledger);

struct Finding {
  double t = 0.0;
  std::string kind;
  std::string message;
};

struct AuditRow {
  /// NaN for checks that are not tied to a height.
  double t = 0.0;
  std::vector<LemmaVerdict> verdicts;
  double seconds = 0.0;
};

struct SweepOutcome {
  std::vector<AuditRow> rows;
  /// Structured findings: rh-obstruction, boundary-obstruction.
  std::vector<Finding> findings;
  /// Other numerical failures; these make the run an error.
  std::vector<Finding> errors;
};

/// Runs `audit` for every t on `jobs` threads. Rows come back in input
/// order whatever the scheduling. Boundary obstructions become findings,
/// other NumericErrors become errors; both leave the row empty.
SweepOutcome run_sweep(const std::vector<double>& ts,
                       const std::function<std::vector<LemmaVerdict>(double)>& audit, int jobs);

struct ReportDocument {
  std::string command;
  AuditConfig config;
  std::optional<ConstantsLedger> ledger;
  SweepOutcome outcome;
  /// Command-specific results (zeta values, winding counts, ...).
  Json results = Json::object();
  double total_seconds = 0.0;
};

/// The full report. Everything except the "timing" block is a function of
/// the config alone.
Json to_json(const ReportDocument& report, bool with_timing = true);

/// t, lemma_id, computed, bound, margin, pass, error_estimate
std::string csv_text(const std::vector<AuditRow>& rows);

/// 3 on findings, else 2 on a failed verdict, else 0 (errors give 1).
int exit_code(const ReportDocument& report);

/// Shortest decimal that reads back to the same double; nan and inf are
/// spelled out.
std::string format_number(double x);

}  // namespace nevlab
