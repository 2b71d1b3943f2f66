#include "nevlab/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace nevlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Json number(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

Json named(const std::vector<NamedValue>& values) {
  Json j = Json::object();
  for (const auto& v : values) j[v.name] = number(v.value);
  return j;
}

// "boundary_obstruction" -> "boundary-obstruction", matching "rh-obstruction".
std::string kind_name(ErrorKind kind) {
  std::string s = to_string(kind);
  std::replace(s.begin(), s.end(), '_', '-');
  return s;
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void validate(const AuditConfig& c, bool conditional) {
  auto bad = [](const std::string& what) { throw NumericError(ErrorKind::InvalidArgument, what); };
  if (c.t) {
    if (!std::isfinite(*c.t)) bad("t must be finite");
    if (conditional && *c.t < 16.0) bad("conditional audits need t >= 16");
  } else {
    if (!(c.t_points >= 1)) bad("t_points must be at least 1");
    if (!std::isfinite(c.t_min) || !std::isfinite(c.t_max) || c.t_max < c.t_min) bad("need t_min <= t_max");
    if (c.log_spacing && !(c.t_min > 0.0)) bad("log spacing needs t_min > 0");
    if (conditional && c.t_min < 16.0) bad("conditional audits need t_min >= 16");
  }
  if (!(c.c1 > 0.0)) bad("c1 must be positive");
  if (!(c.delta > 0.0 && c.delta < 0.125)) bad("delta must lie in (0, 1/8)");
  if (c.jobs < 0) bad("jobs must be nonnegative");
}

std::vector<double> t_values(const AuditConfig& c) {
  if (c.t) return {*c.t};
  std::vector<double> out;
  const int n = c.t_points;
  for (int i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    double t;
    if (c.log_spacing) {
      t = std::exp(std::log(c.t_min) + f * (std::log(c.t_max) - std::log(c.t_min)));
    } else {
      t = c.t_min + f * (c.t_max - c.t_min);
    }
    if (i == 0) t = c.t_min;
    if (i == n - 1 && n > 1) t = c.t_max;
    out.push_back(t);
  }
  return out;
}

int resolve_jobs(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NEVLAB_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 4096) {
      throw NumericError(ErrorKind::InvalidArgument, std::string("NEVLAB_JOBS must be a positive integer, got '") +
                                                         env + "'");
    }
    return static_cast<int>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

AuditOptions audit_options(const AuditConfig& c) {
  AuditOptions o;
  o.zeta.precision = c.precision;
  o.radii = c.radii ? *c.radii : default_radii(c.delta);
  o.sigma_grid = c.sigma;
  return o;
}

Json to_json(const AuditConfig& c) {
  Json j;
  j["t"] = c.t ? Json(*c.t) : Json(nullptr);
  j["t_min"] = c.t_min;
  j["t_max"] = c.t_max;
  j["t_points"] = c.t_points;
  j["spacing"] = c.log_spacing ? "log" : "linear";
  j["c1"] = c.c1;
  j["delta"] = c.delta;
  if (c.radii) {
    const AuditRadii& r = *c.radii;
    j["radii"] = {{"zero_exclusion", r.zero_exclusion}, {"log_circle", r.log_circle},
                  {"one_points", r.one_points},         {"characteristic", r.characteristic},
                  {"max_modulus", r.max_modulus},       {"segment_sigma_min", r.segment_sigma_min}};
  } else {
    j["radii"] = nullptr;
  }
  j["sigma"] = c.sigma;
  j["precision"] = to_string(c.precision);
  j["jobs"] = c.jobs;
  j["json"] = c.json_path;
  j["csv"] = c.csv_path;
  return j;
}

AuditConfig config_from_json(const Json& j, AuditConfig c) {
  if (!j.is_object()) throw NumericError(ErrorKind::InvalidArgument, "config must be a JSON object");
  static const std::vector<std::string> known{"t",     "t_min", "t_max",     "t_points", "spacing", "c1",  "delta",
                                              "radii", "sigma", "precision", "jobs",     "json",    "csv"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw NumericError(ErrorKind::InvalidArgument, "unknown config key '" + key + "'");
    }
  }
  try {
    if (j.contains("t")) c.t = j["t"].is_null() ? std::nullopt : std::optional<double>(j["t"].get<double>());
    if (j.contains("t_min")) c.t_min = j["t_min"].get<double>();
    if (j.contains("t_max")) c.t_max = j["t_max"].get<double>();
    if (j.contains("t_points")) c.t_points = j["t_points"].get<int>();
    if (j.contains("spacing")) {
      const std::string s = j["spacing"].get<std::string>();
      if (s != "log" && s != "linear") throw NumericError(ErrorKind::InvalidArgument, "spacing must be log or linear");
      c.log_spacing = s == "log";
    }
    if (j.contains("c1")) c.c1 = j["c1"].get<double>();
    if (j.contains("delta")) c.delta = j["delta"].get<double>();
    if (j.contains("radii")) {
      if (j["radii"].is_null()) {
        c.radii.reset();
      } else {
        AuditRadii r = default_radii(c.delta);
        const Json& jr = j["radii"];
        auto take = [&](const char* key, double& field) {
          if (jr.contains(key)) field = jr[key].get<double>();
        };
        take("zero_exclusion", r.zero_exclusion);
        take("log_circle", r.log_circle);
        take("one_points", r.one_points);
        take("characteristic", r.characteristic);
        take("max_modulus", r.max_modulus);
        take("segment_sigma_min", r.segment_sigma_min);
        c.radii = r;
      }
    }
    if (j.contains("sigma")) c.sigma = j["sigma"].get<std::vector<double>>();
    if (j.contains("precision")) c.precision = precision_mode_from_string(j["precision"].get<std::string>());
    if (j.contains("jobs")) c.jobs = j["jobs"].get<int>();
    if (j.contains("json")) c.json_path = j["json"].get<std::string>();
    if (j.contains("csv")) c.csv_path = j["csv"].get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw NumericError(ErrorKind::InvalidArgument, std::string("bad config value: ") + e.what());
  }
  return c;
}

Json to_json(const LemmaVerdict& v) {
  Json j;
  j["lemma_id"] = v.lemma_id;
  j["inputs"] = named(v.inputs);
  j["sense"] = v.sense;
  j["computed"] = number(v.computed);
  j["bound"] = number(v.bound);
  j["margin"] = number(v.margin);
  j["error_estimate"] = number(v.error_estimate);
  j["pass"] = v.pass;
  j["provenance"] = named(v.provenance);
  j["notes"] = v.notes;
  j["finding"] = v.finding.empty() ? Json(nullptr) : Json(v.finding);
  return j;
}

Json to_json(const ConstantsLedger& ledger) {
  Json j;
  j["delta"] = ledger.delta;
  j["c1"] = {{"value", ledger.c1}, {"formula", "configured"}};
  for (const auto& e : ledger.entries) {
    Json entry;
    if (e.log_scale) {
      entry["log_value"] = e.value;
      entry["formula"] = "log(" + e.name + ") = " + e.formula;
    } else {
      entry["value"] = e.value;
      entry["formula"] = e.formula;
    }
    j[e.name] = entry;
  }
  j["self_consistency"] = ledger_consistency(ledger);
  return j;
}

SweepOutcome run_sweep(const std::vector<double>& ts,
                       const std::function<std::vector<LemmaVerdict>(double)>& audit, int jobs) {
  struct Slot {
    AuditRow row;
    std::optional<Finding> finding;
    std::optional<Finding> error;
  };
  std::vector<Slot> slots(ts.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= ts.size()) return;
      Slot& slot = slots[i];
      slot.row.t = ts[i];
      const auto start = std::chrono::steady_clock::now();
      try {
        slot.row.verdicts = audit(ts[i]);
      } catch (const NumericError& e) {
        Finding f{ts[i], kind_name(e.kind()), e.what()};
        if (e.kind() == ErrorKind::BoundaryObstruction) {
          slot.finding = f;
        } else {
          slot.error = f;
        }
      } catch (const std::exception& e) {
        slot.error = Finding{ts[i], "internal", e.what()};
      }
      slot.row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(ts.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SweepOutcome out;
  for (auto& slot : slots) {
    for (const auto& v : slot.row.verdicts) {
      if (!v.finding.empty()) {
        out.findings.push_back(Finding{slot.row.t, v.finding, v.notes.empty() ? v.lemma_id : v.notes.back()});
      }
    }
    if (slot.finding) out.findings.push_back(*slot.finding);
    if (slot.error) out.errors.push_back(*slot.error);
    out.rows.push_back(std::move(slot.row));
  }
  return out;
}

Json to_json(const ReportDocument& r, bool with_timing) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["tool"] = kToolVersion;
  j["command"] = r.command;
  j["config"] = to_json(r.config);
  j["constants"] = r.ledger ? to_json(*r.ledger) : Json(nullptr);
  j["results"] = r.results;
  Json verdicts = Json::array();
  int passed = 0, failed = 0;
  for (const auto& row : r.outcome.rows) {
    for (const auto& v : row.verdicts) {
      Json jv;
      jv["t"] = number(row.t);
      const Json body = to_json(v);
      for (const auto& [key, value] : body.items()) jv[key] = value;
      verdicts.push_back(jv);
      (v.pass ? passed : failed) += 1;
    }
  }
  j["verdicts"] = verdicts;
  auto findings = [](const std::vector<Finding>& list) {
    Json a = Json::array();
    for (const auto& f : list) a.push_back({{"t", number(f.t)}, {"kind", f.kind}, {"message", f.message}});
    return a;
  };
  j["findings"] = findings(r.outcome.findings);
  j["errors"] = findings(r.outcome.errors);
  j["summary"] = {{"verdicts", passed + failed},
                  {"passed", passed},
                  {"failed", failed},
                  {"findings", r.outcome.findings.size()},
                  {"errors", r.outcome.errors.size()},
                  {"exit_code", exit_code(r)}};
  if (with_timing) {
    Json per_t = Json::array();
    for (const auto& row : r.outcome.rows) per_t.push_back({{"t", number(row.t)}, {"seconds", row.seconds}});
    j["timing"] = {{"total_seconds", r.total_seconds}, {"per_t", per_t}};
  }
  return j;
}

std::string csv_text(const std::vector<AuditRow>& rows) {
  std::ostringstream os;
  os << "t,lemma_id,computed,bound,margin,pass,error_estimate\n";
  for (const auto& row : rows) {
    for (const auto& v : row.verdicts) {
      os << (std::isnan(row.t) ? std::string() : format_number(row.t)) << ',' << v.lemma_id << ','
         << format_number(v.computed) << ',' << format_number(v.bound) << ',' << format_number(v.margin) << ','
         << (v.pass ? "true" : "false") << ',' << format_number(v.error_estimate) << '\n';
    }
  }
  return os.str();
}

int exit_code(const ReportDocument& r) {
  if (!r.outcome.errors.empty()) return 1;
  if (!r.outcome.findings.empty()) return 3;
  for (const auto& row : r.outcome.rows) {
    for (const auto& v : row.verdicts) {
      if (!v.pass) return 2;
    }
  }
  return 0;
}

}  // namespace nevlab
