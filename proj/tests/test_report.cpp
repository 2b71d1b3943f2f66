#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "nevlab/cli.hpp"
#include "nevlab/report.hpp"

using namespace nevlab;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("nevlab_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json without_timing(Json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 6.02214076e23, -2.5, 0.0}) {
    const std::string s = format_number(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_number(16.0) == "16");
}

TEST_CASE("config serialization") {
  AuditConfig c;
  c.t_min = 20;
  c.t_max = 5e5;
  c.t_points = 7;
  c.log_spacing = false;
  c.c1 = 4.5;
  c.sigma = {0.6, 2.0};
  c.radii = default_radii(0.01);
  c.radii->max_modulus = 3.4;
  c.precision = PrecisionMode::Double;
  c.jobs = 2;
  const Json j = to_json(c);
  const AuditConfig back = config_from_json(j);
  CHECK(to_json(back).dump() == j.dump());
  CHECK(back.radii->max_modulus == 3.4);
  CHECK_FALSE(back.t.has_value());

  CHECK_THROWS_AS(config_from_json(Json{{"bogus", 1}}), NumericError);
  CHECK_THROWS_AS(config_from_json(Json{{"t_points", "many"}}), std::exception);
  const AuditConfig overlay = config_from_json(Json{{"c1", 7.0}}, c);
  CHECK(overlay.c1 == 7.0);
  CHECK(overlay.t_points == 7);
}

TEST_CASE("config validation and t grids") {
  AuditConfig c;
  CHECK_NOTHROW(validate(c, true));
  c.t_points = 0;
  CHECK_THROWS_AS(validate(c, false), NumericError);
  c = AuditConfig{};
  c.t_min = 10;
  CHECK_NOTHROW(validate(c, false));
  CHECK_THROWS_AS(validate(c, true), NumericError);
  c = AuditConfig{};
  c.t_min = 2e6;
  CHECK_THROWS_AS(validate(c, false), NumericError);

  c = AuditConfig{};
  c.t_min = 16;
  c.t_max = 1e6;
  c.t_points = 50;
  const std::vector<double> ts = t_values(c);
  REQUIRE(ts.size() == 50);
  CHECK(ts.front() == 16.0);
  CHECK(ts.back() == 1e6);
  for (std::size_t i = 1; i + 1 < ts.size(); ++i)
    CHECK(std::log(ts[i + 1] / ts[i]) == doctest::Approx(std::log(ts[i] / ts[i - 1])).epsilon(1e-9));
  c.log_spacing = false;
  const std::vector<double> lin = t_values(c);
  CHECK(lin[2] - lin[1] == doctest::Approx(lin[1] - lin[0]));
  c.t = 123.0;
  CHECK(t_values(c) == std::vector<double>{123.0});
}

TEST_CASE("jobs resolution") {
  CHECK(resolve_jobs(3) == 3);
  ::setenv("NEVLAB_JOBS", "5", 1);
  CHECK(resolve_jobs(0) == 5);
  CHECK(resolve_jobs(2) == 2);
  ::setenv("NEVLAB_JOBS", "zero", 1);
  CHECK_THROWS_AS(resolve_jobs(0), NumericError);
  ::unsetenv("NEVLAB_JOBS");
  CHECK(resolve_jobs(0) >= 1);
}

TEST_CASE("sweeps keep input order and classify failures") {
  const std::vector<double> ts{5.0, 1.0, 4.0, 2.0, 3.0, 6.0};
  auto audit = [](double t) -> std::vector<LemmaVerdict> {
    if (t == 4.0) throw NumericError(ErrorKind::BoundaryObstruction, "grazing");
    if (t == 6.0) throw NumericError(ErrorKind::NonConvergence, "stuck");
    return {upper_verdict("toy", {{"t", t}}, t, 5.5, 0.0)};
  };
  for (int jobs : {1, 3}) {
    const SweepOutcome o = run_sweep(ts, audit, jobs);
    REQUIRE(o.rows.size() == ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) CHECK(o.rows[i].t == ts[i]);
    CHECK(o.rows[2].verdicts.empty());
    REQUIRE(o.findings.size() == 1);
    CHECK(o.findings[0].kind == "boundary-obstruction");
    CHECK(o.findings[0].t == 4.0);
    REQUIRE(o.errors.size() == 1);
    CHECK(o.errors[0].t == 6.0);
  }
}

TEST_CASE("csv rows and exit codes") {
  ReportDocument doc;
  doc.command = "audit toy";
  doc.outcome = run_sweep({1.0, 2.0}, [](double t) { return std::vector<LemmaVerdict>{upper_verdict("toy", {}, t, 1.5, 0.0)}; }, 1);
  const std::string csv = csv_text(doc.outcome.rows);
  CHECK(csv == "t,lemma_id,computed,bound,margin,pass,error_estimate\n"
               "1,toy,1,1.5,0.5,true,0\n"
               "2,toy,2,1.5,-0.5,false,0\n");
  CHECK(exit_code(doc) == 2);
  doc.outcome.findings.push_back({2.0, "rh-obstruction", "zero"});
  CHECK(exit_code(doc) == 3);
  doc.outcome.errors.push_back({2.0, "NonConvergence", "stuck"});
  CHECK(exit_code(doc) == 1);

  const Json j = to_json(doc);
  CHECK(j["schema_version"] == 1);
  CHECK(j["summary"]["exit_code"] == 1);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"schema_version", "tool", "command", "config", "constants", "results",
                                         "verdicts", "findings", "errors", "summary", "timing"});
  CHECK_FALSE(to_json(doc, false).contains("timing"));
}

TEST_CASE("non-finite values serialize as strings") {
  LemmaVerdict v = upper_verdict("x", {}, std::numeric_limits<double>::quiet_NaN(), 1.0, 0.0);
  const Json j = to_json(v);
  CHECK(j["computed"] == "nan");
  CHECK(Json::parse(j.dump())["computed"] == "nan");
}

TEST_CASE("command line") {
  SUBCASE("zeta eval") {
    const Run r = run({"zeta", "eval", "--s", "4"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1.08232323371") != std::string::npos);
    CHECK(r.out.find("error") != std::string::npos);
  }

  SUBCASE("audit lemma5 at t = 16") {
    const Run r = run({"audit", "lemma5", "--t", "16"});
    CHECK(r.code == 0);
    const Json j = Json::parse(r.out);
    REQUIRE(j["verdicts"].size() == 4);
    for (const auto& v : j["verdicts"]) CHECK(v["pass"] == true);
  }

  SUBCASE("usage errors") {
    CHECK(run({"audit", "lemma5", "--bogus"}).code == 1);
    CHECK(run({"audit"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"audit", "lemma8", "--t", "15"}).code == 1);
    CHECK(run({"zeta", "eval", "--s", "1"}).code == 1);
    CHECK(run({"zeta", "eval", "--s", "4+"}).code == 1);
  }

  SUBCASE("other subcommands") {
    CHECK(run({"audit", "constants"}).code == 0);
    CHECK(run({"audit", "lemma4", "--tail", "log-over-quartic", "--a", "3"}).code == 0);
    CHECK(run({"audit", "lemma6", "--t-min", "2", "--t-max", "100", "--t-points", "5"}).code == 0);
    const Run count = run({"zeros", "count", "--function", "polynomial", "--zeros", "0.3,0.3,-0.5i", "--radius", "1"});
    CHECK(count.code == 0);
    CHECK(Json::parse(count.out)["results"]["count"] == 3);
    const Run t = run({"nevanlinna", "T", "--function", "exp", "--r", "2"});
    CHECK(t.code == 0);
    CHECK(Json::parse(t.out)["results"]["T"].get<double>() == doctest::Approx(2 / 3.141592653589793).epsilon(1e-9));
    CHECK(run({"nevanlinna", "jensen", "--function", "rational", "--zeros", "0.5", "--poles", "-0.2i", "--rho", "1"}).code == 0);
  }

  SUBCASE("csv and json files") {
    const std::string json = scratch("l5.json");
    const std::string csv = scratch("l5.csv");
    const Run r = run({"audit", "lemma5", "--t-min", "16", "--t-max", "1e4", "--t-points", "3", "--json", json, "--csv", csv});
    CHECK(r.code == 0);
    const std::string text = slurp(csv);
    CHECK(text.rfind("t,lemma_id,computed,bound,margin,pass,error_estimate\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 4);
    CHECK(Json::parse(slurp(json))["verdicts"].size() == 12);
    std::remove(json.c_str());
    std::remove(csv.c_str());
  }

  SUBCASE("determinism across thread counts and config round trip") {
    const std::string a = scratch("chain_a.json");
    const std::string b = scratch("chain_b.json");
    const std::string c = scratch("chain_c.json");
    const std::vector<std::string> base{"audit", "chain", "--t-min", "16", "--t-max", "200", "--t-points", "3"};
    auto with = [&](std::vector<std::string> extra) {
      std::vector<std::string> args = base;
      args.insert(args.end(), extra.begin(), extra.end());
      return args;
    };
    REQUIRE(run(with({"--jobs", "1", "--json", a})).code == 0);
    REQUIRE(run(with({"--jobs", "1", "--json", b})).code == 0);
    Json ja = without_timing(Json::parse(slurp(a)));
    Json jb = without_timing(Json::parse(slurp(b)));
    ja["config"].erase("json");
    jb["config"].erase("json");
    CHECK(ja.dump() == jb.dump());

    REQUIRE(run(with({"--jobs", "3", "--json", b})).code == 0);
    jb = without_timing(Json::parse(slurp(b)));
    CHECK(jb["verdicts"].dump() == ja["verdicts"].dump());

    REQUIRE(run({"audit", "chain", "--config", a, "--json", c}).code == 0);
    const Json jc = Json::parse(slurp(c));
    CHECK(jc["verdicts"].dump() == ja["verdicts"].dump());
    CHECK(jc["config"]["t_points"] == 3);
    for (const auto& p : {a, b, c}) std::remove(p.c_str());
  }

  SUBCASE("an rh-obstruction is reported as a finding") {
    const std::string cfg = scratch("wide.json");
    std::ofstream(cfg) << R"({"t": 16, "radii": {"zero_exclusion": 4.2}})";
    const Run r = run({"audit", "lemma8", "--config", cfg});
    CHECK(r.code == 3);
    const Json j = Json::parse(r.out);
    REQUIRE(j["verdicts"].size() == 1);
    CHECK(j["verdicts"][0]["finding"] == "rh-obstruction");
    CHECK(j["summary"]["findings"].get<int>() >= 1);
    std::remove(cfg.c_str());
  }
}
