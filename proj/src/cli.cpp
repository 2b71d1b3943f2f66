#include "nevlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "nevlab/report.hpp"

namespace nevlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  const std::string s = trim(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) throw NumericError(ErrorKind::InvalidArgument, "not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!trim(item).empty()) out.push_back(trim(item));
  }
  return out;
}

/// Every flag, shared by all leaf commands.
struct Flags {
  std::optional<double> t, t_min, t_max;
  std::optional<int> t_points, jobs;
  bool log_spacing = false;
  bool linear_spacing = false;
  std::string sigma;
  std::optional<double> c1;
  std::string precision;
  std::string json, csv, config;

  std::string s;
  int order = 0;
  double target = 1e-12;

  std::string function = "exp";
  std::string zeros, poles;
  std::string gain = "1";
  std::string rate = "1";
  double r = 1.0;
  double rho = 2.0;
  std::string a = "0";
  std::string center = "0";
  double radius = 1.0;
  double tol = 1e-9;
  double quad_target = 1e-10;

  std::string tail = "inverse-square";
  double tail_a = 1.0;
  double xi_max = 10.0;
};

struct Leaf {
  std::string name;
  CLI::App* app;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--t", f.t, "Height t (single point)");
  app->add_option("--t-min", f.t_min, "Lower end of the t range");
  app->add_option("--t-max", f.t_max, "Upper end of the t range");
  app->add_option("--t-points", f.t_points, "Number of t values");
  app->add_flag("--log-spacing", f.log_spacing, "Log-spaced t values (default)");
  app->add_flag("--linear-spacing", f.linear_spacing, "Evenly spaced t values");
  app->add_option("--sigma", f.sigma, "sigma value(s), comma separated");
  app->add_option("--c1", f.c1, "Constant c1 in |zeta(sigma+it)| <= c1 |t|^(1/2)");
  app->add_option("--precision", f.precision, "double or double_double")
      ->check(CLI::IsMember({"double", "double_double"}));
  app->add_option("--jobs", f.jobs, "Worker threads (default: NEVLAB_JOBS or all cores)");
  app->add_option("--json", f.json, "Write the JSON report here instead of stdout");
  app->add_option("--csv", f.csv, "Write verdict rows as CSV");
  app->add_option("--config", f.config, "JSON config file (same keys as the report's config echo)");
}

void add_function(CLI::App* app, Flags& f) {
  app->add_option("--function", f.function, "exp, polynomial, rational, zeta or log-zeta")
      ->check(CLI::IsMember({"exp", "polynomial", "rational", "zeta", "log-zeta"}));
  app->add_option("--zeros", f.zeros, "Zeros of a polynomial or rational function, comma separated");
  app->add_option("--poles", f.poles, "Poles of a rational function, comma separated");
  app->add_option("--gain", f.gain, "Leading factor (complex)");
  app->add_option("--rate", f.rate, "Rate of exp (complex): gain * exp(rate z)");
}

AuditConfig defaults_for(const std::string& command) {
  AuditConfig c;
  if (command == "audit lemma5") c.t_points = 500;
  if (command == "audit lemma6") {
    c.t_min = 2.0;
    c.t_max = 1e4;
    c.t_points = 500;
  }
  return c;
}

AuditConfig resolve_config(const std::string& command, const Flags& f) {
  AuditConfig c = defaults_for(command);
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw NumericError(ErrorKind::InvalidArgument, "cannot read config file " + f.config);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw NumericError(ErrorKind::InvalidArgument, "config file " + f.config + " is not valid JSON: " + e.what());
    }
    // A whole report is accepted too; its config echo is used.
    if (j.is_object() && j.contains("schema_version") && j.contains("config")) j = Json(j["config"]);
    c = config_from_json(j, c);
  }
  if (f.t_min || f.t_max || f.t_points) c.t.reset();
  if (f.t) c.t = *f.t;
  if (f.t_min) c.t_min = *f.t_min;
  if (f.t_max) c.t_max = *f.t_max;
  if (f.t_points) c.t_points = *f.t_points;
  if (f.log_spacing && f.linear_spacing) {
    throw NumericError(ErrorKind::InvalidArgument, "--log-spacing and --linear-spacing are exclusive");
  }
  if (f.log_spacing) c.log_spacing = true;
  if (f.linear_spacing) c.log_spacing = false;
  if (!f.sigma.empty()) c.sigma = parse_reals(f.sigma);
  if (f.c1) c.c1 = *f.c1;
  if (!f.precision.empty()) c.precision = precision_mode_from_string(f.precision);
  if (f.jobs) c.jobs = *f.jobs;
  if (!f.json.empty()) c.json_path = f.json;
  if (!f.csv.empty()) c.csv_path = f.csv;
  return c;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json points_json(const PointList& points) {
  Json a = Json::array();
  for (const auto& p : points) {
    a.push_back({{"re", p.location.real()}, {"im", p.location.imag()}, {"multiplicity", p.multiplicity}});
  }
  return a;
}

Json provenance_json(const Provenance& p) {
  return {{"method", p.method},
          {"cutoff", p.cutoff},
          {"correction_order", p.correction_order},
          {"steps", p.steps},
          {"double_double", p.double_double}};
}

double single_t(const AuditConfig& c) {
  if (!c.t) throw NumericError(ErrorKind::InvalidArgument, "this function needs --t");
  return *c.t;
}

/// The function selected by --function. Zeta-based handles are centred at
/// 4 + it; log-zeta first checks zeta has no zero in |z| < 3.49.
FunctionHandle build_function(const Flags& f, const AuditConfig& c, std::vector<Finding>& findings) {
  const Complex gain = parse_complex(f.gain);
  if (f.function == "exp") return handles::exponential(gain, parse_complex(f.rate));
  if (f.function == "polynomial") return handles::polynomial(parse_points(f.zeros), gain);
  if (f.function == "rational") return handles::rational(parse_points(f.zeros), parse_points(f.poles), gain);
  ZetaOptions zo;
  zo.precision = c.precision;
  const double t = single_t(c);
  FunctionHandle zeta = handles::memoized(handles::zeta_shift(t, zo, 1e-12));
  if (f.function == "zeta") return zeta;
  if (t < 1.0) throw NumericError(ErrorKind::Precondition, "log-zeta needs t >= 1");
  const double radius = 3.5 - c.delta;
  const WindingResult w = winding_count_jittered(zeta, 0.0, DiskSpec{Complex{}, radius});
  if (w.count > 0) {
    std::ostringstream os;
    os << "zeta has " << w.count << " zero(s) in |z| < " << w.disk.radius << " about 4+" << t << "i";
    findings.push_back(Finding{t, "rh-obstruction", os.str()});
    throw NumericError(ErrorKind::Precondition, os.str());
  }
  return handles::log_zeta_shift_over(zeta, t, std::min(w.disk.radius, 3.5 - 1e-9), zo, 1e-9);
}

PointList divisor_zeros(const Flags& f, const FunctionHandle& fn, double rho, double tol) {
  if (f.function == "exp") return {};
  if (f.function == "polynomial" || f.function == "rational") {
    PointList out;
    for (const auto& p : parse_points(f.zeros)) {
      if (std::abs(p.location) < rho) out.push_back(p);
    }
    return out;
  }
  return locate_a_points(fn, 0.0, DiskSpec{Complex{}, rho}, tol);
}

void emit(const ReportDocument& doc, std::ostream& out) {
  const Json j = to_json(doc);
  const std::string text = j.dump(2) + "\n";
  if (doc.config.json_path.empty()) {
    out << text;
  } else {
    std::ofstream file(doc.config.json_path, std::ios::binary);
    if (!file || !(file << text)) {
      throw NumericError(ErrorKind::InvalidArgument, "cannot write " + doc.config.json_path);
    }
    for (const auto& row : doc.outcome.rows) {
      for (const auto& v : row.verdicts) {
        out << (std::isnan(row.t) ? std::string("-") : format_number(row.t)) << "  " << v.lemma_id << "  "
            << (v.pass ? "pass" : "FAIL") << "  margin " << format_number(v.margin) << '\n';
      }
    }
    for (const auto& fd : doc.outcome.findings) out << "finding at t=" << format_number(fd.t) << ": " << fd.kind << '\n';
    for (const auto& e : doc.outcome.errors) out << "error at t=" << format_number(e.t) << ": " << e.message << '\n';
  }
  if (!doc.config.csv_path.empty()) {
    std::ofstream file(doc.config.csv_path, std::ios::binary);
    if (!file || !(file << csv_text(doc.outcome.rows))) {
      throw NumericError(ErrorKind::InvalidArgument, "cannot write " + doc.config.csv_path);
    }
  }
}

AuditRow single_row(std::vector<LemmaVerdict> verdicts) { return AuditRow{kNan, std::move(verdicts), 0.0}; }

int execute(const std::string& command, const Flags& f, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  ReportDocument doc;
  doc.command = command;
  const bool conditional = command == "audit lemma8" || command == "audit lemma9" || command == "audit chain" ||
                           command == "sweep";
  doc.config = resolve_config(command, f);
  validate(doc.config, conditional);
  doc.config.jobs = resolve_jobs(doc.config.jobs);
  AuditConfig& c = doc.config;
  ZetaOptions zo;
  zo.precision = c.precision;

  if (command == "zeta eval") {
    Complex s;
    if (!f.s.empty()) {
      s = parse_complex(f.s);
    } else if (c.sigma.size() == 1 && c.t) {
      s = Complex(c.sigma.front(), *c.t);
    } else {
      throw NumericError(ErrorKind::InvalidArgument, "zeta eval needs --s or a single --sigma with --t");
    }
    if (f.order != 0 && f.order != 1) throw NumericError(ErrorKind::InvalidArgument, "--order must be 0 or 1");
    const EvalResult r = zeta_em(s, f.order, f.target, zo);
    doc.results = {{"s", complex_json(s)},
                   {"order", f.order},
                   {"target", f.target},
                   {"value", complex_json(r.value)},
                   {"abs_error", r.abs_error},
                   {"provenance", provenance_json(r.provenance)}};
    out.precision(17);
    out << (f.order == 0 ? "zeta(" : "zeta'(") << format_number(s.real())
        << (s.imag() < 0 ? " - " : " + ") << format_number(std::abs(s.imag())) << "i) = " << format_number(r.value.real())
        << (r.value.imag() < 0 ? " - " : " + ") << format_number(std::abs(r.value.imag())) << "i"
        << "  (abs error <= " << format_number(r.abs_error) << ", " << r.provenance.method << ", N="
        << r.provenance.cutoff << ", K=" << r.provenance.correction_order << ")\n";
    doc.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!c.json_path.empty() || !c.csv_path.empty()) {
      std::ostringstream sink;
      emit(doc, c.json_path.empty() ? sink : out);
    }
    return 0;
  }

  if (command.rfind("nevanlinna ", 0) == 0 || command.rfind("zeros ", 0) == 0) {
    std::vector<Finding> findings;
    try {
      const FunctionHandle fn = build_function(f, c, findings);
      doc.results["function"] = fn.name();
      if (command == "nevanlinna m") {
        const ProximityResult m = proximity_m(fn, f.r, f.quad_target);
        doc.results.update({{"r", f.r}, {"m", m.value}, {"quad_error", m.quad_error}, {"crossings", m.crossings},
                            {"evaluations", m.evaluations}});
      } else if (command == "nevanlinna T") {
        const CharacteristicReport t = characteristic_T(fn, f.r, f.quad_target);
        doc.results.update({{"r", t.r}, {"m", t.m}, {"N", t.N}, {"T", t.T}, {"quad_error", t.quad_error},
                            {"n_at_zero", t.n_at_zero}});
      } else if (command == "nevanlinna jensen") {
        const PointList zeros = divisor_zeros(f, fn, f.rho, f.tol);
        const PointList poles = fn.poles_inside(Complex{}, f.rho);
        const JensenReport j = jensen_residual(fn, f.rho, zeros, poles, fn.value(Complex{}).value, f.quad_target);
        doc.results.update({{"rho", f.rho},
                            {"zeros", points_json(zeros)},
                            {"poles", points_json(poles)},
                            {"log_abs_f0", j.log_abs_f0},
                            {"circle_average", j.circle_average},
                            {"zero_sum", j.zero_sum},
                            {"pole_sum", j.pole_sum},
                            {"residual", j.residual},
                            {"error", j.error}});
        LemmaVerdict v = upper_verdict("jensen", {{"rho", f.rho}}, j.residual, j.error, 0.0);
        doc.outcome.rows.push_back(single_row({v}));
      } else if (command == "zeros count") {
        const WindingResult w =
            winding_count_jittered(fn, parse_complex(f.a), DiskSpec{parse_complex(f.center), f.radius});
        doc.results.update({{"a", complex_json(parse_complex(f.a))},
                            {"center", complex_json(w.disk.center)},
                            {"radius", w.disk.radius},
                            {"count", w.count},
                            {"contour_error", w.contour_error},
                            {"raw", complex_json(w.raw)},
                            {"nodes", w.nodes},
                            {"method", w.method},
                            {"jittered", w.jittered}});
      } else if (command == "zeros locate") {
        const LocateResult l =
            locate_a_points_jittered(fn, parse_complex(f.a), DiskSpec{parse_complex(f.center), f.radius}, f.tol);
        doc.results.update({{"a", complex_json(parse_complex(f.a))},
                            {"center", complex_json(l.disk.center)},
                            {"radius", l.disk.radius},
                            {"tol", f.tol},
                            {"points", points_json(l.points)},
                            {"total_multiplicity", total_multiplicity(l.points)},
                            {"jittered", l.jittered}});
      }
    } catch (const NumericError& e) {
      if (findings.empty() && e.kind() != ErrorKind::BoundaryObstruction) throw;
      if (findings.empty()) findings.push_back(Finding{c.t ? *c.t : kNan, "boundary-obstruction", e.what()});
    }
    doc.outcome.findings = findings;
  } else if (command == "audit lemma4") {
    RealFunction fn, anti;
    if (f.tail == "inverse-square") {
      fn = [](double x) { return 1.0 / (x * x); };
      anti = [](double x) { return -1.0 / x; };
    } else if (f.tail == "log-over-quartic") {
      fn = [](double x) { return std::log(x) / (x * x * x * x); };
      anti = [](double x) { return -std::log(x) / (3.0 * x * x * x) - 1.0 / (9.0 * x * x * x); };
    } else {
      throw NumericError(ErrorKind::InvalidArgument, "--tail must be inverse-square or log-over-quartic");
    }
    const TailCheckResult r = audit_lemma4(fn, anti, f.tail_a, f.xi_max);
    doc.results = {{"tail", f.tail},
                   {"a", f.tail_a},
                   {"xi_max", r.xi_max},
                   {"alpha_estimate", r.alpha_estimate},
                   {"alpha_range", Json::array({r.alpha_low, r.alpha_high})},
                   {"max_deviation", r.max_deviation}};
    doc.outcome.rows.push_back(single_row(r.verdicts));
  } else if (command == "audit lemma5") {
    doc.outcome = run_sweep(t_values(c), [&](double t) { return audit_lemma5(t, zo); }, c.jobs);
  } else if (command == "audit lemma6") {
    const std::vector<double> sigmas = c.sigma.empty() ? std::vector<double>{0.5, 0.54, 1.0, 2.0, 4.0} : c.sigma;
    const Lemma6Result r = audit_lemma6(sigmas, t_values(c), c.c1, zo);
    doc.results = {{"empirical_c1", r.empirical_c1}, {"sigma_at_max", r.sigma_at_max}, {"t_at_max", r.t_at_max}};
    doc.outcome.rows.push_back(single_row({r.verdict}));
  } else if (command == "audit constants") {
    doc.ledger = derive_constants(c.c1, c.delta);
    const double drift = ledger_consistency(*doc.ledger);
    doc.outcome.rows.push_back(single_row({upper_verdict("constants", {{"c1", c.c1}}, drift, 1e-12, 0.0)}));
  } else if (conditional) {
    doc.ledger = derive_constants(c.c1, c.delta);
    const ConstantsLedger ledger = *doc.ledger;
    const AuditOptions options = audit_options(c);
    std::function<std::vector<LemmaVerdict>(double)> audit;
    if (command == "audit lemma8") {
      audit = [&](double t) { return std::vector<LemmaVerdict>{audit_lemma8(t, ledger, options)}; };
    } else if (command == "audit lemma9") {
      audit = [&](double t) { return std::vector<LemmaVerdict>{audit_lemma9(t, ledger, options)}; };
    } else if (command == "audit chain") {
      audit = [&](double t) { return audit_chain(t, ledger, options); };
    } else {
      audit = [&](double t) {
        std::vector<LemmaVerdict> all = audit_lemma5(t, options.zeta);
        for (auto& v : audit_chain(t, ledger, options)) all.push_back(std::move(v));
        return all;
      };
    }
    doc.outcome = run_sweep(t_values(c), audit, c.jobs);
  } else {
    throw NumericError(ErrorKind::InvalidArgument, "unknown command " + command);
  }
  doc.total_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  emit(doc, out);
  return exit_code(doc);
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw NumericError(ErrorKind::InvalidArgument, "empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return Complex(parse_real(s), 0.0);
  s.pop_back();
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split_at = 0;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split_at = k;
      break;
    }
  }
  const std::string re = s.substr(0, split_at);
  std::string im = s.substr(split_at);
  double imag;
  if (im.empty() || im == "+") {
    imag = 1.0;
  } else if (im == "-") {
    imag = -1.0;
  } else {
    imag = parse_real(im);
  }
  return Complex(re.empty() ? 0.0 : parse_real(re), imag);
}

PointList parse_points(const std::string& text) {
  PointList out;
  for (const auto& item : split(text, ',')) out.push_back(DivisorPoint{parse_complex(item), 1});
  return merge_points(out, 1e-14);
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_real(item));
  return out;
}

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical audit of Nevanlinna-theoretic bounds for the Riemann zeta function", "nevlab"};
  app.require_subcommand(1);
  Flags f;
  std::vector<Leaf> leaves;

  auto* zeta = app.add_subcommand("zeta", "Zeta function evaluation")->require_subcommand(1);
  auto* eval = zeta->add_subcommand("eval", "zeta(s) or zeta'(s) with an error bound");
  add_common(eval, f);
  eval->add_option("--s", f.s, "Point s, e.g. 4 or 0.5+14.1347i");
  eval->add_option("--order", f.order, "0 for zeta, 1 for zeta'");
  eval->add_option("--target", f.target, "Absolute error target");
  leaves.push_back({"zeta eval", eval});

  auto* nev = app.add_subcommand("nevanlinna", "Nevanlinna functionals")->require_subcommand(1);
  for (const char* name : {"T", "m", "jensen"}) {
    auto* sub = nev->add_subcommand(name, std::string("Nevanlinna ") + name);
    add_common(sub, f);
    add_function(sub, f);
    sub->add_option("--r", f.r, "Circle radius for m and T");
    sub->add_option("--rho", f.rho, "Jensen radius");
    sub->add_option("--tol", f.tol, "Locator tolerance for zeta-based divisors");
    sub->add_option("--quad-target", f.quad_target, "Quadrature error target");
    leaves.push_back({std::string("nevanlinna ") + name, sub});
  }

  auto* zer = app.add_subcommand("zeros", "a-point counting and location")->require_subcommand(1);
  for (const char* name : {"count", "locate"}) {
    auto* sub = zer->add_subcommand(name, std::string(name) + " a-points in a disk");
    add_common(sub, f);
    add_function(sub, f);
    sub->add_option("--a", f.a, "Target value a (complex)");
    sub->add_option("--center", f.center, "Disk center (complex)");
    sub->add_option("--radius", f.radius, "Disk radius");
    sub->add_option("--tol", f.tol, "Location tolerance");
    leaves.push_back({std::string("zeros ") + name, sub});
  }

  auto* audit = app.add_subcommand("audit", "Lemma and chain audits")->require_subcommand(1);
  for (const char* name : {"lemma4", "lemma5", "lemma6", "lemma8", "lemma9", "chain", "constants"}) {
    auto* sub = audit->add_subcommand(name, std::string("audit ") + name);
    add_common(sub, f);
    if (std::string(name) == "lemma4") {
      sub->add_option("--tail", f.tail, "inverse-square (1/x^2) or log-over-quartic (log x / x^4)");
      sub->add_option("--a", f.tail_a, "Start of the sum");
      sub->add_option("--xi-max", f.xi_max, "Largest xi");
    }
    leaves.push_back({std::string("audit ") + name, sub});
  }

  auto* sweep = app.add_subcommand("sweep", "lemma5 and the full conditional chain over a t range");
  add_common(sweep, f);
  leaves.push_back({"sweep", sweep});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  std::string command;
  for (const auto& leaf : leaves) {
    if (leaf.app->parsed()) command = leaf.name;
  }
  try {
    return execute(command, f, out);
  } catch (const NumericError& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nevlab
