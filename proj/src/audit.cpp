#include "nevlab/audit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nevlab/double_double.hpp"
#include "nevlab/number_theory.hpp"

namespace nevlab {

namespace {

constexpr double u = kUnitRoundoff;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

/// Lower bound on |log zeta(4 + it)|, used where the chain needs |F(0)|.
constexpr double kLogZetaFloor = 0.0426;

double loglog(double t) { return std::log(std::log(t)); }

/// Golden-section maximum of g on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& g, double a, double b, double tol) {
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - golden * (b - a);
  double x2 = a + golden * (b - a);
  double f1 = g(x1);
  double f2 = g(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = g(x1);
    }
  }
  return f1 >= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace

TailCheckResult audit_lemma4(const RealFunction& f, const RealFunction& antiderivative, double a, double xi_max) {
  if (!std::isfinite(a) || !std::isfinite(xi_max) || !(xi_max >= a + 1.0)) {
    throw NumericError(ErrorKind::InvalidArgument, "audit_lemma4 needs finite a and xi_max >= a + 1");
  }
  if (xi_max - a > 1e8) throw NumericError(ErrorKind::InvalidArgument, "audit_lemma4: xi_max too far from a");
  const double fa = f(a);
  if (!(fa >= 0.0)) throw NumericError(ErrorKind::Precondition, "audit_lemma4: f(a) must be nonnegative");

  const auto first = static_cast<long long>(std::ceil(a));
  const auto last = static_cast<long long>(std::floor(xi_max));
  const double fa_int = antiderivative(a);
  std::vector<double> d;  // sum - integral at xi = first .. last
  std::vector<double> f_at;  // f(n) at n = first .. last
  d.reserve(static_cast<std::size_t>(last - first + 1));
  CompensatedSum sum;
  double previous = fa;
  double scale = 0.0;
  for (long long n = first; n <= last; ++n) {
    const double x = static_cast<double>(n);
    const double fx = f(x);
    if (!(fx >= 0.0) || fx > previous * (1.0 + 4.0 * u)) {
      std::ostringstream os;
      os << "audit_lemma4: f is not nonnegative and nonincreasing (sample at " << x << ")";
      throw NumericError(ErrorKind::Precondition, os.str());
    }
    previous = fx;
    sum.add(fx);
    const double integral = antiderivative(x) - fa_int;
    scale = std::max(scale, std::abs(sum.value()) + std::abs(integral));
    d.push_back(sum.value() - integral);
    f_at.push_back(fx);
  }

  TailCheckResult result;
  result.xi_max = static_cast<double>(last);
  result.alpha_estimate = d.back();
  result.alpha_low = 0.0;
  result.alpha_high = fa;
  // D(xi) moves by f(xi+1) - integral over [xi, xi+1], so the limit is
  // within f(xi_max) of the last value.
  const double alpha_error = f_at.back() + 8.0 * u * scale;

  double worst = -std::numeric_limits<double>::infinity();
  double worst_xi = kNan;
  double worst_allowance = kNan;
  for (long long n = std::max(first, static_cast<long long>(std::ceil(a + 1.0))); n <= last; ++n) {
    const double dev = std::abs(d[static_cast<std::size_t>(n - first)] - result.alpha_estimate);
    const double allowance = f(static_cast<double>(n - 1));
    result.max_deviation = std::max(result.max_deviation, dev);
    if (dev - allowance > worst) {
      worst = dev - allowance;
      worst_xi = static_cast<double>(n);
      worst_allowance = allowance;
    }
  }
  const std::vector<NamedValue> inputs{{"a", a}, {"xi_max", result.xi_max}};
  LemmaVerdict alpha = interval_verdict("lemma4.alpha", inputs, result.alpha_estimate, 0.0, fa, alpha_error);
  LemmaVerdict deviation = upper_verdict("lemma4.deviation", inputs, worst, 0.0, alpha_error);
  deviation.provenance = {{"worst_xi", worst_xi},
                          {"allowance_at_worst", worst_allowance},
                          {"max_deviation", result.max_deviation}};
  result.verdicts = {alpha, deviation};
  return result;
}

std::vector<LemmaVerdict> audit_lemma5(double t, const ZetaOptions& options) {
  if (!std::isfinite(t)) throw NumericError(ErrorKind::InvalidArgument, "audit_lemma5: t must be finite");
  constexpr double target = 1e-11;
  const Complex s(4.0, t);
  const ZetaJet jet = zeta_jet(s, target, options, target);
  LogZetaOptions lopts;
  lopts.zeta = options;
  const EvalResult lz = log_zeta_series(s, target, lopts);
  for (double err : {jet.value.abs_error, jet.derivative.abs_error, lz.abs_error}) {
    if (!(err <= 1e-10)) {
      throw NumericError(ErrorKind::PrecisionExhausted, "audit_lemma5: evaluator error above 1e-10", s);
    }
  }
  const std::vector<NamedValue> inputs{{"t", t}, {"sigma", 4.0}};
  std::vector<LemmaVerdict> out;
  out.push_back(interval_verdict("lemma5.1", inputs, std::abs(lz.value), 0.0426, 0.0824, lz.abs_error));
  out.push_back(lower_verdict("lemma5.2", inputs, std::abs(jet.value.value - 1.0), 0.0426, jet.value.abs_error));
  out.push_back(interval_verdict("lemma5.3", inputs, std::abs(jet.value.value), 0.917, 1.0824, jet.value.abs_error));
  out.push_back(lower_verdict("lemma5.4", inputs, std::abs(jet.derivative.value), 0.012, jet.derivative.abs_error));
  out[0].notes.push_back("|log zeta(4+it)|");
  out[1].notes.push_back("|zeta(4+it) - 1|");
  out[2].notes.push_back("|zeta(4+it)|");
  out[3].notes.push_back("|zeta'(4+it)|");
  return out;
}

Lemma6Result audit_lemma6(const std::vector<double>& sigma_samples, const std::vector<double>& t_samples,
                          double c1, const ZetaOptions& options) {
  if (sigma_samples.empty() || t_samples.empty()) {
    throw NumericError(ErrorKind::InvalidArgument, "audit_lemma6 needs sigma and t samples");
  }
  for (double sigma : sigma_samples) {
    if (!(sigma >= 0.5)) throw NumericError(ErrorKind::Precondition, "audit_lemma6 needs sigma >= 1/2");
  }
  for (double t : t_samples) {
    if (!(std::abs(t) >= 2.0)) throw NumericError(ErrorKind::Precondition, "audit_lemma6 needs |t| >= 2");
  }
  Lemma6Result result;
  double error = 0.0;
  for (double sigma : sigma_samples) {
    for (double t : t_samples) {
      const EvalResult z = zeta_em(Complex(sigma, t), 0, 1e-10, options);
      const double root = std::sqrt(std::abs(t));
      const double ratio = std::abs(z.value) / root;
      if (ratio > result.empirical_c1) {
        result.empirical_c1 = ratio;
        result.sigma_at_max = sigma;
        result.t_at_max = t;
        error = z.abs_error / root;
      }
    }
  }
  result.verdict = upper_verdict("lemma6", {{"c1", c1}}, result.empirical_c1, c1, error);
  result.verdict.provenance = {{"sigma_at_max", result.sigma_at_max},
                               {"t_at_max", result.t_at_max},
                               {"samples", static_cast<double>(sigma_samples.size() * t_samples.size())}};
  return result;
}

AuditRadii default_radii(double delta) {
  AuditRadii r;
  const double b = 3.5;
  r.zero_exclusion = b - delta;
  r.log_circle = b - 2.0 * delta;
  r.one_points = b - 2.0 * delta;
  r.characteristic = b - 3.0 * delta;
  r.max_modulus = b - 4.0 * delta;
  r.segment_sigma_min = 0.5 + 2.0 * delta;
  return r;
}

struct AuditContext::State {
  State(double t_, ConstantsLedger ledger_, AuditOptions options_)
      : t(t_),
        ledger(std::move(ledger_)),
        options(std::move(options_)),
        radii(options.radii ? *options.radii : default_radii(ledger.delta)),
        zeta_target(t <= 1e4 ? 1e-12 : 1e-10),
        log_target(t <= 1e4 ? 1e-9 : 1e-6),
        quad_target(t <= 1e4 ? 1e-10 : 1e-8),
        zeta(handles::memoized(handles::zeta_shift(t, options.zeta, zeta_target))) {}

  double t;
  ConstantsLedger ledger;
  AuditOptions options;
  AuditRadii radii;
  double zeta_target;
  double log_target;
  double quad_target;
  FunctionHandle zeta;

  std::optional<WindingResult> exclusion;
  std::optional<FunctionHandle> log_zeta;
  std::optional<LocateResult> ones;
  std::optional<LocateResult> log_zeros;
  std::optional<Jet> at_center;
  std::optional<CharacteristicReport> characteristic;

  struct CircleScan {
    QuadResult log_mean;
    double max_abs = 0.0;
    double max_angle = 0.0;
    double max_error = 0.0;
    int nodes = 0;
  };
  std::optional<CircleScan> scan;

  const WindingResult& zero_exclusion() {
    if (!exclusion) {
      exclusion = winding_count_jittered(zeta, 0.0, DiskSpec{Complex{}, radii.zero_exclusion},
                                         LocateOptions{}.winding);
    }
    return *exclusion;
  }

  bool obstructed() { return zero_exclusion().count > 0; }

  const FunctionHandle& log_handle() {
    if (!log_zeta) {
      const WindingResult& w = zero_exclusion();
      if (w.count > 0) throw NumericError(ErrorKind::Precondition, "log zeta requested with zeta zeros in the disk");
      const double radius = std::min(w.disk.radius, 3.5 - 1e-9);
      if (radius < radii.log_circle || radius < radii.one_points) {
        throw NumericError(ErrorKind::Precondition, "zero-exclusion disk does not cover the audit radii");
      }
      log_zeta = handles::log_zeta_shift_over(zeta, t, radius, options.zeta, log_target);
    }
    return *log_zeta;
  }

  const Jet& center() {
    if (!at_center) at_center = zeta.jet(Complex{});
    return *at_center;
  }

  const CircleScan& circle_scan() {
    if (!scan) {
      const FunctionHandle& f = log_handle();
      const double r = radii.log_circle;
      std::vector<std::pair<Complex, double>> samples;
      CircleScan c;
      c.log_mean = circle_log_mean(f, Complex{}, r, quad_target, &samples);
      c.nodes = static_cast<int>(samples.size());
      // Sampled max of |log zeta|, refined around the three best nodes.
      std::vector<std::size_t> order(samples.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      const std::size_t keep = std::min<std::size_t>(3, order.size());
      std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                        [&](std::size_t a, std::size_t b) { return samples[a].second > samples[b].second; });
      const double spacing = samples.empty() ? kTwoPi : kTwoPi / static_cast<double>(samples.size());
      auto modulus = [&](double phi) {
        const EvalResult e = f.value(std::polar(r, phi));
        c.max_error = std::max(c.max_error, e.abs_error);
        return std::abs(e.value);
      };
      for (std::size_t k = 0; k < keep; ++k) {
        const double phi = std::arg(samples[order[k]].first);
        const double v = std::exp(samples[order[k]].second);
        if (v > c.max_abs) {
          c.max_abs = v;
          c.max_angle = phi;
        }
        const auto [x, fx] = golden_max(modulus, phi - spacing, phi + spacing, 1e-9);
        if (fx > c.max_abs) {
          c.max_abs = fx;
          c.max_angle = x;
        }
      }
      c.max_error = std::max(c.max_error, f.value(std::polar(r, c.max_angle)).abs_error);
      scan = c;
    }
    return *scan;
  }

  const LocateResult& one_points() {
    if (!ones) {
      ones = locate_a_points_jittered(zeta, 1.0, DiskSpec{Complex{}, radii.one_points}, options.locate_tol);
    }
    return *ones;
  }

  const LocateResult& log_zero_points() {
    if (!log_zeros) {
      log_zeros = locate_a_points_jittered(log_handle(), 0.0, DiskSpec{Complex{}, radii.log_circle},
                                           options.locate_tol);
    }
    return *log_zeros;
  }

  const CharacteristicReport& characteristic_report() {
    if (!characteristic) characteristic = characteristic_T(zeta, radii.characteristic, quad_target);
    return *characteristic;
  }

  std::vector<NamedValue> inputs(std::initializer_list<NamedValue> extra) const {
    std::vector<NamedValue> out{{"t", t}};
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  }

  LemmaVerdict obstruction(const std::string& id) {
    LemmaVerdict v = upper_verdict(id, inputs({}), kNan, kNan, 0.0);
    v.pass = false;
    v.finding = "rh-obstruction";
    const WindingResult& w = zero_exclusion();
    v.provenance = {{"zero_count", static_cast<double>(w.count)}, {"exclusion_radius", w.disk.radius}};
    std::ostringstream os;
    os << "zeta has " << w.count << " zero(s) in |z| < " << w.disk.radius << " about 4+" << t << "i";
    v.notes.push_back(os.str());
    return v;
  }
};

AuditContext::AuditContext(double t, ConstantsLedger ledger, AuditOptions options) {
  if (!(t >= 16.0) || !std::isfinite(t)) {
    throw NumericError(ErrorKind::Precondition, "conditional audits need t >= 16");
  }
  state_ = std::make_unique<State>(t, std::move(ledger), std::move(options));
  const AuditRadii& r = state_->radii;
  if (!(r.max_modulus > 0.0 && r.max_modulus < r.characteristic && r.characteristic < r.one_points &&
        r.one_points <= r.zero_exclusion && r.log_circle <= r.zero_exclusion && r.one_points < 3.5 && r.log_circle < 3.5 &&
        r.zero_exclusion < 4.9)) {
    throw NumericError(ErrorKind::InvalidArgument,
                       "audit radii must satisfy max_modulus < characteristic < one_points <= zero_exclusion < 4.9, "
                       "log_circle <= zero_exclusion, one_points and log_circle < 3.5");
  }
  if (!(r.segment_sigma_min > 0.5 && r.segment_sigma_min < 4.0 && 4.0 - r.segment_sigma_min <= r.log_circle)) {
    throw NumericError(ErrorKind::InvalidArgument, "segment must start inside the log circle");
  }
}

AuditContext::~AuditContext() = default;
AuditContext::AuditContext(AuditContext&&) noexcept = default;
AuditContext& AuditContext::operator=(AuditContext&&) noexcept = default;

double AuditContext::t() const { return state_->t; }
const ConstantsLedger& AuditContext::ledger() const { return state_->ledger; }
const AuditRadii& AuditContext::radii() const { return state_->radii; }
const AuditOptions& AuditContext::options() const { return state_->options; }
AuditContext::State& AuditContext::state() { return *state_; }

LemmaVerdict audit_lemma8(AuditContext& context) {
  auto& s = context.state();
  if (s.obstructed()) return s.obstruction("lemma8");
  const FunctionHandle& f = s.log_handle();
  const auto& scan = s.circle_scan();

  // Fixed-height segment sigma in [segment_sigma_min, 4], i.e. z real.
  const double lo = s.radii.segment_sigma_min - 4.0;
  const int n = std::max(8, s.options.segment_samples);
  double seg_max = 0.0, seg_x = 0.0, seg_error = 0.0;
  auto modulus = [&](double x) {
    const EvalResult e = f.value(Complex(x, 0.0));
    seg_error = std::max(seg_error, e.abs_error);
    return std::abs(e.value);
  };
  for (int i = 0; i <= n; ++i) {
    const double x = lo + (0.0 - lo) * i / n;
    const double v = modulus(x);
    if (v > seg_max) {
      seg_max = v;
      seg_x = x;
    }
  }
  {
    const double h = -lo / n;
    const auto [x, v] = golden_max(modulus, std::max(lo, seg_x - h), std::min(0.0, seg_x + h), 1e-9);
    if (v > seg_max) {
      seg_max = v;
      seg_x = x;
    }
  }

  const double computed = std::max(scan.max_abs, seg_max);
  const double error = std::max(scan.max_error, seg_error);
  const double bound = s.ledger.value("c2") * std::log(s.t) + s.ledger.value("c3");
  LemmaVerdict v = upper_verdict(
      "lemma8", s.inputs({{"radius", s.radii.log_circle}, {"sigma_min", s.radii.segment_sigma_min}}), computed,
      bound, error);
  v.provenance = {{"circle_max", scan.max_abs},
                  {"circle_max_angle", scan.max_angle},
                  {"circle_nodes", static_cast<double>(scan.nodes)},
                  {"segment_max", seg_max},
                  {"segment_max_sigma", seg_x + 4.0},
                  {"zero_count", static_cast<double>(s.zero_exclusion().count)},
                  {"exclusion_radius", s.zero_exclusion().disk.radius},
                  {"c2", s.ledger.value("c2")},
                  {"c3", s.ledger.value("c3")}};
  if (s.zero_exclusion().jittered) v.notes.push_back("zero-exclusion radius jittered after a boundary obstruction");

  // The circle branch must agree with the horizontal continuation from the
  // right at the left end of the segment.
  try {
    BranchTrackOptions topts;
    topts.log_series.zeta = s.options.zeta;
    const EvalResult tracked = log_zeta_tracked(s.radii.segment_sigma_min, s.t, 1e-7, topts);
    const EvalResult mine = f.value(Complex(lo, 0.0));
    const double diff = std::abs(tracked.value - mine.value);
    v.provenance.push_back({"branch_crosscheck", diff});
    if (diff > 1e-6 + tracked.abs_error + mine.abs_error) {
      v.pass = false;
      v.notes.push_back("log zeta branch disagrees with horizontal continuation");
    }
  } catch (const NumericError& e) {
    v.notes.push_back(std::string("branch cross-check skipped: ") + e.what());
  }
  v.notes.push_back("checks the log circle and the fixed-height segment only; other heights in the strip are not covered");
  return v;
}

LemmaVerdict audit_lemma8(double t, const ConstantsLedger& ledger, const AuditOptions& options) {
  AuditContext context(t, ledger, options);
  return audit_lemma8(context);
}

LemmaVerdict audit_lemma9(AuditContext& context) {
  auto& s = context.state();
  if (s.obstructed()) return s.obstruction("lemma9");
  const FunctionHandle& f = s.log_handle();
  const LocateResult& ones = s.one_points();
  const LocateResult& zeros = s.log_zero_points();
  const double r_ones = ones.disk.radius;
  const double n_ones = counting_N(ones.points, 0, r_ones);
  const double n_zeros = counting_N(zeros.points, 0, zeros.disk.radius);

  int principal = 0;
  for (const auto& p : ones.points) {
    const Complex w = f.value(p.location).value;
    if (std::lround(w.imag() / kTwoPi) == 0) principal += p.multiplicity;
  }

  const EvalResult f0 = f.value(Complex{});
  const JensenReport jensen =
      jensen_residual(f, zeros.disk.radius, zeros.points, {}, f0.value, s.quad_target);

  const double bound = loglog(s.t) + s.ledger.value("c4");
  LemmaVerdict v = upper_verdict("lemma9", s.inputs({{"radius", s.radii.one_points}}), n_ones, bound,
                                 1e-12 * (1.0 + n_ones));
  v.provenance = {{"radius_used", r_ones},
                  {"one_count", static_cast<double>(total_multiplicity(ones.points))},
                  {"one_count_principal_branch", static_cast<double>(principal)},
                  {"N_log_zeros", n_zeros},
                  {"log_zero_count", static_cast<double>(total_multiplicity(zeros.points))},
                  {"jensen_lhs", jensen.log_abs_f0},
                  {"jensen_rhs", jensen.circle_average - jensen.zero_sum},
                  {"jensen_residual", jensen.residual},
                  {"jensen_error", jensen.error},
                  {"c4", s.ledger.value("c4")}};
  if (ones.jittered) v.notes.push_back("1-point disk radius jittered after a boundary obstruction");
  if (jensen.residual > jensen.error) v.notes.push_back("Jensen identity for log zeta not met within its error");
  v.notes.push_back("N counts all 1-points of zeta; those on nonprincipal branches of log zeta are not zeros of it");
  return v;
}

LemmaVerdict audit_lemma9(double t, const ConstantsLedger& ledger, const AuditOptions& options) {
  AuditContext context(t, ledger, options);
  return audit_lemma9(context);
}

std::vector<LemmaVerdict> audit_theorem(AuditContext& context) {
  auto& s = context.state();
  std::vector<double> grid = s.options.sigma_grid;
  if (grid.empty()) grid = {0.5 + 4.0 * s.ledger.delta, 1.0, 2.0, 4.0};
  for (double sigma : grid) {
    if (!(sigma >= 0.5 + 4.0 * s.ledger.delta - 1e-12)) {
      throw NumericError(ErrorKind::Precondition, "sigma grid must satisfy sigma >= 1/2 + 4 delta");
    }
    if (!s.zeta.domain().contains_circle(Complex(sigma - 4.0, 0.0), 0.0)) {
      throw NumericError(ErrorKind::InvalidArgument, "sigma grid value outside the evaluation disk");
    }
  }
  if (s.obstructed()) {
    return {s.obstruction("theorem.i"), s.obstruction("theorem.ii"), s.obstruction("theorem.iii")};
  }
  const double ll = loglog(s.t);
  std::vector<LemmaVerdict> out;

  // (i) characteristic against 2 log log t + c5, with the measured terms of
  // the second main theorem at the 1-point radius.
  {
    const CharacteristicReport& tr = s.characteristic_report();
    const LocateResult& ones = s.one_points();
    const double R = ones.disk.radius;
    const double r = s.radii.characteristic;
    const Jet& c = s.center();
    const double n_ones = counting_N(ones.points, 0, R);
    const double term_f0 = 4.0 * log_plus(std::abs(c.value.value));
    const double term_df0 = 2.0 * log_plus(1.0 / (R * std::abs(c.derivative.value)));
    const double term_radii = 24.0 * std::log(R / (R - r));
    const double smt_rhs = 2.0 * n_ones + term_f0 + term_df0 + term_radii + 2328.0;
    LemmaVerdict v = upper_verdict("theorem.i", s.inputs({{"r", r}, {"R", s.radii.one_points}}), tr.T,
                                   2.0 * ll + s.ledger.value("c5"), tr.quad_error);
    v.provenance = {{"m", tr.m},
                    {"N_poles", tr.N},
                    {"N_ones", n_ones},
                    {"term_log_plus_f0", term_f0},
                    {"term_log_plus_inv_df0", term_df0},
                    {"term_radii", term_radii},
                    {"smt_rhs_measured", smt_rhs},
                    {"c5", s.ledger.value("c5")}};
    if (!(tr.T <= smt_rhs + tr.quad_error)) v.notes.push_back("measured second-main-theorem bound violated");
    out.push_back(v);
  }

  // (ii) log+ of the max modulus against c6 log log t + c7.
  {
    const double r = s.radii.max_modulus;
    const MaxModulusResult mm = max_modulus(s.zeta, r, s.options.max_modulus_nodes);
    const double computed = log_plus(mm.value);
    const double error = mm.value > 0.0 ? mm.eval_error / mm.value : 0.0;
    const double rho = s.radii.characteristic;
    const double factor = (rho + r) / (rho - r);
    const CharacteristicReport& tr = s.characteristic_report();
    LemmaVerdict v = upper_verdict("theorem.ii", s.inputs({{"r", r}, {"rho", rho}}), computed,
                                   s.ledger.value("c6") * ll + s.ledger.value("c7"), error);
    v.provenance = {{"max_modulus", mm.value},
                    {"max_angle", mm.angle},
                    {"T_rho", tr.T},
                    {"factor", factor},
                    {"factor_times_T_rho", factor * tr.T},
                    {"c6", s.ledger.value("c6")},
                    {"c7", s.ledger.value("c7")}};
    if (!(computed <= factor * tr.T + error + factor * tr.quad_error)) {
      v.notes.push_back("measured max-modulus step violated");
    }
    out.push_back(v);
  }

  // (iii) direct values on the sigma grid, in log space: log c8 overflows.
  {
    double worst = -std::numeric_limits<double>::infinity();
    double worst_sigma = kNan;
    double error = 0.0;
    for (double sigma : grid) {
      const EvalResult z = s.zeta.value(Complex(sigma - 4.0, 0.0));
      const double lz = std::log(std::abs(z.value));
      if (lz > worst) {
        worst = lz;
        worst_sigma = sigma;
        error = z.abs_error / std::abs(z.value);
      }
    }
    LemmaVerdict v = upper_verdict("theorem.iii", s.inputs({{"sigma_min", grid.front()}}), worst,
                                   s.ledger.value("c6") * ll + s.ledger.log_value("c8"), error);
    v.provenance = {{"sigma_at_max", worst_sigma},
                    {"grid_points", static_cast<double>(grid.size())},
                    {"log_c8", s.ledger.log_value("c8")}};
    v.notes.push_back("computed and bound are log|zeta| and log(c8 (log t)^c6)");
    out.push_back(v);
  }
  return out;
}

std::vector<LemmaVerdict> audit_theorem(double t, const ConstantsLedger& ledger, const AuditOptions& options) {
  AuditContext context(t, ledger, options);
  return audit_theorem(context);
}

LemmaVerdict audit_chain_soundness(AuditContext& context) {
  auto& s = context.state();
  if (s.obstructed()) return s.obstruction("chain");
  const auto& scan = s.circle_scan();
  const LocateResult& ones = s.one_points();
  const LocateResult& zeros = s.log_zero_points();
  const double n_ones = counting_N(ones.points, 0, ones.disk.radius);
  const double bound = std::log(scan.max_abs) - std::log(kLogZetaFloor);
  const double f0 = std::abs(s.log_handle().value(Complex{}).value);
  LemmaVerdict v = upper_verdict("chain", s.inputs({{"radius", s.radii.one_points}}), n_ones, bound,
                                 scan.max_error / scan.max_abs + 1e-12 * (1.0 + n_ones));
  v.provenance = {{"measured_log_max", scan.max_abs},
                  {"N_log_zeros", counting_N(zeros.points, 0, zeros.disk.radius)},
                  {"jensen_bound", std::log(scan.max_abs) - std::log(f0)},
                  {"abs_log_zeta_at_center", f0}};
  v.notes.push_back("bound: log max|log zeta| - log 0.0426, from the measured max instead of c2 log t + c3");
  return v;
}

std::vector<LemmaVerdict> audit_chain(double t, const ConstantsLedger& ledger, const AuditOptions& options) {
  AuditContext context(t, ledger, options);
  std::vector<LemmaVerdict> out;
  out.push_back(audit_lemma8(context));
  out.push_back(audit_lemma9(context));
  for (auto& v : audit_theorem(context)) out.push_back(std::move(v));
  out.push_back(audit_chain_soundness(context));
  return out;
}

}  // namespace nevlab
