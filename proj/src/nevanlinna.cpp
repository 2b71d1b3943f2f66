#include "nevlab/nevanlinna.hpp"

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

void require_radius(double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw NumericError(ErrorKind::InvalidArgument, std::string(what) + " must be a positive finite radius");
  }
}

void require_target(double target) {
  if (!(target > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "target error must be positive");
}

void require_circle_in_domain(const FunctionHandle& f, Complex center, double r) {
  if (!f.domain().contains_circle(center, r)) {
    std::ostringstream os;
    os << "circle of radius " << r << " is not inside the domain of " << f.name();
    throw NumericError(ErrorKind::Precondition, os.str());
  }
}

void reject_poles_on_circle(const FunctionHandle& f, Complex center, double r) {
  if (!f.declared_poles()) return;
  for (const auto& p : *f.declared_poles()) {
    if (std::abs(std::abs(p.location - center) - r) <= 1e-9 * r) {
      throw NumericError(ErrorKind::BoundaryObstruction, "pole on the integration circle", p.location);
    }
  }
}

/// log|f| at a point with its first-order error from the evaluator.
struct LogSample {
  double value;
  double error;
  double modulus;
};

LogSample log_abs(const FunctionHandle& f, Complex z) {
  const EvalResult e = f.value(z);
  const double mod = std::abs(e.value);
  if (mod == 0.0) return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0.0};
  const double rel = e.abs_error / mod;
  const double err = rel < 0.5 ? rel / (1.0 - rel) + 2.0 * u : std::numeric_limits<double>::infinity();
  return {std::log(mod), err, mod};
}

/// Root of a continuous h on [a, b] with a sign change, by bisection
/// (robust against the flat behaviour of log|f| near |f| = 1).
double bisect_root(const std::function<double(double)>& h, double a, double b, double ha) {
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double hm = h(m);
    if ((hm > 0.0) == (ha > 0.0)) {
      a = m;
      ha = hm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

ProximityResult proximity_m(const FunctionHandle& f, double r, double target_err) {
  require_radius(r, "proximity_m radius");
  require_target(target_err);
  require_circle_in_domain(f, Complex{}, r);
  reject_poles_on_circle(f, Complex{}, r);

  double eval_error = 0.0;
  double sample_error = 0.0;
  int evaluations = 0;
  auto h = [&](double phi) {
    const LogSample s = log_abs(f, std::polar(r, phi));
    ++evaluations;
    if (s.value > 0.0) eval_error = std::max(eval_error, s.error);
    sample_error = std::max(sample_error, s.error);
    return s.value;
  };

  int m = 256;
  std::vector<double> values(m);
  for (int j = 0; j < m; ++j) values[j] = h(kTwoPi * j / m);
  auto crossings_of = [](const std::vector<double>& v) {
    std::vector<int> idx;
    const int n = static_cast<int>(v.size());
    for (int j = 0; j < n; ++j) {
      if ((v[j] > 0.0) != (v[(j + 1) % n] > 0.0)) idx.push_back(j);
    }
    return idx;
  };
  auto positive_mean = [](const std::vector<double>& v) {
    CompensatedSum s;
    for (double x : v) s.add(std::max(0.0, x));
    return s.value() / static_cast<double>(v.size());
  };

  std::vector<int> previous_crossings = crossings_of(values);
  double previous_mean = positive_mean(values);
  constexpr int kMaxNodes = 1 << 15;
  while (true) {
    std::vector<double> refined(2 * m);
    for (int j = 0; j < m; ++j) {
      refined[2 * j] = values[j];
      refined[2 * j + 1] = h(kTwoPi * (2 * j + 1) / (2 * m));
    }
    values.swap(refined);
    m *= 2;
    const std::vector<int> crossings = crossings_of(values);
    const double mean = positive_mean(values);
    ProximityResult result;
    // |f| = 1 on the circle up to rounding (z^n on |z| = 1): the crossings
    // are noise and log+ is bounded by the noise level.
    const double noise = std::max(sample_error, 16.0 * u);
    const double largest = *std::max_element(values.begin(), values.end());
    const double smallest = *std::min_element(values.begin(), values.end());
    if (!crossings.empty() && largest <= noise && smallest >= -noise) {
      result.value = mean;
      result.quad_error = std::max(largest, 0.0) + noise;
      result.evaluations = evaluations;
      return result;
    }
    if (crossings.empty() && previous_crossings.empty()) {
      if (values[0] <= 0.0) {
        // |f| <= 1 at every node of two levels.
        result.value = 0.0;
        result.quad_error = 0.0;
        result.evaluations = evaluations;
        return result;
      }
      const double change = std::abs(mean - previous_mean);
      if (change < target_err) {
        result.value = mean;
        result.quad_error = change + eval_error + 8.0 * u * std::abs(mean);
        result.evaluations = evaluations;
        return result;
      }
    } else if (!crossings.empty() && crossings.size() == previous_crossings.size()) {
      // Integrate log|f| between located crossings where it is positive.
      std::vector<double> roots;
      for (int j : crossings) {
        const double a = kTwoPi * j / m;
        const double b = kTwoPi * (j + 1) / m;
        roots.push_back(bisect_root(h, a, b, values[j]));
      }
      std::sort(roots.begin(), roots.end());
      const int k = static_cast<int>(roots.size());
      const double per_arc = 0.5 * target_err * kTwoPi / k;
      CompensatedSum total;
      double quad_error = 0.0;
      for (int i = 0; i < k; ++i) {
        const double a = roots[i];
        const double b = i + 1 < k ? roots[i + 1] : roots[0] + kTwoPi;
        if (h(0.5 * (a + b)) <= 0.0) continue;
        const QuadResult q = gauss_kronrod(h, a, b, per_arc);
        if (!q.converged) {
          throw NumericError(ErrorKind::NonConvergence, "proximity_m: arc quadrature did not converge");
        }
        total.add(q.value);
        quad_error += q.error;
      }
      result.value = std::max(0.0, total.value() / kTwoPi);
      result.quad_error = quad_error / kTwoPi + eval_error + 8.0 * u * result.value;
      result.crossings = k;
      result.evaluations = evaluations;
      return result;
    }
    previous_crossings = crossings;
    previous_mean = mean;
    if (m >= kMaxNodes) {
      std::ostringstream os;
      os << "proximity_m: no convergence after " << m << " nodes; best estimate " << mean;
      throw NumericError(ErrorKind::NonConvergence, os.str());
    }
  }
}

double counting_N(const PointList& divisor, int n_at_zero, double r) {
  require_radius(r, "counting_N radius");
  if (n_at_zero < 0) throw NumericError(ErrorKind::InvalidArgument, "n_at_zero must be nonnegative");
  CompensatedSum sum;
  int at_zero = n_at_zero;
  const double log_r = std::log(r);
  for (const auto& p : divisor) {
    if (p.multiplicity < 1) throw NumericError(ErrorKind::InvalidArgument, "multiplicity must be at least 1");
    const double mod = std::abs(p.location);
    if (mod > r) {
      throw NumericError(ErrorKind::InvalidArgument, "divisor point outside the counting radius", p.location);
    }
    if (mod == 0.0) {
      at_zero += p.multiplicity;
      continue;
    }
    sum.add(p.multiplicity * (log_r - std::log(mod)));
  }
  sum.add(at_zero * log_r);
  return sum.value();
}

CharacteristicReport characteristic_T(const FunctionHandle& f, double r, double target_err) {
  const ProximityResult m = proximity_m(f, r, target_err);
  CharacteristicReport report;
  report.r = r;
  report.m = m.value;
  report.quad_error = m.quad_error;
  PointList poles = f.poles_inside(Complex{}, r);
  for (const auto& p : poles) {
    if (std::abs(p.location) == 0.0) report.n_at_zero += p.multiplicity;
  }
  report.N = counting_N(poles, 0, r);
  report.T = report.m + report.N;
  return report;
}

MaxModulusResult max_modulus(const FunctionHandle& f, double r, int nodes) {
  require_radius(r, "max_modulus radius");
  if (nodes < 8) throw NumericError(ErrorKind::InvalidArgument, "max_modulus needs at least 8 nodes");
  require_circle_in_domain(f, Complex{}, r);
  MaxModulusResult result;
  std::vector<double> mod(nodes);
  auto at = [&](double phi) {
    ++result.evaluations;
    return f.value(std::polar(r, phi));
  };
  for (int j = 0; j < nodes; ++j) mod[j] = std::abs(at(kTwoPi * j / nodes).value);

  std::vector<int> peaks;
  for (int j = 0; j < nodes; ++j) {
    const double left = mod[(j + nodes - 1) % nodes];
    const double right = mod[(j + 1) % nodes];
    if (mod[j] >= left && mod[j] >= right) peaks.push_back(j);
  }
  std::sort(peaks.begin(), peaks.end(), [&](int a, int b) { return mod[a] > mod[b] || (mod[a] == mod[b] && a < b); });
  if (peaks.size() > 3) peaks.resize(3);

  const int best_node = peaks.empty() ? 0 : peaks.front();
  result.value = mod[best_node];
  result.angle = kTwoPi * best_node / nodes;
  const double spacing = kTwoPi / nodes;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int j : peaks) {
    double a = kTwoPi * j / nodes - spacing;
    double b = kTwoPi * j / nodes + spacing;
    double x1 = b - golden * (b - a);
    double x2 = a + golden * (b - a);
    double f1 = std::abs(at(x1).value);
    double f2 = std::abs(at(x2).value);
    while (b - a > result.refinement_tol) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = std::abs(at(x2).value);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = std::abs(at(x1).value);
      }
    }
    const double x = f1 >= f2 ? x1 : x2;
    const double v = std::max(f1, f2);
    if (v > result.value) {
      result.value = v;
      result.angle = x;
    }
  }
  result.angle = std::fmod(result.angle + kTwoPi, kTwoPi);
  result.eval_error = at(result.angle).abs_error;
  return result;
}

QuadResult circle_log_mean(const FunctionHandle& f, Complex center, double r, double target_err,
                           std::vector<std::pair<Complex, double>>* samples) {
  require_radius(r, "circle radius");
  require_target(target_err);
  require_circle_in_domain(f, center, r);
  reject_poles_on_circle(f, center, r);

  double eval_error = 0.0;
  double min_mod = std::numeric_limits<double>::infinity();
  double max_mod = 0.0;
  auto g = [&](Complex z) {
    const LogSample s = log_abs(f, z);
    eval_error = std::max(eval_error, s.error);
    min_mod = std::min(min_mod, s.modulus);
    max_mod = std::max(max_mod, s.modulus);
    return s.value;
  };
  CircleQuadOptions options;
  options.max_nodes = 1 << 14;
  QuadResult q;
  bool near_zero = false;
  try {
    q = circle_mean(g, center, r, target_err, options, samples);
    near_zero = !(min_mod > 1e-12 * max_mod);
  } catch (const NumericError&) {
    throw;
  }
  if (q.converged && !near_zero && std::isfinite(q.value)) {
    q.error += eval_error + 8.0 * u * std::abs(q.value);
    return q;
  }
  if (min_mod == 0.0) {
    throw NumericError(ErrorKind::BoundaryObstruction, "f vanishes on the circle");
  }
  // Local refinement: adaptive Gauss-Kronrod on arcs, which copes with the
  // integrable log singularity of a zero close to the circle.
  constexpr int arcs = 64;
  auto h = [&](double phi) { return g(center + std::polar(r, phi)); };
  CompensatedSum total;
  double error = 0.0;
  int evaluations = q.evaluations;
  bool converged = true;
  for (int k = 0; k < arcs; ++k) {
    const QuadResult a = gauss_kronrod(h, kTwoPi * k / arcs, kTwoPi * (k + 1) / arcs,
                                       0.5 * target_err * kTwoPi / arcs);
    total.add(a.value);
    error += a.error;
    evaluations += a.evaluations;
    converged = converged && a.converged;
  }
  QuadResult out;
  out.value = total.value() / kTwoPi;
  out.error = error / kTwoPi + eval_error + 8.0 * u * std::abs(out.value);
  out.evaluations = evaluations;
  out.converged = converged;
  return out;
}

JensenReport jensen_residual(const FunctionHandle& f, double rho, const PointList& zeros,
                             const PointList& poles, Complex f_at_0, double target_err) {
  require_radius(rho, "Jensen radius");
  const double mod0 = std::abs(f_at_0);
  if (!(mod0 > 0.0) || !std::isfinite(mod0)) {
    throw NumericError(ErrorKind::Precondition, "Jensen formula needs f(0) != 0, infinity");
  }
  auto divisor_sum = [&](const PointList& points) {
    CompensatedSum s;
    for (const auto& p : points) {
      const double mod = std::abs(p.location);
      if (mod == 0.0) throw NumericError(ErrorKind::Precondition, "divisor point at the origin");
      if (std::abs(mod - rho) <= 1e-9 * rho) {
        throw NumericError(ErrorKind::BoundaryObstruction, "divisor point on the Jensen circle", p.location);
      }
      if (mod > rho) {
        throw NumericError(ErrorKind::InvalidArgument, "divisor point outside the Jensen circle", p.location);
      }
      s.add(p.multiplicity * std::log(rho / mod));
    }
    return s.value();
  };
  JensenReport report;
  report.zero_sum = divisor_sum(zeros);
  report.pole_sum = divisor_sum(poles);
  for (const auto& p : zeros) {
    if (std::abs(std::abs(p.location) - rho) <= 1e-9 * rho) {
      throw NumericError(ErrorKind::BoundaryObstruction, "zero on the Jensen circle", p.location);
    }
  }
  const QuadResult avg = circle_log_mean(f, Complex{}, rho, target_err);
  if (!avg.converged) {
    throw NumericError(ErrorKind::NonConvergence, "Jensen circle average did not converge");
  }
  report.log_abs_f0 = std::log(mod0);
  report.circle_average = avg.value;
  const double rhs = avg.value - report.zero_sum + report.pole_sum;
  report.residual = std::abs(report.log_abs_f0 - rhs);
  report.error = avg.error + f.eval_target() / mod0 +
                 8.0 * u * (std::abs(avg.value) + report.zero_sum + report.pole_sum + std::abs(report.log_abs_f0));
  return report;
}

LemmaVerdict lemma1_check(const FunctionHandle& f, double r, double rho, double target_err) {
  require_radius(r, "lemma1 r");
  require_radius(rho, "lemma1 rho");
  if (!(r < rho)) throw NumericError(ErrorKind::Precondition, "lemma1_check needs 0 < r < rho");
  if (!f.domain().strictly_contains_circle(Complex{}, rho)) {
    throw NumericError(ErrorKind::Precondition, "lemma1_check needs rho below the domain radius");
  }
  if (!f.poles_inside(Complex{}, rho * (1.0 + 1e-9)).empty()) {
    throw NumericError(ErrorKind::Precondition, "lemma1_check needs f analytic in |z| < rho");
  }
  const CharacteristicReport t_r = characteristic_T(f, r, target_err);
  const CharacteristicReport t_rho = characteristic_T(f, rho, target_err);
  const MaxModulusResult mm = max_modulus(f, r);
  const double log_plus_m = log_plus(mm.value);
  const double m_error = mm.value > 0.0 ? mm.eval_error / mm.value + 1e-12 : 0.0;
  const double factor = (rho + r) / (rho - r);

  const double lower_margin = log_plus_m - t_r.T;
  const double lower_error = t_r.quad_error + m_error;
  const double upper_margin = factor * t_rho.T - log_plus_m;
  const double upper_error = factor * t_rho.quad_error + m_error;

  const bool lower_binding = lower_margin + lower_error <= upper_margin + upper_error;
  LemmaVerdict v = lower_binding
                       ? lower_verdict("lemma1", {{"r", r}, {"rho", rho}}, log_plus_m, t_r.T, lower_error)
                       : upper_verdict("lemma1", {{"r", r}, {"rho", rho}}, log_plus_m, factor * t_rho.T,
                                       upper_error);
  v.provenance = {{"T_r", t_r.T},
                  {"log_plus_M_r", log_plus_m},
                  {"T_rho", t_rho.T},
                  {"factor", factor},
                  {"margin_lower", lower_margin},
                  {"margin_upper", upper_margin},
                  {"error_lower", lower_error},
                  {"error_upper", upper_error},
                  {"refinement_tol", mm.refinement_tol}};
  v.notes.push_back(lower_binding ? "binding inequality: T(r) <= log+ M(r)"
                                  : "binding inequality: log+ M(r) <= factor T(rho)");
  v.pass = lower_margin >= -lower_error && upper_margin >= -upper_error;
  return v;
}

LemmaVerdict borel_caratheodory_check(const FunctionHandle& f, Complex z0, double R, double r, int samples) {
  require_radius(R, "Borel-Caratheodory R");
  require_radius(r, "Borel-Caratheodory r");
  if (!(r < R)) throw NumericError(ErrorKind::Precondition, "borel_caratheodory_check needs 0 < r < R");
  if (samples < 1) throw NumericError(ErrorKind::InvalidArgument, "samples must be positive");
  require_circle_in_domain(f, z0, R);
  if (!f.poles_inside(z0, R * (1.0 + 1e-9)).empty()) {
    throw NumericError(ErrorKind::Precondition, "f must be analytic on the closed R-disk");
  }

  // A(R): dense sampling of Re f on the R-circle with golden refinement.
  constexpr int nodes = 4096;
  double eval_error = 0.0;
  auto re_at = [&](double phi) {
    const EvalResult e = f.value(z0 + std::polar(R, phi));
    eval_error = std::max(eval_error, e.abs_error);
    return e.value.real();
  };
  std::vector<double> re(nodes);
  for (int j = 0; j < nodes; ++j) re[j] = re_at(kTwoPi * j / nodes);
  int best = static_cast<int>(std::max_element(re.begin(), re.end()) - re.begin());
  double a_r = re[best];
  {
    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = kTwoPi * best / nodes - kTwoPi / nodes;
    double b = kTwoPi * best / nodes + kTwoPi / nodes;
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = re_at(x1), f2 = re_at(x2);
    while (b - a > 1e-10) {
      if (f1 < f2) {
        a = x1, x1 = x2, f1 = f2, x2 = a + golden * (b - a), f2 = re_at(x2);
      } else {
        b = x2, x2 = x1, f2 = f1, x1 = b - golden * (b - a), f1 = re_at(x1);
      }
    }
    a_r = std::max(a_r, std::max(f1, f2));
  }

  const EvalResult center = f.value(z0);
  eval_error = std::max(eval_error, center.abs_error);
  const double factor = 2.0 * r / (R - r);
  const double bound = factor * (a_r - center.value.real());

  // Half the samples on the r-circle, the rest on interior rings.
  const int boundary = std::max(1, samples / 2);
  const int interior = samples - boundary;
  double lhs = 0.0;
  for (int j = 0; j < boundary; ++j) {
    const EvalResult e = f.value(z0 + std::polar(r, kTwoPi * j / boundary));
    eval_error = std::max(eval_error, e.abs_error);
    lhs = std::max(lhs, std::abs(e.value - center.value));
  }
  if (interior > 0) {
    const int rings = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(interior)) / 2));
    int placed = 0;
    for (int k = 0; k < rings; ++k) {
      const double rr = r * std::sqrt((k + 0.5) / rings);
      const int here = k + 1 == rings ? interior - placed : interior / rings;
      for (int j = 0; j < here; ++j) {
        const double phi = kTwoPi * (j + 0.5 * k) / std::max(1, here);
        const EvalResult e = f.value(z0 + std::polar(rr, phi));
        eval_error = std::max(eval_error, e.abs_error);
        lhs = std::max(lhs, std::abs(e.value - center.value));
      }
      placed += here;
    }
  }
  const double error = (2.0 + 2.0 * factor) * eval_error + 8.0 * u * (std::abs(bound) + lhs);
  LemmaVerdict v = upper_verdict("lemma7", {{"z0_re", z0.real()}, {"z0_im", z0.imag()}, {"R", R}, {"r", r}},
                                 lhs, bound, error);
  v.provenance = {{"A_R", a_r}, {"re_f_z0", center.value.real()}, {"factor", factor},
                  {"samples", static_cast<double>(samples)}};
  return v;
}

LemmaVerdict smt_check(const FunctionHandle& f, double R, double r, const SmtOptions& options) {
  require_radius(R, "SMT R");
  require_radius(r, "SMT r");
  if (!(r < R)) throw NumericError(ErrorKind::Precondition, "smt_check needs 0 < r < R");
  if (!f.domain().strictly_contains_circle(Complex{}, R)) {
    throw NumericError(ErrorKind::Precondition, "smt_check needs the domain to strictly contain |z| <= R");
  }
  for (const auto& p : f.poles_inside(Complex{}, 1e-12)) {
    (void)p;
    throw NumericError(ErrorKind::Precondition, "smt_check precondition violated: f(0) = infinity");
  }
  Jet at0;
  try {
    at0 = f.jet(Complex{});
  } catch (const NumericError& e) {
    if (e.kind() == ErrorKind::Pole) {
      throw NumericError(ErrorKind::Precondition, "smt_check precondition violated: f(0) = infinity");
    }
    throw;
  }
  const Complex f0 = at0.value.value;
  const Complex df0 = at0.derivative.value;
  const double tiny = std::max(1e-12, 2.0 * at0.value.abs_error);
  if (std::abs(f0) <= tiny) throw NumericError(ErrorKind::Precondition, "smt_check precondition violated: f(0) = 0");
  if (std::abs(f0 - 1.0) <= tiny) {
    throw NumericError(ErrorKind::Precondition, "smt_check precondition violated: f(0) = 1");
  }
  if (std::abs(df0) <= std::max(1e-12, 2.0 * at0.derivative.abs_error)) {
    throw NumericError(ErrorKind::Precondition, "smt_check precondition violated: f'(0) = 0");
  }

  std::vector<double> radii{R};
  for (double j : options.locate.winding.jitter) radii.push_back(R * (1.0 + j));
  for (double radius : radii) {
    if (!(radius > r) || !f.domain().strictly_contains_circle(Complex{}, radius)) continue;
    PointList zeros, ones;
    try {
      zeros = locate_a_points(f, 0.0, DiskSpec{Complex{}, radius}, options.locate_tol, options.locate);
      ones = locate_a_points(f, 1.0, DiskSpec{Complex{}, radius}, options.locate_tol, options.locate);
      reject_poles_on_circle(f, Complex{}, radius);
    } catch (const NumericError& e) {
      if (e.kind() == ErrorKind::BoundaryObstruction) continue;
      throw;
    }
    const PointList poles = f.poles_inside(Complex{}, radius);
    const double n_zero = counting_N(zeros, 0, radius);
    const double n_pole = counting_N(poles, 0, radius);
    const double n_one = counting_N(ones, 0, radius);
    const CharacteristicReport t = characteristic_T(f, r, options.target_err);

    const double term_f0 = 4.0 * log_plus(std::abs(f0));
    const double term_df0 = 2.0 * log_plus(1.0 / (radius * std::abs(df0)));
    const double term_radii = 24.0 * std::log(radius / (radius - r));
    const double rhs = 2.0 * (n_zero + n_pole + n_one) + term_f0 + term_df0 + term_radii + 2328.0;
    const double error = t.quad_error + 4.0 * at0.value.abs_error / std::abs(f0) +
                         2.0 * at0.derivative.abs_error / std::abs(df0) + 8.0 * u * rhs;
    LemmaVerdict v = upper_verdict("lemma3", {{"R", R}, {"r", r}}, t.T, rhs, error);
    v.provenance = {{"R_used", radius},
                    {"N_zeros", n_zero},
                    {"N_poles", n_pole},
                    {"N_ones", n_one},
                    {"zero_count", static_cast<double>(total_multiplicity(zeros))},
                    {"pole_count", static_cast<double>(total_multiplicity(poles))},
                    {"one_count", static_cast<double>(total_multiplicity(ones))},
                    {"term_log_plus_f0", term_f0},
                    {"term_log_plus_inv_df0", term_df0},
                    {"term_radii", term_radii},
                    {"constant", 2328.0},
                    {"m_r", t.m},
                    {"N_r", t.N}};
    if (radius != R) v.notes.push_back("radius jittered after a boundary obstruction");
    return v;
  }
  throw NumericError(ErrorKind::BoundaryObstruction, "smt_check: boundary obstruction persists through jitter");
}

}  // namespace nevlab
