#include "nevlab/zeta.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "nevlab/continuation.hpp"
#include "nevlab/double_double.hpp"
#include "nevlab/number_theory.hpp"

namespace nevlab {

const char* to_string(PrecisionMode mode) {
  return mode == PrecisionMode::Double ? "double" : "double_double";
}

PrecisionMode precision_mode_from_string(const std::string& name) {
  if (name == "double") return PrecisionMode::Double;
  if (name == "double_double" || name == "dd") return PrecisionMode::DoubleDouble;
  throw NumericError(ErrorKind::InvalidArgument, "unknown precision mode '" + name + "'");
}

namespace {

constexpr double u = kUnitRoundoff;
constexpr int kMaxOrder = 160;

// c_k = B_{2k} / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}.
struct BernoulliTable {
  std::array<double, kMaxOrder + 2> coefficient{};
  std::array<double, kMaxOrder + 2> log_abs{};
};

const BernoulliTable& bernoulli() {
  static const BernoulliTable table = [] {
    BernoulliTable t;
    for (int k = 1; k <= kMaxOrder + 1; ++k) {
      double zeta_2k;
      if (k == 1) {
        zeta_2k = kPi * kPi / 6.0;
      } else if (k == 2) {
        zeta_2k = std::pow(kPi, 4) / 90.0;
      } else {
        CompensatedSum acc;
        constexpr int terms = 2000;
        for (int n = terms; n >= 1; --n) acc.add(std::pow(static_cast<double>(n), -2.0 * k));
        acc.add(std::pow(static_cast<double>(terms), 1.0 - 2.0 * k) / (2.0 * k - 1.0) -
                0.5 * std::pow(static_cast<double>(terms), -2.0 * k));
        zeta_2k = acc.value();
      }
      const double log_abs = std::log(2.0) + std::log(zeta_2k) - 2.0 * k * std::log(kTwoPi);
      t.log_abs[k] = log_abs;
      t.coefficient[k] = (k % 2 == 1 ? 1.0 : -1.0) * std::exp(log_abs);
    }
    return t;
  }();
  return table;
}

struct SeriesPlan {
  bool euler_maclaurin = false;
  std::int64_t cutoff = 0;
  int order = 0;
  double truncation_value = 0.0;
  double truncation_derivative = 0.0;
};

// Tail bounds for the plain Dirichlet series, sum over n >= N.
double direct_tail_value(double sigma, std::int64_t n) {
  const double m = static_cast<double>(n - 1);
  return std::pow(m, 1.0 - sigma) / (sigma - 1.0);
}

double direct_tail_derivative(double sigma, std::int64_t n) {
  const double m = static_cast<double>(n - 1);
  const double a = sigma - 1.0;
  return std::pow(m, -a) * (std::log(m) / a + 1.0 / (a * a));
}

std::int64_t direct_cutoff(double sigma, double budget, bool derivative, std::int64_t cap) {
  auto ok = [&](std::int64_t n) {
    if (direct_tail_value(sigma, n) > budget) return false;
    return !derivative || direct_tail_derivative(sigma, n) <= budget;
  };
  std::int64_t hi = 8;
  while (!ok(hi)) {
    if (hi > cap) return -1;
    hi *= 2;
  }
  std::int64_t lo = hi / 2;
  if (lo < 4) return hi;
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// log of the Euler-Maclaurin remainder bound after K correction terms, at
// cutoff N, for K = 0..max_order. With radius > 0 this is the Cauchy
// estimate for the derivative of the remainder: sup over |w - s| = radius of
// the bound, divided by radius. Entries are built incrementally in K.
void em_log_remainders(Complex s, double log_n, double radius, int max_order, std::vector<double>& out) {
  const double sigma = s.real() - radius;
  out.assign(static_cast<std::size_t>(max_order) + 1, std::numeric_limits<double>::infinity());
  double product = std::log(std::abs(s) + radius);  // sum_{j <= 2K} log(|s + j| + radius)
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) {
      product += std::log(std::abs(s + double(2 * k - 1)) + radius);
      product += std::log(std::abs(s + double(2 * k)) + radius);
    }
    const double denom = sigma + 2.0 * k + 1.0;
    if (denom <= 0.0) continue;
    double acc = bernoulli().log_abs[k + 1] + product - denom * log_n;
    acc += std::log((std::abs(s + double(2 * k + 1)) + radius) / denom);
    if (radius > 0.0) acc -= std::log(radius);
    out[static_cast<std::size_t>(k)] = acc;
  }
}

double cauchy_radius(double log_n) { return std::min(0.5, 1.0 / log_n); }

// Smallest order meeting the budget at cutoff n (or max_order if `require`).
SeriesPlan em_plan_at(Complex s, std::int64_t n, double log_budget, bool derivative,
                      int max_order, bool require) {
  const double log_n = std::log(static_cast<double>(n));
  const double radius = cauchy_radius(log_n);
  thread_local std::vector<double> rv, rd;
  em_log_remainders(s, log_n, 0.0, max_order, rv);
  if (derivative) em_log_remainders(s, log_n, radius, max_order, rd);
  for (int k = 0; k <= max_order; ++k) {
    const double v = rv[static_cast<std::size_t>(k)];
    const double d = derivative ? rd[static_cast<std::size_t>(k)] : -1e300;
    if ((v <= log_budget && d <= log_budget) || (require && k == max_order)) {
      SeriesPlan plan;
      plan.euler_maclaurin = true;
      plan.cutoff = n;
      plan.order = k;
      plan.truncation_value = std::exp(v);
      plan.truncation_derivative = derivative ? std::exp(d) : 0.0;
      return plan;
    }
  }
  return SeriesPlan{};
}

// Cheapest Euler-Maclaurin plan. For each order K the value bound is
// A_K - (sigma + 2K + 1) log N, so the least admissible N is explicit; the
// pair minimising N + K/4 is then confirmed (and N grown if the derivative
// bound needs it).
SeriesPlan cheapest_em_plan(Complex s, double log_budget, bool derivative, int max_order,
                            std::int64_t max_cutoff) {
  thread_local std::vector<double> at_one;
  em_log_remainders(s, 0.0, 0.0, max_order, at_one);
  double best_cost = std::numeric_limits<double>::infinity();
  std::int64_t best_n = 0;
  for (int k = 0; k <= max_order; ++k) {
    const double a = at_one[static_cast<std::size_t>(k)];
    // -inf: the remainder vanishes identically (s = 0 makes the product zero).
    if (std::isnan(a) || a == std::numeric_limits<double>::infinity()) continue;
    const double log_n = std::max(std::log(2.0), (a - log_budget) / (s.real() + 2.0 * k + 1.0));
    if (log_n > std::log(static_cast<double>(max_cutoff))) continue;
    const double n = std::ceil(std::exp(log_n));
    const double cost = n + 0.25 * k;
    if (cost < best_cost) {
      best_cost = cost;
      best_n = static_cast<std::int64_t>(n);
    }
  }
  if (best_n == 0) return SeriesPlan{};
  thread_local std::vector<double> rv, rd;
  for (std::int64_t n = best_n; n <= max_cutoff;) {
    SeriesPlan plan = em_plan_at(s, n, log_budget, derivative, max_order, false);
    if (plan.cutoff != 0) return plan;
    // Jump N to where some order would pass both bounds if the Cauchy radius
    // stayed fixed.
    const double log_n = std::log(static_cast<double>(n));
    const double radius = cauchy_radius(log_n);
    em_log_remainders(s, log_n, 0.0, max_order, rv);
    em_log_remainders(s, log_n, radius, max_order, rd);
    double growth = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= max_order; ++k) {
      double ev = rv[static_cast<std::size_t>(k)] - log_budget;
      const double ed = rd[static_cast<std::size_t>(k)] - log_budget;
      const double sv = s.real() + 2.0 * k + 1.0;
      const double sd = sv - radius;
      if (std::isnan(ev) || std::isnan(ed) || ed == std::numeric_limits<double>::infinity() || sd <= 0.0) continue;
      if (ev == -std::numeric_limits<double>::infinity()) ev = 0.0;
      growth = std::min(growth, std::max(std::exp(ev / sv), std::exp(ed / sd)));
    }
    if (!std::isfinite(growth)) growth = 2.0;
    n = static_cast<std::int64_t>(std::ceil(n * std::clamp(growth, 1.01, 16.0))) + 1;
  }
  return SeriesPlan{};
}

SeriesPlan choose_plan(Complex s, double budget, bool derivative, const ZetaOptions& options) {
  const double sigma = s.real();
  const int max_order = std::clamp(options.max_correction_order, 1, kMaxOrder - 1);
  const double log_budget = std::log(budget);

  const SeriesPlan em = cheapest_em_plan(s, log_budget, derivative, max_order, options.max_cutoff);

  SeriesPlan plan = em;
  if (sigma > 1.0) {
    const std::int64_t cap = em.cutoff != 0 ? em.cutoff : options.max_cutoff;
    const std::int64_t nd = direct_cutoff(sigma, budget, derivative, cap);
    if (nd > 0 && (em.cutoff == 0 || nd <= em.cutoff)) {
      plan = SeriesPlan{};
      plan.cutoff = nd;
      plan.truncation_value = direct_tail_value(sigma, nd);
      plan.truncation_derivative = derivative ? direct_tail_derivative(sigma, nd) : 0.0;
    }
  }
  if (plan.cutoff == 0) return plan;

  if (options.cutoff_scale != 1.0) {
    const auto scaled = static_cast<std::int64_t>(std::ceil(plan.cutoff * options.cutoff_scale));
    if (plan.euler_maclaurin) {
      plan = em_plan_at(s, scaled, log_budget, derivative, max_order, true);
    } else {
      plan.cutoff = scaled;
      plan.truncation_value = direct_tail_value(sigma, scaled);
      plan.truncation_derivative = derivative ? direct_tail_derivative(sigma, scaled) : 0.0;
    }
  }
  return plan;
}

// One pass over n = 1..cutoff building n^{-s} multiplicatively.
struct DirichletPass {
  Complex sum{};
  Complex derivative_sum{};
  Complex cutoff_term{};
  double cutoff_term_error = 0.0;  // relative
  double abs_sum = 0.0;
  double abs_log_sum = 0.0;
  double abs_log2_sum = 0.0;
};

DirichletPass dirichlet_pass(Complex s, std::int64_t cutoff, bool derivative, bool dd_phase) {
  const auto sieve = PrimeSieve::shared(static_cast<std::uint32_t>(cutoff + 1));
  const auto& primes = sieve->primes();
  const auto& logs = sieve->prime_logs();
  const double sigma = s.real();
  const double t = s.imag();

  thread_local std::vector<Complex> terms;
  thread_local std::vector<double> log_n;
  terms.resize(static_cast<std::size_t>(cutoff) + 1);
  log_n.resize(static_cast<std::size_t>(cutoff) + 1);
  terms[1] = 1.0;
  log_n[1] = 0.0;

  CompensatedComplexSum sum;
  CompensatedComplexSum dsum;
  sum.add(1.0);
  double abs_sum = 1.0;
  double abs_log_sum = 0.0;
  double abs_log2_sum = 0.0;

  std::size_t prime_index = 0;
  for (std::int64_t n = 2; n <= cutoff; ++n) {
    const auto un = static_cast<std::uint32_t>(n);
    const std::uint32_t p = sieve->smallest_factor(un);
    Complex term;
    if (p == un) {
      while (primes[prime_index] != p) ++prime_index;
      const DD lp = logs[prime_index];
      const double magnitude = std::exp(-sigma * lp.hi);
      Complex phase;
      if (dd_phase) {
        phase = dd_unit_phase(lp * t);
      } else {
        const double theta = t * lp.hi;
        phase = {std::cos(theta), std::sin(theta)};
      }
      term = magnitude * std::conj(phase);
      log_n[un] = lp.hi;
    } else {
      term = terms[p] * terms[un / p];
      log_n[un] = log_n[p] + log_n[un / p];
    }
    terms[un] = term;
    if (n == cutoff) break;
    const double mag = std::sqrt(term.real() * term.real() + term.imag() * term.imag());
    const double ln = log_n[un];
    sum.add(term);
    abs_sum += mag;
    abs_log_sum += mag * ln;
    if (derivative) {
      dsum.add(-ln * term);
      abs_log2_sum += mag * ln * ln;
    }
  }

  DirichletPass pass;
  pass.sum = sum.value();
  pass.derivative_sum = dsum.value();
  pass.cutoff_term = terms[static_cast<std::size_t>(cutoff)];
  pass.abs_sum = abs_sum;
  pass.abs_log_sum = abs_log_sum;
  pass.abs_log2_sum = abs_log2_sum;
  return pass;
}

// Per-unit-log-n relative error coefficient of a term n^{-s}.
double term_error_slope(Complex s, bool dd_phase) {
  const double phase = dd_phase ? std::abs(s.imag()) * 0x1p-47 : 2.0 * std::abs(s.imag());
  return phase + std::abs(s.real()) + 15.0;
}

ZetaJet evaluate(Complex s, double target, bool want_derivative, const ZetaOptions& options,
                 double derivative_target) {
  require_finite(s, "zeta argument");
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw NumericError(ErrorKind::InvalidArgument, "zeta: target_abs_err must be positive");
  }
  if (s == Complex(1.0, 0.0)) throw NumericError(ErrorKind::Pole, "zeta: pole at s = 1", s);
  if (s.real() <= -1.0) {
    throw NumericError(ErrorKind::InvalidArgument,
                       "zeta: Re s must exceed -1 (supported continuation range)", s);
  }

  const SeriesPlan plan = choose_plan(s, 0.5 * target, want_derivative, options);
  if (plan.cutoff == 0) {
    throw NumericError(ErrorKind::PrecisionExhausted,
                       "zeta: no cutoff within max_cutoff meets the target", s);
  }

  const double abs_t = std::abs(s.imag());
  bool dd_phase = options.precision == PrecisionMode::DoubleDouble && abs_t > options.dd_threshold;

  for (;;) {
    const DirichletPass pass = dirichlet_pass(s, plan.cutoff, want_derivative, dd_phase);
    const double slope = term_error_slope(s, dd_phase);
    const double n = static_cast<double>(plan.cutoff);
    const double summation_slack = 4.0 * u + n * u * u;

    Complex value = pass.sum;
    Complex deriv = pass.derivative_sum;
    double round_value = u * slope * pass.abs_log_sum + (4.0 * u + summation_slack) * pass.abs_sum;
    double round_deriv = u * (slope + 2.0) * pass.abs_log2_sum +
                         (6.0 * u + summation_slack) * pass.abs_log_sum;

    if (plan.euler_maclaurin) {
      const Complex nms = pass.cutoff_term;  // N^{-s}
      const double log_n = std::log(n);
      const double nms_rel = u * (slope * log_n + 4.0);
      const Complex sm1 = s - 1.0;
      const Complex head = n * nms / sm1;
      value += head + 0.5 * nms;
      if (want_derivative) {
        deriv += head * (-log_n - 1.0 / sm1) - 0.5 * log_n * nms;
      }

      // Q_k = c_k P_k(s) N^{1-2k}, P_k = s (s+1) ... (s+2k-2), with
      // Q'_k tracking P'_k the same way.
      const auto& table = bernoulli();
      Complex q = table.coefficient[1] * s / n;
      Complex dq = table.coefficient[1] / n;
      Complex corr{};
      Complex dcorr{};
      double corr_abs = 0.0;
      double dcorr_abs = 0.0;
      for (int k = 1; k <= plan.order; ++k) {
        corr += q;
        dcorr += dq - log_n * q;
        corr_abs += std::abs(q);
        dcorr_abs += std::abs(dq) + log_n * std::abs(q);
        const Complex a = s + double(2 * k - 1);
        const Complex b = s + double(2 * k);
        const double ratio = table.coefficient[k + 1] / table.coefficient[k] / (n * n);
        const Complex next_q = ratio * q * a * b;
        dq = ratio * (dq * a * b + q * (a + b));
        q = next_q;
      }
      value += nms * corr;
      const double mag_nms = std::abs(nms);
      const double head_abs = mag_nms * (n / std::abs(sm1) + 0.5);
      const double rel = nms_rel + u * (12.0 + 8.0 * plan.order);
      round_value += rel * (head_abs + mag_nms * corr_abs);
      if (want_derivative) {
        deriv += nms * dcorr;
        const double dhead_abs = mag_nms * (n / std::abs(sm1) * (log_n + 1.0 / std::abs(sm1)) +
                                            0.5 * log_n);
        round_deriv += rel * (dhead_abs + mag_nms * dcorr_abs);
      }
    }

    const double err_value = plan.truncation_value + round_value;
    const double err_deriv = plan.truncation_derivative + round_deriv;
    const bool ok = err_value <= target && (!want_derivative || err_deriv <= derivative_target);
    if (!ok) {
      if (options.precision == PrecisionMode::DoubleDouble && !dd_phase) {
        dd_phase = true;
        continue;
      }
    }
    if (!ok && !options.accept_rounding_floor) {
      std::ostringstream os;
      os << "zeta: rounding error bound " << std::max(round_value, want_derivative ? round_deriv : 0.0)
         << " exceeds target " << target << " at working precision ("
         << to_string(options.precision) << ")";
      throw NumericError(ErrorKind::PrecisionExhausted, os.str(), s);
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw NumericError(ErrorKind::PrecisionExhausted, "zeta: non-finite result", s);
    }

    Provenance prov;
    prov.method = plan.euler_maclaurin ? "euler-maclaurin" : "dirichlet-truncation";
    prov.cutoff = plan.cutoff;
    prov.correction_order = plan.order;
    prov.double_double = dd_phase;

    ZetaJet jet;
    jet.value = EvalResult{value, err_value, prov};
    if (want_derivative) jet.derivative = EvalResult{deriv, err_deriv, prov};
    return jet;
  }
}

}  // namespace

EvalResult zeta_em(Complex s, int derivative_order, double target_abs_err,
                   const ZetaOptions& options) {
  if (derivative_order != 0 && derivative_order != 1) {
    throw NumericError(ErrorKind::InvalidArgument, "zeta_em: derivative_order must be 0 or 1");
  }
  ZetaJet jet = evaluate(s, target_abs_err, derivative_order == 1, options, target_abs_err);
  return derivative_order == 0 ? jet.value : jet.derivative;
}

ZetaJet zeta_jet(Complex s, double target_abs_err, const ZetaOptions& options,
                 double derivative_target) {
  return evaluate(s, target_abs_err, true, options,
                  derivative_target > 0.0 ? derivative_target : target_abs_err);
}

EvalResult log_zeta_series(Complex s, double target_abs_err, const LogZetaOptions& options) {
  require_finite(s, "log_zeta_series argument");
  if (!(target_abs_err > 0.0)) {
    throw NumericError(ErrorKind::InvalidArgument, "log_zeta_series: target must be positive");
  }
  const double sigma = s.real();
  if (sigma < 1.0 + options.margin) {
    throw NumericError(ErrorKind::ConvergenceTooSlow,
                       "log_zeta_series: Re s too small for a guaranteed convergence rate", s);
  }
  const double budget = 0.5 * target_abs_err;
  // sum_{n >= N+1} n^{-sigma} <= N^{1-sigma} / (sigma - 1)
  const double needed = std::pow(budget * (sigma - 1.0), 1.0 / (1.0 - sigma));
  if (!(needed < static_cast<double>(options.table_limit))) {
    throw NumericError(ErrorKind::ConvergenceTooSlow,
                       "log_zeta_series: required terms exceed the Mangoldt table", s);
  }
  const auto cutoff = std::max<std::uint32_t>(2, static_cast<std::uint32_t>(std::ceil(needed)));
  const double tail = std::pow(static_cast<double>(cutoff), 1.0 - sigma) / (sigma - 1.0);

  const auto table = MangoldtTable::shared(options.table_limit);
  const auto sieve = PrimeSieve::shared(cutoff + 1);
  const auto& primes = sieve->primes();
  const auto& logs = sieve->prime_logs();
  const double t = s.imag();
  const bool dd_phase = options.zeta.precision == PrecisionMode::DoubleDouble &&
                        std::abs(t) > options.zeta.dd_threshold;
  const double slope = term_error_slope(s, dd_phase);

  CompensatedComplexSum acc;
  double rounding = 0.0;
  for (std::uint32_t n = 2; n <= cutoff; ++n) {
    const PrimePower d = table->descriptor(n);
    if (d.prime == 0) continue;
    const auto it = std::lower_bound(primes.begin(), primes.end(), d.prime);
    const DD log_n = logs[static_cast<std::size_t>(it - primes.begin())] * double(d.exponent);
    const double magnitude = std::exp(-sigma * log_n.hi);
    Complex phase;
    if (dd_phase) {
      phase = dd_unit_phase(log_n * t);
    } else {
      const double theta = t * log_n.hi;
      phase = {std::cos(theta), std::sin(theta)};
    }
    // Lambda(n) / log n = 1/k for n = p^k.
    const Complex term = magnitude * std::conj(phase) / double(d.exponent);
    acc.add(term);
    rounding += (u * (slope * log_n.hi + 8.0)) * std::abs(term);
  }
  const Complex value = acc.value();
  const double err = tail + rounding + 4.0 * u * std::abs(value);
  if (err > target_abs_err) {
    throw NumericError(ErrorKind::PrecisionExhausted,
                       "log_zeta_series: rounding error exceeds the target", s);
  }
  Provenance prov;
  prov.method = "mangoldt-series";
  prov.cutoff = cutoff;
  prov.double_double = dd_phase;
  return EvalResult{value, err, prov};
}

EvalResult log_zeta_tracked(double sigma, double t, double target_abs_err,
                            const BranchTrackOptions& options) {
  if (!std::isfinite(sigma) || !std::isfinite(t)) {
    throw NumericError(ErrorKind::InvalidArgument, "log_zeta_tracked: non-finite input");
  }
  if (!(t >= 1.0)) throw NumericError(ErrorKind::Precondition, "log_zeta_tracked: requires t >= 1");
  if (!(sigma > 0.5)) {
    throw NumericError(ErrorKind::Precondition, "log_zeta_tracked: requires sigma > 1/2");
  }
  if (!(target_abs_err > 0.0)) {
    throw NumericError(ErrorKind::InvalidArgument, "log_zeta_tracked: target must be positive");
  }
  const Complex target_point(sigma, t);
  if (sigma >= options.anchor_sigma) return log_zeta_series(target_point, target_abs_err, options.log_series);

  const Complex anchor(options.anchor_sigma, t);
  const EvalResult anchor_log = log_zeta_series(anchor, 1e-12, options.log_series);

  const ZetaOptions& zopts = options.log_series.zeta;
  const double path_target = options.path_target;
  JetFunction g = [&](Complex z) {
    const ZetaJet jet = zeta_jet(z, path_target, zopts);
    return std::make_pair(jet.value.value, jet.derivative.value);
  };
  ContinuationOptions copts;
  copts.initial_step = options.initial_step;
  copts.max_step = options.max_step;
  copts.min_step = options.min_step;
  copts.obstruction_threshold = options.obstruction_threshold;

  const auto start = g(anchor);
  const ContinuationResult path = continue_log(g, anchor, target_point, start, copts);
  const int k = branch_index(anchor_log.value.imag() + path.log_increment.imag(), path.end_value);

  // Final value to the requested accuracy; the branch integer is exact.
  const double scale = std::abs(path.end_value);
  const EvalResult fine = zeta_em(target_point, 0, std::max(0.25 * target_abs_err * scale, 1e-300), zopts);
  const Complex value = std::log(path.end_value) + Complex(0.0, kTwoPi * k) +
                        std::log(fine.value / path.end_value);
  const double denom = std::abs(fine.value) - fine.abs_error;
  if (!(denom > 0.0)) {
    throw NumericError(ErrorKind::BranchObstruction, "log_zeta_tracked: zeta too small at target",
                       target_point);
  }
  const double err = fine.abs_error / denom + 8.0 * u * (std::abs(value) + 1.0);
  if (err > target_abs_err) {
    throw NumericError(ErrorKind::PrecisionExhausted, "log_zeta_tracked: target unreachable",
                       target_point);
  }
  Provenance prov = fine.provenance;
  prov.method = "horizontal-continuation";
  prov.steps = path.steps;
  return EvalResult{value, err, prov};
}

}  // namespace nevlab
