#include "nevlab/function_handle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "nevlab/continuation.hpp"

namespace nevlab {

namespace {
constexpr double u = kUnitRoundoff;
}

void validate(const DiskSpec& disk) {
  require_finite(disk.center, "disk center");
  if (!(disk.radius > 0.0)) {
    throw NumericError(ErrorKind::InvalidArgument, "disk radius must be positive");
  }
}

PointList merge_points(PointList points, double tolerance) {
  for (const auto& p : points) {
    if (p.multiplicity < 1) {
      throw NumericError(ErrorKind::InvalidArgument, "multiplicity must be at least 1");
    }
    require_finite(p.location, "divisor location");
  }
  auto less = [](const DivisorPoint& a, const DivisorPoint& b) {
    if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  };
  std::sort(points.begin(), points.end(), less);
  // Greedy single-linkage clustering. Points are few, quadratic is fine.
  std::vector<int> group(points.size(), -1);
  int groups = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (group[i] < 0) group[i] = groups++;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (std::abs(points[i].location - points[j].location) < tolerance) {
        if (group[j] < 0) {
          group[j] = group[i];
        } else if (group[j] != group[i]) {
          const int from = group[j], to = group[i];
          for (auto& g : group) {
            if (g == from) g = to;
          }
        }
      }
    }
  }
  std::map<int, std::pair<Complex, int>> merged;  // weighted location sum, multiplicity
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto& m = merged[group[i]];
    m.first += static_cast<double>(points[i].multiplicity) * points[i].location;
    m.second += points[i].multiplicity;
  }
  PointList out;
  for (const auto& [g, m] : merged) {
    out.push_back(DivisorPoint{m.first / static_cast<double>(m.second), m.second});
  }
  std::sort(out.begin(), out.end(), less);
  return out;
}

int total_multiplicity(const PointList& points) {
  int total = 0;
  for (const auto& p : points) total += p.multiplicity;
  return total;
}

FunctionHandle::FunctionHandle(std::string name, Evaluator evaluator, DiskSpec domain)
    : name_(std::move(name)), evaluator_(std::move(evaluator)), domain_(domain) {
  validate(domain_);
  if (!evaluator_) throw NumericError(ErrorKind::InvalidArgument, "function handle needs an evaluator");
}

FunctionHandle& FunctionHandle::with_derivative(Evaluator derivative) {
  derivative_ = std::move(derivative);
  return *this;
}

FunctionHandle& FunctionHandle::with_jet(JetEvaluator jet) {
  jet_ = std::move(jet);
  return *this;
}

FunctionHandle& FunctionHandle::with_poles(PointList poles) {
  poles_ = merge_points(std::move(poles));
  return *this;
}

FunctionHandle& FunctionHandle::with_eval_target(double target) {
  if (!(target > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "eval target must be positive");
  eval_target_ = target;
  return *this;
}

EvalResult FunctionHandle::value(Complex z, double target) const {
  require_finite(z, "evaluation point");
  EvalResult r = evaluator_(z, target);
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
    throw NumericError(ErrorKind::Pole, name_ + ": non-finite value", z);
  }
  return r;
}

EvalResult FunctionHandle::derivative(Complex z) const {
  if (derivative_) return derivative_(z, eval_target_);
  return jet(z).derivative;
}

Jet FunctionHandle::jet(Complex z) const {
  require_finite(z, "evaluation point");
  if (jet_) {
    Jet j = jet_(z, eval_target_);
    if (!std::isfinite(std::abs(j.value.value)) || !std::isfinite(std::abs(j.derivative.value))) {
      throw NumericError(ErrorKind::Pole, name_ + ": non-finite value", z);
    }
    return j;
  }
  Jet j;
  j.value = value(z);
  if (derivative_) {
    j.derivative = derivative_(z, eval_target_);
    return j;
  }
  // Central difference; the error estimate compares two step sizes.
  const double h = 1e-5 * std::max(1.0, std::abs(z));
  auto diff = [&](double step) {
    return (value(z + step).value - value(z - step).value) / (2.0 * step);
  };
  const Complex d1 = diff(h);
  const Complex d2 = diff(2.0 * h);
  j.derivative.value = d1;
  j.derivative.abs_error = std::abs(d2 - d1) + j.value.abs_error / h;
  j.derivative.provenance.method = "central-difference";
  return j;
}

PointList FunctionHandle::poles_inside(Complex center, double r) const {
  PointList out;
  if (!poles_) return out;
  for (const auto& p : *poles_) {
    if (std::abs(p.location - center) < r) out.push_back(p);
  }
  return out;
}

namespace handles {

namespace {

const DiskSpec kPlane{Complex{}, kWholePlane};

/// Value and derivative of prod (z - root)^m, with relative rounding bound.
struct ProductJet {
  Complex value{1.0, 0.0};
  Complex derivative{};
  double rel_error = 0.0;
};

ProductJet product_jet(const PointList& roots, Complex z) {
  ProductJet p;
  for (const auto& r : roots) {
    const Complex d = z - r.location;
    for (int k = 0; k < r.multiplicity; ++k) {
      p.derivative = p.derivative * d + p.value;
      p.value *= d;
      const double ad = std::abs(d);
      p.rel_error += ad > 0.0 ? u * (std::abs(z) + std::abs(r.location)) / ad + 4.0 * u : 4.0 * u;
    }
  }
  return p;
}

}  // namespace

FunctionHandle constant(Complex c) {
  require_finite(c, "constant");
  auto f = [c](Complex, double) { return EvalResult{c, 0.0, {}}; };
  auto df = [](Complex, double) { return EvalResult{Complex{}, 0.0, {}}; };
  FunctionHandle h("constant", f, kPlane);
  h.with_derivative(df);
  return h;
}

FunctionHandle identity() {
  auto f = [](Complex z, double) { return EvalResult{z, 0.0, {}}; };
  auto df = [](Complex, double) { return EvalResult{Complex{1.0, 0.0}, 0.0, {}}; };
  FunctionHandle h("identity", f, kPlane);
  h.with_derivative(df);
  return h;
}

FunctionHandle exponential(Complex scale, Complex rate) {
  require_finite(scale, "exponential scale");
  require_finite(rate, "exponential rate");
  auto jet = [scale, rate](Complex z, double) {
    const Complex w = rate * z;
    const Complex v = scale * std::exp(w);
    const double err = 8.0 * u * (std::abs(w) + 2.0) * std::abs(v);
    return Jet{EvalResult{v, err, {}},
               EvalResult{rate * v, err * std::abs(rate) + 4.0 * u * std::abs(rate * v), {}}};
  };
  FunctionHandle h("exponential", [jet](Complex z, double t) { return jet(z, t).value; }, kPlane);
  h.with_jet(jet);
  return h;
}

FunctionHandle polynomial(const PointList& roots, Complex leading) {
  PointList r = roots;
  for (const auto& p : r) {
    if (p.multiplicity < 1) throw NumericError(ErrorKind::InvalidArgument, "multiplicity must be >= 1");
  }
  auto jet = [r, leading](Complex z, double) {
    const ProductJet p = product_jet(r, z);
    const Complex v = leading * p.value;
    const Complex d = leading * p.derivative;
    const double n = static_cast<double>(total_multiplicity(r)) + 1.0;
    return Jet{EvalResult{v, (p.rel_error + 2.0 * u) * std::abs(v), {}},
               EvalResult{d, (p.rel_error + 4.0 * n * u) * (std::abs(d) + std::abs(v)), {}}};
  };
  FunctionHandle h("polynomial", [jet](Complex z, double t) { return jet(z, t).value; }, kPlane);
  h.with_jet(jet);
  return h;
}

FunctionHandle rational(const PointList& zeros, const PointList& poles, Complex gain) {
  auto jet = [zeros, poles, gain](Complex z, double) {
    const ProductJet num = product_jet(zeros, z);
    const ProductJet den = product_jet(poles, z);
    if (den.value == Complex{}) throw NumericError(ErrorKind::Pole, "rational: evaluation at a pole", z);
    const Complex v = gain * num.value / den.value;
    // (N/D)' = (N' D - N D') / D^2
    const Complex d = gain * (num.derivative * den.value - num.value * den.derivative) /
                      (den.value * den.value);
    const double rel = num.rel_error + den.rel_error + 4.0 * u;
    const double n = static_cast<double>(total_multiplicity(zeros) + total_multiplicity(poles)) + 1.0;
    return Jet{EvalResult{v, rel * std::abs(v), {}},
               EvalResult{d, (rel + 8.0 * n * u) * (std::abs(d) + std::abs(v) / std::abs(den.value)), {}}};
  };
  FunctionHandle h("rational", [jet](Complex z, double t) { return jet(z, t).value; }, kPlane);
  h.with_jet(jet);
  h.with_poles(poles);
  return h;
}

FunctionHandle memoized(const FunctionHandle& inner) {
  struct Key {
    double re, im;
    bool operator==(const Key& o) const { return re == o.re && im == o.im; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      const auto a = std::hash<double>{}(k.re);
      const auto b = std::hash<double>{}(k.im);
      return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    }
  };
  struct Cache {
    std::mutex mutex;
    std::unordered_map<Key, Jet, KeyHash> jets;
  };
  auto cache = std::make_shared<Cache>();
  auto jet = [inner, cache](Complex z, double) {
    const Key key{z.real(), z.imag()};
    {
      std::lock_guard<std::mutex> lock(cache->mutex);
      auto it = cache->jets.find(key);
      if (it != cache->jets.end()) return it->second;
    }
    Jet j = inner.jet(z);
    std::lock_guard<std::mutex> lock(cache->mutex);
    cache->jets.emplace(key, j);
    return j;
  };
  FunctionHandle h(inner.name(), [jet](Complex z, double t) { return jet(z, t).value; }, inner.domain());
  h.with_jet(jet);
  h.with_eval_target(inner.eval_target());
  if (inner.declared_poles()) h.with_poles(*inner.declared_poles());
  return h;
}

FunctionHandle zeta_shift(double t, const ZetaOptions& options, double eval_target) {
  if (!std::isfinite(t)) throw NumericError(ErrorKind::InvalidArgument, "zeta_shift: t must be finite");
  const Complex shift(4.0, t);
  // Absolute targets fall below the rounding floor where |zeta| is large
  // (Re s < 0, large t); callers only need the honest bound there.
  ZetaOptions opts = options;
  opts.accept_rounding_floor = true;
  auto jet = [shift, options = opts](Complex z, double target) {
    // The derivative only steers Newton steps and argument tracking.
    const Complex s = z + shift;
    ZetaJet j = zeta_jet(s, target, options, 1e3 * target);
    // s is z + shift rounded; at large t that moves the argument by up to
    // half an ulp of t.
    const double moved = 0.5 * (std::abs(std::nextafter(s.real(), kWholePlane) - s.real()) +
                                std::abs(std::nextafter(s.imag(), kWholePlane) - s.imag()));
    j.value.abs_error += moved * (std::abs(j.derivative.value) + j.derivative.abs_error);
    return Jet{j.value, j.derivative};
  };
  DiskSpec domain{Complex{}, 4.9};
  std::ostringstream name;
  name << "zeta(z+4+" << t << "i)";
  FunctionHandle h(name.str(), [jet](Complex z, double target) { return jet(z, target).value; }, domain);
  h.with_jet(jet);
  h.with_eval_target(eval_target);
  // The pole s = 1 sits at z = -3 - i t.
  const Complex pole(-3.0, -t);
  h.with_poles(std::abs(pole) < domain.radius ? PointList{{pole, 1}} : PointList{});
  return h;
}

FunctionHandle log_of(const FunctionHandle& g, Complex anchor, Complex anchor_log, DiskSpec domain,
                      std::string name, double eval_target) {
  struct Node {
    Complex z;
    Complex log_value;
    Complex g_value;
    Complex g_derivative;
  };
  struct State {
    std::mutex mutex;
    std::vector<Node> nodes;
    std::unordered_map<long long, std::vector<std::size_t>> buckets;
    double cell = 0.25;
    long long key(long long i, long long j) const { return (i << 32) ^ (j & 0xffffffffLL); }
    std::pair<long long, long long> index(Complex z) const {
      return {static_cast<long long>(std::floor(z.real() / cell)),
              static_cast<long long>(std::floor(z.imag() / cell))};
    }
    void insert(const Node& n) {
      const auto [i, j] = index(n.z);
      buckets[key(i, j)].push_back(nodes.size());
      nodes.push_back(n);
    }
    const Node& nearest(Complex z) const {
      const auto [i0, j0] = index(z);
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (long long ring = 0;; ++ring) {
        for (long long i = i0 - ring; i <= i0 + ring; ++i) {
          for (long long j = j0 - ring; j <= j0 + ring; ++j) {
            if (std::max(std::llabs(i - i0), std::llabs(j - j0)) != ring) continue;
            auto it = buckets.find(key(i, j));
            if (it == buckets.end()) continue;
            for (std::size_t idx : it->second) {
              const double d = std::abs(nodes[idx].z - z);
              if (d < best_d) {
                best_d = d;
                best = idx;
              }
            }
          }
        }
        // Every unvisited bucket is at least ring * cell away.
        if (best_d <= static_cast<double>(ring) * cell || ring > 4096) break;
      }
      return nodes[best];
    }
  };
  auto state = std::make_shared<State>();
  {
    const Jet a = g.jet(anchor);
    state->insert(Node{anchor, anchor_log, a.value.value, a.derivative.value});
  }

  auto jet = [g, state, name](Complex z, double target) {
    std::lock_guard<std::mutex> lock(state->mutex);
    const Node start = state->nearest(z);
    Jet end_jet{};
    bool have_end = false;
    JetFunction fn = [&](Complex w) {
      Jet j = g.jet(w);
      if (w == z) {
        end_jet = j;
        have_end = true;
      }
      return std::make_pair(j.value.value, j.derivative.value);
    };
    ContinuationResult path;
    if (start.z == z) {
      end_jet = g.jet(z);
      have_end = true;
      path.end_value = start.g_value;
    } else {
      path = continue_log(fn, start.z, z, {start.g_value, start.g_derivative});
    }
    if (!have_end) end_jet = g.jet(z);
    const Complex gv = end_jet.value.value;
    const int k = branch_index(start.log_value.imag() + path.log_increment.imag(), gv);
    const Complex value = std::log(gv) + Complex(0.0, kTwoPi * k);
    const double mod = std::abs(gv);
    const double denom = mod - end_jet.value.abs_error;
    if (!(denom > 0.0)) {
      throw NumericError(ErrorKind::BranchObstruction, name + ": function value indistinguishable from 0", z);
    }
    const double err = end_jet.value.abs_error / denom + 4.0 * u * (std::abs(value) + 1.0);
    if (err > target) {
      throw NumericError(ErrorKind::PrecisionExhausted, name + ": log accuracy target unreachable", z);
    }
    const Complex dv = end_jet.derivative.value / gv;
    const double derr =
        (end_jet.derivative.abs_error * mod + std::abs(end_jet.derivative.value) * end_jet.value.abs_error) /
            (mod * denom) +
        4.0 * u * std::abs(dv);
    if (start.z != z) state->insert(Node{z, value, gv, end_jet.derivative.value});
    Provenance prov = end_jet.value.provenance;
    prov.method = "continued-log";
    prov.steps = path.steps;
    return Jet{EvalResult{value, err, prov}, EvalResult{dv, derr, prov}};
  };
  FunctionHandle h(std::move(name), [jet](Complex z, double t) { return jet(z, t).value; }, domain);
  h.with_jet(jet);
  h.with_eval_target(eval_target);
  return h;
}

FunctionHandle log_zeta_shift(double t, double domain_radius, const ZetaOptions& options,
                              double eval_target, double zeta_target) {
  if (!(t >= 1.0)) throw NumericError(ErrorKind::Precondition, "log_zeta_shift: requires t >= 1");
  if (!(domain_radius > 0.0 && domain_radius < 3.5)) {
    throw NumericError(ErrorKind::Precondition, "log_zeta_shift: domain must stay in Re s > 1/2");
  }
  return log_zeta_shift_over(memoized(zeta_shift(t, options, zeta_target)), t, domain_radius, options,
                             eval_target);
}

FunctionHandle log_zeta_shift_over(const FunctionHandle& zeta, double t, double domain_radius,
                                   const ZetaOptions& options, double eval_target) {
  // Anchor at Re s = 6, where log zeta is tiny and its principal value is the
  // branch reached from Re s = +infinity.
  const Complex anchor(2.0, 0.0);
  LogZetaOptions lopts;
  lopts.zeta = options;
  const EvalResult anchor_log = log_zeta_series(Complex(6.0, t), 1e-13, lopts);
  std::ostringstream name;
  name << "log zeta(z+4+" << t << "i)";
  return log_of(zeta, anchor, anchor_log.value, DiskSpec{Complex{}, domain_radius}, name.str(), eval_target);
}

}  // namespace handles

}  // namespace nevlab
