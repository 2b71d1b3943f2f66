#include "nevlab/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>

#include "nevlab/quadrature.hpp"

namespace nevlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string describe(Complex z) {
  std::ostringstream os;
  os.precision(12);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

/// g = (f - a) * prod (z - b)^m over declared poles b inside the disk, so g
/// is analytic there and its zeros are the a-points of f.
class Cleared {
 public:
  struct Sample {
    Complex z;
    Complex g;
    /// g'/g
    Complex dlog;
  };

  Cleared(const FunctionHandle& f, Complex a, const DiskSpec& disk) : f_(f), a_(a) {
    if (!f.domain().contains_circle(disk.center, disk.radius)) {
      throw NumericError(ErrorKind::Precondition, "disk is not inside the function's domain");
    }
    if (f.declared_poles()) {
      for (const auto& p : *f.declared_poles()) {
        const double d = std::abs(p.location - disk.center);
        if (std::abs(d - disk.radius) <= 1e-9 * disk.radius) {
          throw NumericError(ErrorKind::BoundaryObstruction, "declared pole on the contour", p.location);
        }
        if (d < disk.radius) poles_.push_back(p);
      }
    }
  }

  Sample at(Complex z) const {
    const Jet j = f_.jet(z);
    const Complex h = j.value.value - a_;
    Sample s{z, h, j.derivative.value / h};
    for (const auto& p : poles_) {
      const Complex d = z - p.location;
      s.g *= std::pow(d, p.multiplicity);
      s.dlog += static_cast<double>(p.multiplicity) / d;
    }
    return s;
  }

 private:
  const FunctionHandle& f_;
  Complex a_;
  PointList poles_;
};

/// Extremes of |g| seen along a contour.
struct ModulusRange {
  double min = kInf;
  double max = 0.0;
  Complex min_at{};

  void see(const Cleared::Sample& s) {
    const double m = std::abs(s.g);
    if (!(m >= min)) {
      min = m;
      min_at = s.z;
    }
    max = std::max(max, m);
  }
  void merge(const ModulusRange& o) {
    if (o.min < min) {
      min = o.min;
      min_at = o.min_at;
    }
    max = std::max(max, o.max);
  }
  void check(double tolerance) const {
    if (!(min > tolerance * max)) {
      throw NumericError(ErrorKind::BoundaryObstruction,
                         "f - a nearly vanishes on the contour near " + describe(min_at), min_at);
    }
  }
};

using Path = std::function<Complex(double)>;

/// Change of arg g along path(u), u in [0, 1]. Pieces are bisected until the
/// principal-argument increment is below pi/4, agrees with the trapezoid
/// integral of g'/g, and the piece is short against |g/g'| at both ends.
struct Tracker {
  const Cleared& g;
  ModulusRange range;
  int evaluations = 0;

  Cleared::Sample eval(Complex z) {
    Cleared::Sample s = g.at(z);
    ++evaluations;
    range.see(s);
    return s;
  }

  double segment(const Path& path, double u0, const Cleared::Sample& s0, double u1,
                 const Cleared::Sample& s1, int depth) {
    const double d = std::arg(s1.g / s0.g);
    const Complex predicted = 0.5 * (s0.dlog + s1.dlog) * (s1.z - s0.z);
    const bool finite = std::isfinite(predicted.imag()) && std::isfinite(d);
    // |g/g'| approximates the distance to the nearest zero; a step longer
    // than half of it can alias a zero passing close to the segment.
    const double reach = 0.5 * std::min(1.0 / std::abs(s0.dlog), 1.0 / std::abs(s1.dlog));
    if (finite && std::abs(s1.z - s0.z) <= reach && std::abs(d) <= kPi / 4 &&
        std::abs(d - predicted.imag()) <= 0.2) {
      return d;
    }
    if (depth >= 64 || !finite || u1 - u0 < 1e-15) {
      throw NumericError(ErrorKind::BoundaryObstruction,
                         "argument tracking cannot resolve the contour near " + describe(s0.z), s0.z);
    }
    const double um = 0.5 * (u0 + u1);
    const Cleared::Sample sm = eval(path(um));
    return segment(path, u0, s0, um, sm, depth + 1) + segment(path, um, sm, u1, s1, depth + 1);
  }

  double track(const Path& path, int pieces) {
    double total = 0.0;
    Cleared::Sample s0 = eval(path(0.0));
    for (int p = 0; p < pieces; ++p) {
      const double u0 = static_cast<double>(p) / pieces;
      const double u1 = p + 1 == pieces ? 1.0 : static_cast<double>(p + 1) / pieces;
      const Cleared::Sample s1 = eval(path(u1));
      total += segment(path, u0, s0, u1, s1, 0);
      s0 = s1;
    }
    return total;
  }
};

WindingResult trapezoid_winding(const Cleared& g, const DiskSpec& disk, const WindingOptions& options,
                                bool& capped) {
  const Complex c = disk.center;
  const double r = disk.radius;
  int m = std::max(8, options.min_nodes / 2);
  std::vector<Cleared::Sample> samples;
  ModulusRange range;
  for (int j = 0; j < m; ++j) {
    samples.push_back(g.at(circle_node(c, r, 0.0, j, m)));
    range.see(samples.back());
  }
  auto integral = [&](const std::vector<Cleared::Sample>& s) {
    Complex sum{};
    for (const auto& x : s) sum += x.dlog * (x.z - c);
    return sum / static_cast<double>(s.size());
  };
  range.check(options.boundary_tolerance);
  Complex previous = integral(samples);
  capped = false;
  while (true) {
    const int next = 2 * m;
    std::vector<Cleared::Sample> refined;
    refined.reserve(next);
    for (int j = 0; j < m; ++j) {
      refined.push_back(samples[j]);
      refined.push_back(g.at(circle_node(c, r, 0.0, 2 * j + 1, next)));
      range.see(refined.back());
    }
    range.check(options.boundary_tolerance);
    samples.swap(refined);
    m = next;
    const Complex current = integral(samples);
    const double n = std::round(current.real());
    const double change = std::abs(current - previous);
    const double off = std::abs(current - Complex(n, 0.0));
    previous = current;
    if (m >= options.min_nodes && change < 0.05 && off <= options.snap_threshold && n >= 0.0) {
      WindingResult w;
      w.count = static_cast<int>(n);
      w.contour_error = change;
      w.disk = disk;
      w.raw = current;
      w.nodes = m;
      w.method = "trapezoid";
      return w;
    }
    if (m >= options.max_nodes) {
      capped = true;
      return {};
    }
  }
}

WindingResult tracking_winding(const Cleared& g, const DiskSpec& disk, const WindingOptions& options) {
  Tracker tracker{g, {}};
  const Complex c = disk.center;
  const double r = disk.radius;
  const Path circle = [c, r](double u) { return c + std::polar(r, kTwoPi * u); };
  const double total = tracker.track(circle, 64) / kTwoPi;
  tracker.range.check(options.boundary_tolerance);
  const double n = std::round(total);
  if (std::abs(total - n) > options.snap_threshold || n < 0.0) {
    throw NumericError(ErrorKind::NonConvergence, "argument tracking gave a non-integer winding");
  }
  WindingResult w;
  w.count = static_cast<int>(n);
  w.contour_error = std::abs(total - n);
  w.disk = disk;
  w.raw = Complex(total, 0.0);
  w.nodes = tracker.evaluations;
  w.method = "argument-tracking";
  return w;
}

}  // namespace

WindingResult winding_count(const FunctionHandle& f, Complex a, const DiskSpec& disk,
                            const WindingOptions& options) {
  validate(disk);
  require_finite(a, "a");
  const Cleared g(f, a, disk);
  bool capped = false;
  WindingResult w = trapezoid_winding(g, disk, options, capped);
  if (!capped) return w;
  return tracking_winding(g, disk, options);
}

WindingResult winding_by_tracking(const FunctionHandle& f, Complex a, const DiskSpec& disk,
                                  const WindingOptions& options) {
  validate(disk);
  require_finite(a, "a");
  const Cleared g(f, a, disk);
  return tracking_winding(g, disk, options);
}

WindingResult winding_count_jittered(const FunctionHandle& f, Complex a, const DiskSpec& disk,
                                     const WindingOptions& options) {
  try {
    return winding_count(f, a, disk, options);
  } catch (const NumericError& e) {
    if (e.kind() != ErrorKind::BoundaryObstruction) throw;
  }
  for (double j : options.jitter) {
    DiskSpec adjusted{disk.center, disk.radius * (1.0 + j)};
    try {
      WindingResult w = winding_count(f, a, adjusted, options);
      w.jittered = true;
      return w;
    } catch (const NumericError& e) {
      if (e.kind() != ErrorKind::BoundaryObstruction) throw;
    }
  }
  throw NumericError(ErrorKind::BoundaryObstruction, "boundary obstruction persists through radius jitter");
}

namespace {

/// Polar sector {r0 <= |z - c| <= r1, th0 <= arg(z - c) <= th1}. r0 = 0 is a
/// pie slice; th1 - th0 = 2 pi with r0 = 0 is the whole disk.
struct Sector {
  double r0, r1, th0, th1;
  int count = 0;
  int depth = 0;

  bool full() const { return th1 - th0 >= kTwoPi * (1.0 - 1e-15); }
  double diameter() const {
    const double span = th1 - th0;
    const double chord = span >= kPi ? 2.0 * r1 : 2.0 * r1 * std::sin(0.5 * span);
    return (r1 - r0) + chord;
  }
};

/// Split fractions tried in order; offset from 1/2 so that symmetric test
/// functions do not put a-points on the first split line.
constexpr double kSplit[] = {0.5123, 0.4871, 0.5379, 0.4617, 0.5631, 0.4369, 0.5917, 0.4083};
constexpr double kRootPhase[] = {0.3217, 0.4519, 0.1873, 0.6011, 0.0731, 0.7293};

class Locator {
 public:
  Locator(const FunctionHandle& f, Complex a, const DiskSpec& disk, double tol, const LocateOptions& options)
      : f_(f), a_(a), disk_(disk), tol_(tol), options_(options), g_(f, a, disk) {}

  PointList run(int total) {
    Sector root{0.0, disk_.radius, 0.0, kTwoPi, total, 0};
    if (total > 0) process(root);
    PointList merged = merge_points(points_, 1e-8);
    if (total_multiplicity(merged) != total) {
      std::ostringstream os;
      os << "locate_a_points: located multiplicity " << total_multiplicity(merged)
         << " differs from winding count " << total;
      throw NumericError(ErrorKind::NonConvergence, os.str());
    }
    return merged;
  }

 private:
  struct EdgeResult {
    double phase;
    ModulusRange range;
  };

  // Phase change along a canonical edge, cached so neighbouring cells share it.
  const EdgeResult& radial(double theta, double lo, double hi) {
    const auto key = std::make_tuple(0, theta, lo, hi);
    auto it = edges_.find(key);
    if (it != edges_.end()) return it->second;
    const Complex c = disk_.center;
    const Path path = [=](double u) {
      const double rr = u >= 1.0 ? hi : lo + u * (hi - lo);
      return c + std::polar(rr, theta);
    };
    Tracker tracker{g_, {}};
    const double phase = tracker.track(path, 4);
    return edges_.emplace(key, EdgeResult{phase, tracker.range}).first->second;
  }

  const EdgeResult& arc(double r, double lo, double hi) {
    const auto key = std::make_tuple(1, r, lo, hi);
    auto it = edges_.find(key);
    if (it != edges_.end()) return it->second;
    const Complex c = disk_.center;
    const Path path = [=](double u) {
      const double th = u >= 1.0 ? hi : lo + u * (hi - lo);
      return c + std::polar(r, th);
    };
    Tracker tracker{g_, {}};
    const int pieces = std::max(2, static_cast<int>(std::ceil((hi - lo) / (kPi / 16))));
    const double phase = tracker.track(path, pieces);
    return edges_.emplace(key, EdgeResult{phase, tracker.range}).first->second;
  }

  int count(const Sector& s) {
    double total = 0.0;
    ModulusRange range;
    auto add = [&](const EdgeResult& e, double sign) {
      total += sign * e.phase;
      range.merge(e.range);
    };
    if (s.r0 == 0.0 && s.full()) {
      add(arc(s.r1, s.th0, s.th1), 1.0);
    } else {
      add(radial(s.th0, s.r0, s.r1), 1.0);
      add(arc(s.r1, s.th0, s.th1), 1.0);
      add(radial(s.th1, s.r0, s.r1), -1.0);
      if (s.r0 > 0.0) add(arc(s.r0, s.th0, s.th1), -1.0);
    }
    range.check(options_.winding.boundary_tolerance);
    const double w = total / kTwoPi;
    const double n = std::round(w);
    if (std::abs(w - n) > options_.winding.snap_threshold || n < 0.0) {
      throw NumericError(ErrorKind::NonConvergence, "sector winding is not an integer");
    }
    return static_cast<int>(n);
  }

  std::vector<Sector> split(const Sector& s, int attempt) {
    std::vector<Sector> out;
    if (s.r0 == 0.0 && s.full()) {
      const double phase = kRootPhase[attempt];
      for (int k = 0; k < 4; ++k) {
        out.push_back(Sector{0.0, s.r1, phase + k * kPi / 2, phase + (k + 1) * kPi / 2, 0, s.depth + 1});
      }
      return out;
    }
    const double f = kSplit[attempt];
    const double rm = s.r0 + f * (s.r1 - s.r0);
    const double tm = s.th0 + f * (s.th1 - s.th0);
    out.push_back(Sector{s.r0, rm, s.th0, tm, 0, s.depth + 1});
    out.push_back(Sector{s.r0, rm, tm, s.th1, 0, s.depth + 1});
    out.push_back(Sector{rm, s.r1, s.th0, tm, 0, s.depth + 1});
    out.push_back(Sector{rm, s.r1, tm, s.th1, 0, s.depth + 1});
    return out;
  }

  bool inside(const Sector& s, Complex z) const {
    const Complex w = z - disk_.center;
    const double r = std::abs(w);
    const double margin = 1e-12 * disk_.radius;
    if (r < s.r0 - margin || r > s.r1 + margin) return false;
    if (s.full() || r <= margin) return true;
    double th = std::arg(w);
    while (th < s.th0) th += kTwoPi;
    while (th >= s.th0 + kTwoPi) th -= kTwoPi;
    const double angular_margin = margin / std::max(r, margin);
    return th <= s.th1 + angular_margin || th >= s.th0 + kTwoPi - angular_margin;
  }

  Complex center(const Sector& s) const {
    const double r = s.r0 == 0.0 ? 0.5 * s.r1 : 0.5 * (s.r0 + s.r1);
    return disk_.center + std::polar(r, 0.5 * (s.th0 + s.th1));
  }

  /// Newton iteration z -= m (f - a) / f'. Converged when the step is at
  /// rounding level or |f - a| is within the evaluation error.
  std::optional<Complex> newton(Complex z, int multiplicity) const {
    for (int it = 0; it < options_.newton_iterations; ++it) {
      const Jet j = f_.jet(z);
      const Complex h = j.value.value - a_;
      if (std::abs(h) <= 2.0 * j.value.abs_error) return z;
      const Complex step = static_cast<double>(multiplicity) * h / j.derivative.value;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
      z -= step;
      // A step that leaves the disk or the handle's domain is heading for
      // another root; subdivision takes over.
      const DiskSpec& domain = f_.domain();
      if (std::abs(z - disk_.center) > 1.25 * disk_.radius || !(std::abs(z - domain.center) < domain.radius)) {
        return std::nullopt;
      }
      if (std::abs(step) <= 8.0 * kUnitRoundoff * std::max(1.0, std::abs(z))) return z;
    }
    return std::nullopt;
  }

  void process(const Sector& s) {
    if (s.count == 0) return;
    const bool small = s.diameter() < tol_;
    if (s.count == 1 || small) {
      const auto z = newton(center(s), s.count);
      if (z && inside(s, *z)) {
        points_.push_back(DivisorPoint{*z, s.count});
        return;
      }
      if (small) {
        points_.push_back(DivisorPoint{center(s), s.count});
        return;
      }
    }
    if (s.depth >= options_.max_depth) {
      throw NumericError(ErrorKind::NonConvergence, "locate_a_points: subdivision depth exhausted",
                         center(s));
    }
    const int attempts = s.r0 == 0.0 && s.full() ? static_cast<int>(std::size(kRootPhase))
                                                 : static_cast<int>(std::size(kSplit));
    for (int attempt = 0; attempt < attempts; ++attempt) {
      std::vector<Sector> children = split(s, attempt);
      int sum = 0;
      try {
        for (auto& child : children) {
          child.count = count(child);
          sum += child.count;
        }
      } catch (const NumericError& e) {
        if (e.kind() != ErrorKind::BoundaryObstruction && e.kind() != ErrorKind::NonConvergence) throw;
        continue;
      }
      if (sum != s.count) continue;
      for (const auto& child : children) process(child);
      return;
    }
    throw NumericError(ErrorKind::NonConvergence, "locate_a_points: no consistent subdivision", center(s));
  }

  const FunctionHandle& f_;
  Complex a_;
  DiskSpec disk_;
  double tol_;
  LocateOptions options_;
  Cleared g_;
  std::map<std::tuple<int, double, double, double>, EdgeResult> edges_;
  PointList points_;
};

}  // namespace

PointList locate_a_points(const FunctionHandle& f, Complex a, const DiskSpec& disk, double tol,
                          const LocateOptions& options) {
  validate(disk);
  if (!(tol > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "locate_a_points: tol must be positive");
  const WindingResult w = winding_count(f, a, disk, options.winding);
  Locator locator(f, a, disk, tol, options);
  return locator.run(w.count);
}

LocateResult locate_a_points_jittered(const FunctionHandle& f, Complex a, const DiskSpec& disk, double tol,
                                      const LocateOptions& options) {
  try {
    return LocateResult{locate_a_points(f, a, disk, tol, options), disk, false};
  } catch (const NumericError& e) {
    if (e.kind() != ErrorKind::BoundaryObstruction) throw;
  }
  for (double j : options.winding.jitter) {
    const DiskSpec moved{disk.center, disk.radius * (1.0 + j)};
    if (!f.domain().contains_circle(moved.center, moved.radius)) continue;
    try {
      return LocateResult{locate_a_points(f, a, moved, tol, options), moved, true};
    } catch (const NumericError& e) {
      if (e.kind() != ErrorKind::BoundaryObstruction) throw;
    }
  }
  throw NumericError(ErrorKind::BoundaryObstruction, "boundary obstruction persists through radius jitter");
}

}  // namespace nevlab
