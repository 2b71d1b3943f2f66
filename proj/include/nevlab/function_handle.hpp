#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nevlab/types.hpp"
#include "nevlab/zeta.hpp"

namespace nevlab {

/// Closed disk. An infinite radius stands for the whole plane.
struct DiskSpec {
  Complex center{};
  double radius = 1.0;

  bool contains_circle(Complex circle_center, double r) const {
    return std::abs(circle_center - center) + r <= radius;
  }
  bool strictly_contains_circle(Complex circle_center, double r) const {
    return std::abs(circle_center - center) + r < radius;
  }
};

void validate(const DiskSpec& disk);

struct DivisorPoint {
  Complex location{};
  int multiplicity = 1;
};

/// Zeros, poles or a-points with multiplicity.
using PointList = std::vector<DivisorPoint>;

/// Merges entries closer than `tolerance`, adding multiplicities. The merged
/// location is the multiplicity-weighted mean. Output is sorted by
/// (real, imag) so results do not depend on discovery order.
PointList merge_points(PointList points, double tolerance = 1e-8);

int total_multiplicity(const PointList& points);

/// f(z) and f'(z) with their error bounds.
struct Jet {
  EvalResult value;
  EvalResult derivative;
};

/// A black-box analytic or meromorphic function on a disk. Evaluators must be
/// safe to call concurrently and must honour the requested absolute error.
class FunctionHandle {
 public:
  using Evaluator = std::function<EvalResult(Complex, double)>;
  using JetEvaluator = std::function<Jet(Complex, double)>;

  FunctionHandle(std::string name, Evaluator evaluator, DiskSpec domain);

  FunctionHandle& with_derivative(Evaluator derivative);
  /// Joint value/derivative evaluator, used when cheaper than two calls.
  FunctionHandle& with_jet(JetEvaluator jet);
  FunctionHandle& with_poles(PointList poles);
  /// Absolute accuracy requested by the algorithms in this library.
  FunctionHandle& with_eval_target(double target);

  const std::string& name() const { return name_; }
  const DiskSpec& domain() const { return domain_; }
  const std::optional<PointList>& declared_poles() const { return poles_; }
  double eval_target() const { return eval_target_; }
  bool has_derivative() const { return static_cast<bool>(derivative_) || static_cast<bool>(jet_); }

  EvalResult value(Complex z) const { return value(z, eval_target_); }
  EvalResult value(Complex z, double target) const;
  EvalResult derivative(Complex z) const;
  /// Value and derivative. Without a derivative evaluator the derivative is
  /// a central difference with a heuristic error estimate.
  Jet jet(Complex z) const;

  /// Poles declared strictly inside the circle |z - center| < r.
  PointList poles_inside(Complex center, double r) const;

 private:
  std::string name_;
  Evaluator evaluator_;
  Evaluator derivative_;
  JetEvaluator jet_;
  DiskSpec domain_;
  std::optional<PointList> poles_;
  double eval_target_ = 1e-13;
};

/// Standard test and audit functions.
namespace handles {

inline constexpr double kWholePlane = std::numeric_limits<double>::infinity();

FunctionHandle constant(Complex c);
FunctionHandle identity();
/// scale * exp(rate * z)
FunctionHandle exponential(Complex scale = 1.0, Complex rate = 1.0);
/// leading * prod (z - root)^multiplicity
FunctionHandle polynomial(const PointList& roots, Complex leading = 1.0);
/// gain * prod (z - a)^m / prod (z - b)^k, poles declared.
FunctionHandle rational(const PointList& zeros, const PointList& poles, Complex gain = 1.0);

/// z -> zeta(z + 4 + i t). Domain radius 4.9 keeps Re s > -0.9.
FunctionHandle zeta_shift(double t, const ZetaOptions& options = {}, double eval_target = 1e-10);

/// Caches jets by exact evaluation point. Used where several algorithms
/// sample the same nodes of an expensive function.
FunctionHandle memoized(const FunctionHandle& inner);

/// A branch of log g on `domain`, fixed by log g(anchor) = anchor_log.
///
/// Each point is reached by continuing log g along a straight segment from
/// the nearest point already evaluated. All such paths give the same branch
/// when g has no zero in the domain; callers verify that first. A zero met
/// on a path raises BranchObstruction.
FunctionHandle log_of(const FunctionHandle& g, Complex anchor, Complex anchor_log, DiskSpec domain,
                      std::string name, double eval_target = 1e-9);

/// z -> log zeta(z + 4 + i t) on the branch continued from Re s = +inf,
/// anchored at Re s = 6 where the series value is principal. The domain
/// must stay inside Re s > 1/2.
FunctionHandle log_zeta_shift(double t, double domain_radius, const ZetaOptions& options = {},
                              double eval_target = 1e-9, double zeta_target = 1e-11);

/// As log_zeta_shift, reusing an existing zeta_shift handle (typically a
/// memoized one shared with other checks at the same t).
FunctionHandle log_zeta_shift_over(const FunctionHandle& zeta, double t, double domain_radius,
                                   const ZetaOptions& options = {}, double eval_target = 1e-9);

}  // namespace handles

}  // namespace nevlab
