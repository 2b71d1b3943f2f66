#pragma once

#include "nevlab/function_handle.hpp"
#include "nevlab/quadrature.hpp"
#include "nevlab/verdict.hpp"
#include "nevlab/zeros.hpp"

namespace nevlab {

/// log+ of |f| averaged over |z| = r, with quadrature error. Always about
/// the origin, as in the definitions of m, N and T.
struct ProximityResult {
  double value = 0.0;
  double quad_error = 0.0;
  int evaluations = 0;
  /// Points on the circle where |f| crosses 1.
  int crossings = 0;
};

/// m(r, f). Trapezoid rule with node doubling while |f| stays on one side
/// of 1; otherwise the crossings of |f| = 1 are located and log|f| is
/// integrated over the arcs where it is positive by adaptive Gauss-Kronrod,
/// so the kinks of log+ never sit inside a quadrature panel. Throws
/// NonConvergence when the target is not met.
ProximityResult proximity_m(const FunctionHandle& f, double r, double target_err);

/// N(r) of a divisor: sum m log(r / |a|) over nonzero locations plus
/// n_at_zero log r. Entries at the origin are added to n_at_zero.
double counting_N(const PointList& divisor, int n_at_zero, double r);

struct CharacteristicReport {
  double r = 0.0;
  double m = 0.0;
  double N = 0.0;
  double T = 0.0;
  double quad_error = 0.0;
  int n_at_zero = 0;
};

/// T(r, f) = m(r, f) + N(r, f). Poles come from the handle's declaration; a
/// handle without declared poles is analytic.
CharacteristicReport characteristic_T(const FunctionHandle& f, double r, double target_err);

struct MaxModulusResult {
  double value = 0.0;
  double angle = 0.0;
  double refinement_tol = 1e-10;
  /// Evaluation error of |f| at the reported maximum.
  double eval_error = 0.0;
  int evaluations = 0;
};

/// max |f| on |z| = r by dense sampling plus golden-section refinement of
/// the best few local maxima. A lower estimate of the true maximum.
MaxModulusResult max_modulus(const FunctionHandle& f, double r, int nodes = 4096);

/// Mean of log|f| over |z - center| = r. Trapezoid rule with doubling; when
/// it stalls or |f| nearly vanishes at a node the circle is split into arcs
/// integrated by adaptive Gauss-Kronrod. The error includes the evaluator's
/// relative error. Samples of the final trapezoid level are returned when
/// requested.
QuadResult circle_log_mean(const FunctionHandle& f, Complex center, double r, double target_err,
                           std::vector<std::pair<Complex, double>>* samples = nullptr);

struct JensenReport {
  double residual = 0.0;
  double log_abs_f0 = 0.0;
  double circle_average = 0.0;
  double zero_sum = 0.0;
  double pole_sum = 0.0;
  /// Quadrature plus evaluator error; the identity holds when
  /// residual <= error.
  double error = 0.0;
};

/// |log|f(0)| - (mean log|f| on |z| = rho - sum log(rho/|a|) + sum log(rho/|b|))|.
JensenReport jensen_residual(const FunctionHandle& f, double rho, const PointList& zeros,
                             const PointList& poles, Complex f_at_0, double target_err);

/// T(r) <= log+ M(r) <= ((rho + r)/(rho - r)) T(rho) for f analytic in
/// |z| < rho. The verdict reports the tighter of the two inequalities.
LemmaVerdict lemma1_check(const FunctionHandle& f, double r, double rho, double target_err = 1e-10);

/// |f(z) - f(z0)| <= (2r/(R - r)) (A(R) - Re f(z0)) on |z - z0| <= r with
/// A(R) = max Re f on |z - z0| = R, checked at `samples` points.
LemmaVerdict borel_caratheodory_check(const FunctionHandle& f, Complex z0, double R, double r, int samples);

struct SmtOptions {
  double target_err = 1e-9;
  double locate_tol = 1e-9;
  LocateOptions locate{};
};

/// T(r,f) < 2{N(R,1/f) + N(R,f) + N(R,1/(f-1))} + 4 log+|f(0)|
///          + 2 log+ 1/(R|f'(0)|) + 24 log(R/(R-r)) + 2328.
/// Counting functions use located zeros and 1-points and declared poles.
/// The domain must strictly contain the closed R-disk. On a boundary
/// obstruction R is jittered and the radius used is reported.
LemmaVerdict smt_check(const FunctionHandle& f, double R, double r, const SmtOptions& options = {});

}  // namespace nevlab
