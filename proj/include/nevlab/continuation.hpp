#pragma once

#include <functional>
#include <utility>

#include "nevlab/types.hpp"

namespace nevlab {

/// An analytic function sampled together with its derivative.
using JetFunction = std::function<std::pair<Complex, Complex>(Complex)>;

struct ContinuationOptions {
  double initial_step = 0.25;
  double max_step = 1.0;
  double min_step = 1e-9;
  /// |g| below this on the path is treated as a zero of g.
  double obstruction_threshold = 1e-8;
  /// Largest accepted change of log g per step.
  double max_increment = kPi / 2;
  /// Largest accepted disagreement between the principal-log increment and
  /// the trapezoidal integral of g'/g over the step.
  double max_prediction_error = 0.25;
};

struct ContinuationResult {
  /// Sum of principal Log(g(z_{i+1}) / g(z_i)) over the accepted steps.
  Complex log_increment{};
  Complex end_value{};
  Complex end_derivative{};
  int steps = 0;
};

/// Continues log g along the segment [from, to]. `start` is the already
/// known (g, g') at `from`.
ContinuationResult continue_log(const JetFunction& g, Complex from, Complex to,
                                std::pair<Complex, Complex> start,
                                const ContinuationOptions& options = {});

/// Integer k with branch_log = Log(value) + 2 pi i k, where branch_log is
/// the continued value. `continued_imag` is the imaginary part of the
/// continued logarithm at the same point.
int branch_index(double continued_imag, Complex value);

}  // namespace nevlab
