#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "nevlab/types.hpp"

namespace nevlab {

struct QuadResult {
  double value = 0.0;
  /// Estimated absolute error: difference of the last two trapezoid levels,
  /// or the summed Kronrod-Gauss differences.
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct CircleQuadOptions {
  int min_nodes = 64;
  int max_nodes = 1 << 16;
  /// Angle of node 0. Nodes are center + r exp(i (phase + 2 pi j / M)).
  double phase = 0.0;
};

/// Node j of an M-point trapezoid rule on a circle.
Complex circle_node(Complex center, double r, double phase, int j, int m);

/// Mean of g over the circle |z - center| = r by the trapezoid rule, with
/// node doubling until successive estimates differ by less than `target`.
/// If `samples` is given it receives every (node, g(node)) of the final level.
QuadResult circle_mean(const std::function<double(Complex)>& g, Complex center, double r, double target,
                       const CircleQuadOptions& options = {},
                       std::vector<std::pair<Complex, double>>* samples = nullptr);

/// Adaptive 15-point Kronrod rule (embedded 7-point Gauss) on [a, b],
/// bisecting the worst interval until the summed error estimate is below
/// `target` or `max_intervals` is reached.
QuadResult gauss_kronrod(const std::function<double(double)>& g, double a, double b, double target,
                         int max_intervals = 4000);

}  // namespace nevlab
