#include "nevlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "nevlab/double_double.hpp"

namespace nevlab {

Complex circle_node(Complex center, double r, double phase, int j, int m) {
  return center + std::polar(r, phase + kTwoPi * static_cast<double>(j) / static_cast<double>(m));
}

QuadResult circle_mean(const std::function<double(Complex)>& g, Complex center, double r, double target,
                       const CircleQuadOptions& options,
                       std::vector<std::pair<Complex, double>>* samples) {
  if (!(r > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "circle_mean: radius must be positive");
  if (!(target > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "circle_mean: target must be positive");
  int m = std::max(4, options.min_nodes / 2);
  std::vector<Complex> points(m);
  std::vector<double> values(m);
  for (int j = 0; j < m; ++j) {
    points[j] = circle_node(center, r, options.phase, j, m);
    values[j] = g(points[j]);
  }
  auto mean = [](const std::vector<double>& v) {
    CompensatedSum s;
    for (double x : v) s.add(x);
    return s.value() / static_cast<double>(v.size());
  };
  QuadResult result;
  double previous = mean(values);
  result.evaluations = m;
  while (true) {
    const int next = 2 * m;
    std::vector<Complex> np(next);
    std::vector<double> nv(next);
    for (int j = 0; j < m; ++j) {
      np[2 * j] = points[j];
      nv[2 * j] = values[j];
      np[2 * j + 1] = circle_node(center, r, options.phase, 2 * j + 1, next);
      nv[2 * j + 1] = g(np[2 * j + 1]);
    }
    result.evaluations += m;
    points.swap(np);
    values.swap(nv);
    m = next;
    const double current = mean(values);
    result.value = current;
    result.error = std::abs(current - previous);
    previous = current;
    if (m >= options.min_nodes && result.error < target) {
      result.converged = true;
      break;
    }
    if (m >= options.max_nodes) break;
  }
  if (samples) {
    samples->clear();
    for (int j = 0; j < m; ++j) samples->emplace_back(points[j], values[j]);
  }
  return result;
}

namespace {

// Kronrod 15-point nodes/weights with the embedded 7-point Gauss weights.
constexpr double kXk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                           0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                           0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                           0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                           0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                           0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                           0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval kronrod(const std::function<double(double)>& g, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = g(c);
  double k = kWk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double f1 = g(c - h * kXk[i]);
    const double f2 = g(c + h * kXk[i]);
    k += kWk[i] * (f1 + f2);
    if (i % 2 == 1) gauss += kWg[i / 2] * (f1 + f2);
  }
  return Interval{a, b, k * h, std::abs((k - gauss) * h)};
}

}  // namespace

QuadResult gauss_kronrod(const std::function<double(double)>& g, double a, double b, double target,
                         int max_intervals) {
  if (!(target > 0.0)) throw NumericError(ErrorKind::InvalidArgument, "gauss_kronrod: target must be positive");
  QuadResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Interval> heap;
  heap.push(kronrod(g, a, b));
  result.evaluations = 15;
  double total_error = heap.top().error;
  int intervals = 1;
  while (total_error >= target && intervals < max_intervals) {
    const Interval worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      heap.push(worst);
      break;
    }
    const Interval left = kronrod(g, worst.a, mid);
    const Interval right = kronrod(g, mid, worst.b);
    result.evaluations += 30;
    heap.push(left);
    heap.push(right);
    ++intervals;
    total_error += left.error + right.error - worst.error;
  }
  CompensatedSum sum;
  double err = 0.0;
  while (!heap.empty()) {
    sum.add(heap.top().value);
    err += heap.top().error;
    heap.pop();
  }
  result.value = sum.value();
  result.error = err;
  result.converged = err < target;
  return result;
}

}  // namespace nevlab
