#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "nevlab/function_handle.hpp"
#include "nevlab/types.hpp"

namespace nevlab::testing {

/// splitmix64; fixed seeds keep every generated suite reproducible across
/// platforms (std distributions are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
  /// Uniform in the annulus r_lo <= |z| <= r_hi.
  Complex in_annulus(double r_lo, double r_hi) {
    const double r = std::sqrt(uniform(r_lo * r_lo, r_hi * r_hi));
    return std::polar(r, uniform(0.0, kTwoPi));
  }

 private:
  std::uint64_t state_;
};

/// Points scattered in |z| < outer but at least `gap` away from the circle
/// |z| = avoid and from the origin.
inline PointList random_divisor(Rng& rng, int count, double outer, double avoid, double gap) {
  PointList points;
  while (static_cast<int>(points.size()) < count) {
    const Complex z = rng.in_annulus(gap, outer);
    if (std::abs(std::abs(z) - avoid) < gap) continue;
    points.push_back({z, rng.integer(1, 2)});
  }
  return points;
}

inline int count_inside(const PointList& points, Complex center, double r) {
  int n = 0;
  for (const auto& p : points)
    if (std::abs(p.location - center) < r) n += p.multiplicity;
  return n;
}

// Cohen-Villegas-Zagier acceleration of the alternating eta series. Shares
// nothing with the Euler-Maclaurin code; the truncation error is about
// (3 + sqrt 8)^-n e^(pi |t| / 2), negligible for n = 60 and |t| < 40.
inline Complex zeta_eta_oracle(Complex s, int n = 60) {
  double d = std::pow(3.0 + std::sqrt(8.0), n);
  d = (d + 1.0 / d) / 2.0;
  double b = -1.0;
  double c = -d;
  Complex sum = 0.0;
  for (int k = 0; k < n; ++k) {
    c = b - c;
    sum += c * std::pow(Complex(k + 1.0), -s);
    b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
  }
  const Complex eta = sum / d;
  return eta / (1.0 - std::pow(Complex(2.0), 1.0 - s));
}

// Riemann-Siegel theta by its Stirling series; plenty for t > 10.
inline double rs_theta(double t) {
  return t / 2.0 * std::log(t / kTwoPi) - t / 2.0 - kPi / 8.0 + 1.0 / (48.0 * t) +
         7.0 / (5760.0 * t * t * t);
}

inline double hardy_z(double t) {
  return (std::exp(Complex(0.0, rs_theta(t))) * zeta_eta_oracle(Complex(0.5, t))).real();
}

// First sign change of Z on a coarse grid, refined by bisection.
inline double first_zero_ordinate() {
  double lo = 10.0;
  double step = 0.05;
  while (hardy_z(lo) * hardy_z(lo + step) > 0) lo += step;
  double hi = lo + step;
  for (int i = 0; i < 60; ++i) {
    const double mid = (lo + hi) / 2;
    (hardy_z(lo) * hardy_z(mid) <= 0 ? hi : lo) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace nevlab::testing
