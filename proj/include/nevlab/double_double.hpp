#pragma once

// Double-double arithmetic and compensated accumulation.
//
// The error-free transformations follow Joldes, Muller, Popescu (2017).
// A DD value is the unevaluated sum hi + lo with |lo| <= ulp(hi)/2.

#include <cmath>
#include <complex>

namespace nevlab {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD fast_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = fast_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return fast_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, double b) {
  DD p = two_prod(a.hi, b);
  p.lo = std::fma(a.lo, b, p.lo);
  return fast_two_sum(p.hi, p.lo);
}

inline DD operator*(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return fast_two_sum(p.hi, p.lo);
}

inline DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  const double q2 = r.hi / b.hi;
  r = r - b * q2;
  const double q3 = r.hi / b.hi;
  return DD(fast_two_sum(q1, q2)) + DD(q3);
}

inline DD ldexp(DD a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }

/// exp and log accurate to a few units of 2^-104 relative.
DD dd_exp(DD x);
DD dd_log(DD x);

inline constexpr DD kDDTwoPi{6.283185307179586232e+00, 2.449293598294706414e-16};
inline constexpr DD kDDLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

/// Reduces a double-double angle to [-pi, pi] and returns (cos, sin).
/// The reduction is exact to about |x| * 2^-104; the trigonometric
/// evaluation adds at most a couple of ulps.
std::complex<double> dd_unit_phase(DD x);

/// Neumaier's variant of Kahan summation. The result is within
/// 2u|sum| + O(n u^2) sum|x_i| of the exact sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

}  // namespace nevlab
