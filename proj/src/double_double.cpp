#include "nevlab/double_double.hpp"

#include <limits>

namespace nevlab {

DD dd_exp(DD x) {
  if (x.hi > 709.0) return {std::numeric_limits<double>::infinity(), 0.0};
  if (x.hi < -745.0) return {0.0, 0.0};

  // x = k ln2 + r with |r| <= ln2/2, then exp(r) = exp(r / 2^10)^(2^10).
  const double k = std::nearbyint(x.hi / kDDLn2.hi);
  DD r = x - kDDLn2 * k;
  r = ldexp(r, -8);

  // expm1 by Taylor series (|r| < 1.4e-3, fourteen terms reach 2^-110),
  // then (1 + s)^2 = 1 + (2s + s^2) keeps the squarings on expm1 so the
  // rounding is not amplified by the doubling.
  DD term = r;
  DD s = r;
  for (int n = 2; n <= 14; ++n) {
    term = term * r;
    term = term / DD(static_cast<double>(n));
    s = s + term;
  }
  for (int i = 0; i < 8; ++i) s = s * 2.0 + s * s;
  const DD sum = DD(1.0) + s;
  return ldexp(sum, static_cast<int>(k));
}

DD dd_log(DD x) {
  if (!(x.hi > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), 0.0};
  // One Newton step on exp(y) = x from a double start doubles the digits.
  const DD y0(std::log(x.hi));
  return y0 + x * dd_exp(-y0) - DD(1.0);
}

std::complex<double> dd_unit_phase(DD x) {
  const double k = std::nearbyint(x.hi / kDDTwoPi.hi);
  double r_hi = x.hi;
  double r_lo = x.lo;
  if (k != 0.0) {
    const DD p = two_prod(k, kDDTwoPi.hi);
    // Sterbenz: x.hi and p.hi are within a factor two, the difference is exact.
    r_hi = x.hi - p.hi;
    r_lo = (x.lo - p.lo) - k * kDDTwoPi.lo;
  }
  const DD r = two_sum(r_hi, r_lo);
  const double c = std::cos(r.hi);
  const double s = std::sin(r.hi);
  return {c - r.lo * s, s + r.lo * c};
}

}  // namespace nevlab
