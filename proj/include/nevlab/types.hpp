#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace nevlab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 6.283185307179586476925286766559005768;
/// Unit roundoff of binary64.
inline constexpr double kUnitRoundoff = 0x1p-53;

/// How a value was produced. Filled by the evaluators that have meaningful
/// knobs (series cutoffs, correction orders, continuation steps).
struct Provenance {
  std::string method;
  std::int64_t cutoff = 0;
  int correction_order = 0;
  int steps = 0;
  bool double_double = false;
};

/// A complex value together with a bound on its absolute error.
struct EvalResult {
  Complex value{};
  double abs_error = 0.0;
  Provenance provenance{};
};

enum class ErrorKind {
  InvalidArgument,
  Pole,
  PrecisionExhausted,
  ConvergenceTooSlow,
  BranchObstruction,
  BoundaryObstruction,
  NonConvergence,
  Precondition,
};

const char* to_string(ErrorKind kind);

/// Every numerical failure is reported through this exception. `location`
/// carries the offending point when one exists (a zero on a continuation
/// path, an a-point on a contour).
class NumericError : public std::runtime_error {
 public:
  NumericError(ErrorKind kind, const std::string& what,
               std::optional<Complex> location = std::nullopt)
      : std::runtime_error(what), kind_(kind), location_(location) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Complex>& location() const noexcept { return location_; }

 private:
  ErrorKind kind_;
  std::optional<Complex> location_;
};

/// Throws unless both parts of `z` are finite.
void require_finite(Complex z, const char* what);

}  // namespace nevlab
