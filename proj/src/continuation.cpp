#include "nevlab/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nevlab {

namespace {

[[noreturn]] void throw_obstruction(Complex where, const char* why) {
  std::ostringstream os;
  os << "branch obstruction at " << where.real() << (where.imag() < 0 ? "-" : "+")
     << std::abs(where.imag()) << "i: " << why;
  throw NumericError(ErrorKind::BranchObstruction, os.str(), where);
}

}  // namespace

ContinuationResult continue_log(const JetFunction& g, Complex from, Complex to,
                                std::pair<Complex, Complex> start,
                                const ContinuationOptions& options) {
  if (std::abs(start.first) < options.obstruction_threshold) {
    throw_obstruction(from, "|g| below threshold at the start point");
  }
  ContinuationResult result;
  result.end_value = start.first;
  result.end_derivative = start.second;

  const double length = std::abs(to - from);
  if (length == 0.0) return result;
  const Complex direction = (to - from) / length;

  double done = 0.0;
  double step = std::min(options.initial_step, length);
  auto current = start;
  while (done < length) {
    const double h = std::min(step, length - done);
    const bool last = done + h >= length;
    const Complex next_point = last ? to : from + direction * (done + h);
    const auto next = g(next_point);
    if (std::abs(next.first) < options.obstruction_threshold) {
      throw_obstruction(next_point, "|g| below threshold on the path");
    }
    const Complex increment = std::log(next.first / current.first);
    const Complex predicted =
        0.5 * h * direction * (current.second / current.first + next.second / next.first);
    if (std::abs(increment) > options.max_increment ||
        std::abs(increment - predicted) > options.max_prediction_error) {
      step = 0.5 * h;
      if (step < options.min_step) {
        throw_obstruction(from + direction * done, "step size underflow");
      }
      continue;
    }
    result.log_increment += increment;
    ++result.steps;
    current = next;
    done = last ? length : done + h;
    if (std::abs(increment) < 0.25 * options.max_increment) {
      step = std::min(options.max_step, 1.5 * h);
    }
  }
  result.end_value = current.first;
  result.end_derivative = current.second;
  return result;
}

int branch_index(double continued_imag, Complex value) {
  return static_cast<int>(std::lround((continued_imag - std::arg(value)) / kTwoPi));
}

}  // namespace nevlab
