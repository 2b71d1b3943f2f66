#include "nevlab/types.hpp"

#include <cmath>
#include <sstream>

namespace nevlab {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid_argument";
    case ErrorKind::Pole: return "pole";
    case ErrorKind::PrecisionExhausted: return "precision_exhausted";
    case ErrorKind::ConvergenceTooSlow: return "convergence_too_slow";
    case ErrorKind::BranchObstruction: return "branch_obstruction";
    case ErrorKind::BoundaryObstruction: return "boundary_obstruction";
    case ErrorKind::NonConvergence: return "non_convergence";
    case ErrorKind::Precondition: return "precondition";
  }
  return "unknown";
}

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    std::ostringstream os;
    os << what << " is not finite";
    throw NumericError(ErrorKind::InvalidArgument, os.str());
  }
}

}  // namespace nevlab
