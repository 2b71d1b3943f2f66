#pragma once

#include <cstdint>

#include "nevlab/types.hpp"

namespace nevlab {

enum class PrecisionMode {
  /// Plain binary64 phases. Large |t| loses ~|t| log n ulps per term; when
  /// that breaks the requested target the evaluator reports
  /// PrecisionExhausted instead of returning a weak bound.
  Double,
  /// Phases t log n are formed and reduced mod 2 pi in double-double once
  /// |t| exceeds `dd_threshold` (or whenever plain doubles fall short).
  DoubleDouble,
};

const char* to_string(PrecisionMode mode);
PrecisionMode precision_mode_from_string(const std::string& name);

struct ZetaOptions {
  PrecisionMode precision = PrecisionMode::DoubleDouble;
  double dd_threshold = 1e4;
  std::int64_t max_cutoff = 4'000'000;
  int max_correction_order = 90;
  /// Scale applied to the selected cutoff. Used by the honesty oracle
  /// (cutoff doubled) and otherwise left at 1.
  double cutoff_scale = 1.0;
  /// Return the value with its rounding bound instead of raising
  /// PrecisionExhausted when only rounding misses the target. The
  /// truncation part still meets it.
  bool accept_rounding_floor = false;
};

/// zeta(s) and zeta'(s) from one pass over the Dirichlet terms.
struct ZetaJet {
  EvalResult value;
  EvalResult derivative;
};

/// zeta(s) (order 0) or zeta'(s) (order 1) for Re s > -1, s != 1.
///
/// Uses either a plain truncated Dirichlet series with an integral tail
/// bound (Re s > 1, when that is cheaper) or Euler-Maclaurin summation with
/// the remainder bound |R_K| <= |s+2K+1| / (Re s+2K+1) * |first omitted term|.
/// The cutoff N and correction order K are chosen as the cheapest pair that
/// meets half the target; the other half is the rounding budget.
EvalResult zeta_em(Complex s, int derivative_order, double target_abs_err,
                   const ZetaOptions& options = {});

/// zeta(s) and zeta'(s). The value meets `target_abs_err`; the derivative
/// meets `derivative_target` (same as the value target when not positive).
/// Both errors are reported either way.
ZetaJet zeta_jet(Complex s, double target_abs_err, const ZetaOptions& options = {},
                 double derivative_target = 0.0);

struct LogZetaOptions {
  /// log_zeta_series requires Re s >= 1 + margin.
  double margin = 0.5;
  std::uint32_t table_limit = 1'000'000;
  ZetaOptions zeta{};
};

/// Principal log zeta(s) = sum Lambda(n) / (n^s log n). The tail beyond N is
/// bounded by sum_{n > N} n^{-Re s}; a target that needs more terms than the
/// Mangoldt table holds raises ConvergenceTooSlow.
EvalResult log_zeta_series(Complex s, double target_abs_err, const LogZetaOptions& options = {});

struct BranchTrackOptions {
  double anchor_sigma = 6.0;
  double obstruction_threshold = 1e-8;
  double initial_step = 0.25;
  double max_step = 1.0;
  double min_step = 1e-9;
  /// Accuracy used for intermediate zeta values; they only fix the branch.
  double path_target = 1e-7;
  LogZetaOptions log_series{};
};

/// The branch of log zeta obtained by continuing along the horizontal
/// segment from (anchor_sigma, t) to (sigma, t). Steps are halved until each
/// changes log zeta by less than pi/2 and agrees with the derivative
/// prediction; |zeta| below the obstruction threshold anywhere on the path
/// raises BranchObstruction with the location.
EvalResult log_zeta_tracked(double sigma, double t, double target_abs_err,
                            const BranchTrackOptions& options = {});

}  // namespace nevlab
