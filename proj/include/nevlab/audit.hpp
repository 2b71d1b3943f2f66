#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nevlab/ledger.hpp"
#include "nevlab/nevanlinna.hpp"
#include "nevlab/verdict.hpp"
#include "nevlab/zeta.hpp"

namespace nevlab {

using RealFunction = std::function<double(double)>;

struct TailCheckResult {
  double alpha_estimate = 0.0;
  double alpha_low = 0.0;
  double alpha_high = 0.0;
  /// max over integer xi of |sum - integral - alpha|
  double max_deviation = 0.0;
  double xi_max = 0.0;
  /// "lemma4.alpha" (alpha in [0, f(a)]) and "lemma4.deviation"
  /// (deviation <= f(xi - 1) at every integer xi).
  std::vector<LemmaVerdict> verdicts;
};

/// Sum-versus-integral tail check for a nonnegative nonincreasing f with
/// antiderivative F. Rejects samples that increase or go negative.
TailCheckResult audit_lemma4(const RealFunction& f, const RealFunction& antiderivative, double a, double xi_max);

/// The four bounds on zeta, zeta' and log zeta at s = 4 + it. Values are
/// computed to 1e-11; the verdict errors carry the reported bounds.
std::vector<LemmaVerdict> audit_lemma5(double t, const ZetaOptions& options = {});

struct Lemma6Result {
  LemmaVerdict verdict;
  double empirical_c1 = 0.0;
  double sigma_at_max = 0.0;
  double t_at_max = 0.0;
};

/// max |zeta(sigma + it)| / |t|^(1/2) over the grid, against c1.
Lemma6Result audit_lemma6(const std::vector<double>& sigma_samples, const std::vector<double>& t_samples,
                          double c1, const ZetaOptions& options = {});

/// Radii about 4 + it. Defaults are 7/2 - k delta.
struct AuditRadii {
  /// zeta must have no zero in this disk before log zeta is used.
  double zero_exclusion = 3.49;
  /// Circle for the max of |log zeta| and the Jensen disk for its zeros.
  double log_circle = 3.48;
  /// Disk in which 1-points of zeta are counted (also the SMT outer radius).
  double one_points = 3.48;
  /// Radius of the characteristic in the first theorem step.
  double characteristic = 3.47;
  /// Radius of the max modulus in the second theorem step.
  double max_modulus = 3.46;
  /// Lower end of the fixed-height segment checked for |log zeta|.
  double segment_sigma_min = 0.52;
};

AuditRadii default_radii(double delta);

struct AuditOptions {
  ZetaOptions zeta{};
  /// Radii derived from the ledger's delta when unset.
  std::optional<AuditRadii> radii;
  /// sigma values for the direct bound; {1/2 + 4 delta, 1, 2, 4} when empty.
  std::vector<double> sigma_grid;
  double locate_tol = 1e-9;
  int segment_samples = 128;
  int max_modulus_nodes = 1024;
};

/// Shared state for the conditional audits at one height t: a memoized
/// zeta(z + 4 + it) handle, the zero-exclusion count, the log zeta branch
/// and the located points. The audits below reuse what earlier ones found.
/// Not thread safe; use one context per t.
class AuditContext {
 public:
  AuditContext(double t, ConstantsLedger ledger, AuditOptions options = {});
  ~AuditContext();
  AuditContext(AuditContext&&) noexcept;
  AuditContext& operator=(AuditContext&&) noexcept;

  double t() const;
  const ConstantsLedger& ledger() const;
  const AuditRadii& radii() const;
  const AuditOptions& options() const;

  struct State;
  State& state();

 private:
  std::unique_ptr<State> state_;
};

/// max |log zeta| on the log circle and on the segment
/// [segment_sigma_min, 4] + it, against c2 log t + c3. A zero of zeta in
/// the exclusion disk gives an "rh-obstruction" finding instead.
LemmaVerdict audit_lemma8(AuditContext& context);
LemmaVerdict audit_lemma8(double t, const ConstantsLedger& ledger, const AuditOptions& options = {});

/// N of the 1-points of zeta against log log t + c4. Provenance also holds
/// N of the zeros of the log zeta branch, how many 1-points lie on the
/// principal branch, and both sides of Jensen's formula for log zeta.
LemmaVerdict audit_lemma9(AuditContext& context);
LemmaVerdict audit_lemma9(double t, const ConstantsLedger& ledger, const AuditOptions& options = {});

/// "theorem.i": T(characteristic radius, zeta) vs 2 log log t + c5.
/// "theorem.ii": log+ M(max-modulus radius) vs c6 log log t + c7.
/// "theorem.iii": max log|zeta(sigma + it)| over the grid vs
///                c6 log log t + log c8.
std::vector<LemmaVerdict> audit_theorem(AuditContext& context);
std::vector<LemmaVerdict> audit_theorem(double t, const ConstantsLedger& ledger,
                                        const AuditOptions& options = {});

/// The 1-point count measured at t against the bound rebuilt from the
/// measured max of |log zeta| (instead of c2 log t + c3):
/// log max|log zeta| - log 0.0426.
LemmaVerdict audit_chain_soundness(AuditContext& context);

/// lemma8, lemma9, theorem.i-iii and chain soundness at one t.
std::vector<LemmaVerdict> audit_chain(double t, const ConstantsLedger& ledger, const AuditOptions& options = {});

}  // namespace nevlab
