#pragma once

#include <map>
#include <string>
#include <vector>

namespace nevlab {

/// Evaluates an arithmetic expression over named variables. Supports
/// + - * / ^, unary minus, parentheses and the functions log, exp, sqrt
/// and max(a, b). Unknown names and syntax errors throw InvalidArgument.
double evaluate_formula(const std::string& formula, const std::map<std::string, double>& variables);

struct LedgerEntry {
  std::string name;
  /// For log-scale entries this holds the natural log of the constant.
  double value = 0.0;
  std::string formula;
  /// The constant itself overflows binary64; `value` and `formula` are for
  /// its logarithm.
  bool log_scale = false;
};

struct ConstantsLedger {
  double delta = 0.01;
  double c1 = 3.0;
  /// c2..c8 in derivation order.
  std::vector<LedgerEntry> entries;

  const LedgerEntry& entry(const std::string& name) const;
  /// Value of c_k; log c_k for log-scale entries.
  double value(const std::string& name) const;
  /// Natural log of the constant whether or not it is stored on log scale.
  double log_value(const std::string& name) const;
};

/// Propagates c1 through the chain of estimates. With B = 7/2:
///   c2 = (7/delta) / 2
///   c3 = (7/delta)(log c1 + 0.0824) + 0.0824
///   c4 = log(c2 + c3 / log 16) - log 0.0426
///   c5 = 2 c4 + 4 log 1.0824 + 2 max(0, log(1/((B - 2 delta) 0.012)))
///        + 24 log((B - 2 delta)/delta) + 2328
///   c6 = 2 (2B - 7 delta)/delta
///   c7 = ((2B - 7 delta)/delta) c5
///   log c8 = c7
ConstantsLedger derive_constants(double c1, double delta = 0.01);

/// Largest relative difference between a stored value and its formula
/// re-evaluated from delta, c1 and the stored predecessors.
double ledger_consistency(const ConstantsLedger& ledger);

}  // namespace nevlab
