#pragma once

#include <string>
#include <vector>

namespace nevlab {

struct NamedValue {
  std::string name;
  double value = 0.0;
};

/// Outcome of one inequality check.
///
/// `sense` is "upper" for checks of the form computed <= bound and "lower"
/// for computed >= bound. The margin is oriented so that it is nonnegative
/// exactly when the inequality holds, and pass <=> margin >= -error_estimate.
struct LemmaVerdict {
  std::string lemma_id;
  std::vector<NamedValue> inputs;
  double computed = 0.0;
  double bound = 0.0;
  std::string sense = "upper";
  double margin = 0.0;
  double error_estimate = 0.0;
  bool pass = false;
  std::vector<NamedValue> provenance;
  std::vector<std::string> notes;
  /// Structured finding ("rh-obstruction", ...) or empty.
  std::string finding;

  double input(const std::string& name) const;
  double provenance_value(const std::string& name) const;
};

/// computed <= bound
LemmaVerdict upper_verdict(std::string id, std::vector<NamedValue> inputs, double computed, double bound,
                           double error_estimate);
/// computed >= bound
LemmaVerdict lower_verdict(std::string id, std::vector<NamedValue> inputs, double computed, double bound,
                           double error_estimate);

/// lower <= computed <= upper. Reports whichever side has the smaller
/// margin; pass requires both. The other bound goes to provenance.
LemmaVerdict interval_verdict(std::string id, std::vector<NamedValue> inputs, double computed, double lower,
                              double upper, double error_estimate);

}  // namespace nevlab
