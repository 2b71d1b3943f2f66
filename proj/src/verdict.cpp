#include "nevlab/verdict.hpp"

#include <cmath>

#include "nevlab/types.hpp"

namespace nevlab {

namespace {

double find(const std::vector<NamedValue>& values, const std::string& name) {
  for (const auto& v : values) {
    if (v.name == name) return v.value;
  }
  throw NumericError(ErrorKind::InvalidArgument, "verdict has no entry '" + name + "'");
}

LemmaVerdict make(std::string id, std::vector<NamedValue> inputs, double computed, double bound,
                  double error_estimate, bool upper) {
  LemmaVerdict v;
  v.lemma_id = std::move(id);
  v.inputs = std::move(inputs);
  v.computed = computed;
  v.bound = bound;
  v.sense = upper ? "upper" : "lower";
  v.margin = upper ? bound - computed : computed - bound;
  v.error_estimate = std::abs(error_estimate);
  v.pass = v.margin >= -v.error_estimate;
  return v;
}

}  // namespace

double LemmaVerdict::input(const std::string& name) const { return find(inputs, name); }

double LemmaVerdict::provenance_value(const std::string& name) const { return find(provenance, name); }

LemmaVerdict upper_verdict(std::string id, std::vector<NamedValue> inputs, double computed, double bound,
                           double error_estimate) {
  return make(std::move(id), std::move(inputs), computed, bound, error_estimate, true);
}

LemmaVerdict lower_verdict(std::string id, std::vector<NamedValue> inputs, double computed, double bound,
                           double error_estimate) {
  return make(std::move(id), std::move(inputs), computed, bound, error_estimate, false);
}

LemmaVerdict interval_verdict(std::string id, std::vector<NamedValue> inputs, double computed, double lower,
                              double upper, double error_estimate) {
  const bool lower_binding = computed - lower <= upper - computed;
  LemmaVerdict v = make(std::move(id), std::move(inputs), computed, lower_binding ? lower : upper,
                        error_estimate, !lower_binding);
  v.provenance.push_back({"lower_bound", lower});
  v.provenance.push_back({"upper_bound", upper});
  const double err = v.error_estimate;
  v.pass = computed - lower >= -err && upper - computed >= -err;
  return v;
}

}  // namespace nevlab
