#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "nevlab/audit.hpp"
#include "nevlab/ledger.hpp"
#include "nevlab/verdict.hpp"

using namespace nevlab;

namespace {

const LemmaVerdict& find(const std::vector<LemmaVerdict>& vs, const std::string& id) {
  for (const auto& v : vs)
    if (v.lemma_id == id) return v;
  FAIL("missing verdict " << id);
  return vs.front();
}

ErrorKind kind_of(const std::function<void()>& call) {
  try {
    call();
  } catch (const NumericError& e) {
    return e.kind();
  }
  FAIL("expected a NumericError");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("verdict semantics") {
  const LemmaVerdict up = upper_verdict("x", {}, 1.0, 2.0, 0.0);
  CHECK(up.margin == 1.0);
  CHECK(up.pass);
  CHECK(up.sense == "upper");
  CHECK_FALSE(upper_verdict("x", {}, 2.0, 1.0, 0.5).pass);
  // within the error estimate still passes
  CHECK(upper_verdict("x", {}, 2.0, 1.5, 0.6).pass);
  const LemmaVerdict lo = lower_verdict("x", {}, 1.0, 2.0, 0.0);
  CHECK(lo.margin == -1.0);
  CHECK_FALSE(lo.pass);
  CHECK(lo.sense == "lower");

  const LemmaVerdict low_side = interval_verdict("x", {}, 0.1, 0.0, 1.0, 0.0);
  CHECK(low_side.sense == "lower");
  CHECK(low_side.bound == 0.0);
  CHECK(low_side.provenance_value("upper_bound") == 1.0);
  const LemmaVerdict high_side = interval_verdict("x", {}, 0.9, 0.0, 1.0, 0.0);
  CHECK(high_side.sense == "upper");
  CHECK(high_side.margin == doctest::Approx(0.1));
  CHECK_FALSE(interval_verdict("x", {}, 1.5, 0.0, 1.0, 0.1).pass);
  CHECK_THROWS_AS(up.input("missing"), std::exception);
}

TEST_CASE("formula evaluator") {
  const std::map<std::string, double> vars{{"x", 4.0}, {"delta", 0.01}};
  CHECK(evaluate_formula("1 + 2*3", {}) == 7.0);
  CHECK(evaluate_formula("(1 + 2)*3", {}) == 9.0);
  CHECK(evaluate_formula("-x^2", vars) == -16.0);
  CHECK(evaluate_formula("2^-1", {}) == 0.5);
  CHECK(evaluate_formula("sqrt(x) / 2 - 1", vars) == 0.0);
  CHECK(evaluate_formula("max(1, log(exp(2)))", {}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(evaluate_formula("7/delta/2", vars) == doctest::Approx(350.0).epsilon(1e-15));
  CHECK_THROWS_AS(evaluate_formula("y + 1", vars), NumericError);
  CHECK_THROWS_AS(evaluate_formula("1 +", {}), NumericError);
  CHECK_THROWS_AS(evaluate_formula("(1", {}), NumericError);
  CHECK_THROWS_AS(evaluate_formula("1 2", {}), NumericError);
}

TEST_CASE("constants ledger") {
  const ConstantsLedger ledger = derive_constants(3.0);
  CHECK(ledger.delta == 0.01);
  CHECK(ledger.c1 == 3.0);
  CHECK(ledger_consistency(ledger) <= 1e-12);

  // Closed forms evaluated here, independently of the formula strings.
  const double d = 0.01;
  const double B = 3.5;
  const double c2 = (7 / d) / 2;
  const double c3 = (7 / d) * (std::log(3.0) + 0.0824) + 0.0824;
  const double c4 = std::log(c2 + c3 / std::log(16.0)) - std::log(0.0426);
  const double c5 = 2 * c4 + 4 * std::log(1.0824) + 2 * std::max(0.0, std::log(1 / ((B - 2 * d) * 0.012))) +
                    24 * std::log((B - 2 * d) / d) + 2328;
  const double c6 = 2 * (2 * B - 7 * d) / d;
  const double c7 = ((2 * B - 7 * d) / d) * c5;
  CHECK(ledger.value("c2") == doctest::Approx(c2).epsilon(1e-14));
  CHECK(ledger.value("c3") == doctest::Approx(c3).epsilon(1e-14));
  CHECK(ledger.value("c4") == doctest::Approx(c4).epsilon(1e-14));
  CHECK(ledger.value("c5") == doctest::Approx(c5).epsilon(1e-14));
  CHECK(ledger.value("c6") == doctest::Approx(c6).epsilon(1e-14));
  CHECK(ledger.value("c7") == doctest::Approx(c7).epsilon(1e-14));
  CHECK(ledger.log_value("c8") == doctest::Approx(c7).epsilon(1e-14));
  CHECK(ledger.entry("c8").log_scale);

  // Frozen after the comparison above.
  CHECK(ledger.value("c2") == 350.0);
  CHECK(ledger.value("c3") == doctest::Approx(826.79100206767691).epsilon(1e-15));
  CHECK(ledger.value("c4") == doctest::Approx(9.6301031236205379).epsilon(1e-15));
  CHECK(ledger.value("c5") == doctest::Approx(2494.3814216241417).epsilon(1e-15));
  CHECK(ledger.value("c6") == 1386.0);
  CHECK(ledger.value("c7") == doctest::Approx(1728606.3251855301).epsilon(1e-15));

  SUBCASE("tampering is detected") {
    ConstantsLedger bad = ledger;
    bad.entries[2].value *= 1.001;
    CHECK(ledger_consistency(bad) > 1e-4);
  }

  SUBCASE("other inputs") {
    for (double c1 : {1.0, 3.0, 10.0})
      for (double delta : {0.005, 0.01, 0.05}) CHECK(ledger_consistency(derive_constants(c1, delta)) <= 1e-12);
    CHECK_THROWS_AS(derive_constants(0.0), NumericError);
    CHECK_THROWS_AS(derive_constants(3.0, 1.0), NumericError);
    CHECK_THROWS_AS(ledger.entry("c9"), NumericError);
  }
}

TEST_CASE("sum versus integral tails") {
  SUBCASE("inverse square from 1") {
    const auto f = [](double x) { return 1.0 / (x * x); };
    const auto F = [](double x) { return -1.0 / x; };
    // partial sums to 1e7 with the tail between 1/(n+1) and 1/n
    const int n = 10'000'000;
    double partial = 0.0;
    for (int k = n; k >= 1; --k) partial += 1.0 / (double(k) * k);
    const double alpha_oracle = partial - 1.0 + (1.0 / n + 1.0 / (n + 1.0)) / 2;
    CHECK(alpha_oracle == doctest::Approx(0.644934).epsilon(1e-6));

    const TailCheckResult r = audit_lemma4(f, F, 1.0, 1e5);
    CHECK(std::abs(r.alpha_estimate - alpha_oracle) <= find(r.verdicts, "lemma4.alpha").error_estimate);
    CHECK(find(r.verdicts, "lemma4.alpha").pass);
    CHECK(find(r.verdicts, "lemma4.deviation").pass);

    double d10 = 0.0;
    for (int k = 1; k <= 10; ++k) d10 += 1.0 / (double(k) * k);
    d10 -= 1.0 - 0.1;
    CHECK(std::abs(d10 - alpha_oracle) <= 1.0 / 81);
  }

  SUBCASE("log x over x^4 from 3") {
    const auto f = [](double x) { return std::log(x) / std::pow(x, 4); };
    const auto F = [](double x) { return -(3 * std::log(x) + 1) / (9 * std::pow(x, 3)); };
    const TailCheckResult r = audit_lemma4(f, F, 3.0, 1e4);
    CHECK(r.alpha_estimate >= 0.0);
    CHECK(r.alpha_estimate <= std::log(3.0) / 81);
    CHECK(find(r.verdicts, "lemma4.alpha").pass);
    CHECK(find(r.verdicts, "lemma4.deviation").pass);
  }

  SUBCASE("increasing functions are rejected") {
    const auto f = [](double x) { return x; };
    const auto F = [](double x) { return x * x / 2; };
    CHECK(kind_of([&] { audit_lemma4(f, F, 1.0, 10.0); }) == ErrorKind::Precondition);
  }
}

TEST_CASE("bounds at s = 4 + it") {
  for (double t : {0.0, 16.0, 1e6, -42.0}) {
    const std::vector<LemmaVerdict> vs = audit_lemma5(t);
    REQUIRE(vs.size() == 4);
    for (const auto& v : vs) {
      INFO(v.lemma_id, " at t = ", t);
      CHECK(v.pass);
      CHECK(v.error_estimate <= 1e-10);
    }
  }
  const std::vector<LemmaVerdict> at0 = audit_lemma5(0.0);
  const LemmaVerdict& z4 = find(at0, "lemma5.3");
  CHECK(std::abs(z4.computed - std::pow(3.141592653589793, 4) / 90) <= z4.error_estimate);
}

TEST_CASE("growth of zeta against sqrt t") {
  const Lemma6Result r = audit_lemma6({4.0}, {2.0}, 3.0);
  CHECK(r.verdict.pass);
  CHECK(r.empirical_c1 <= 1.0824 / std::sqrt(2.0));
  CHECK(r.empirical_c1 < 1.0);

  const Lemma6Result grid = audit_lemma6({0.5, 0.54, 1.0, 2.0, 4.0}, {2.0, 10.0, 100.0, -50.0}, 3.0);
  CHECK(grid.verdict.pass);
  CHECK(grid.empirical_c1 >= r.empirical_c1);

  CHECK(kind_of([] { audit_lemma6({4.0}, {1.0}, 3.0); }) == ErrorKind::Precondition);
  CHECK(kind_of([] { audit_lemma6({0.4}, {5.0}, 3.0); }) == ErrorKind::Precondition);
}

TEST_CASE("conditional audits refuse t below 16") {
  const ConstantsLedger ledger = derive_constants(3.0);
  CHECK(kind_of([&] { audit_lemma8(15.0, ledger); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { audit_lemma9(15.0, ledger); }) == ErrorKind::Precondition);
  CHECK(kind_of([&] { audit_theorem(15.0, ledger); }) == ErrorKind::Precondition);

  AuditOptions bad;
  bad.radii = default_radii(0.01);
  bad.radii->log_circle = 3.6;
  CHECK(kind_of([&] { AuditContext(100.0, ledger, bad); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("conditional chain at small heights") {
  const ConstantsLedger ledger = derive_constants(3.0);

  SUBCASE("t = 16") {
    AuditContext ctx(16.0, ledger);
    const LemmaVerdict l8 = audit_lemma8(ctx);
    CHECK(l8.pass);
    CHECK(l8.margin > 100.0);
    CHECK(l8.finding.empty());
    CHECK(l8.provenance_value("zero_count") == 0.0);
    const LemmaVerdict l9 = audit_lemma9(ctx);
    CHECK(l9.pass);
    if (l9.provenance_value("one_count") == 0.0) CHECK(l9.computed == 0.0);
  }

  SUBCASE("t = 100") {
    AuditOptions options;
    options.sigma_grid = {0.54, 1.0, 2.0, 4.0};
    AuditContext ctx(100.0, ledger, options);
    const LemmaVerdict l9 = audit_lemma9(ctx);
    CHECK(l9.pass);
    CHECK(l9.bound == doctest::Approx(std::log(std::log(100.0)) + ledger.value("c4")));
    CHECK(std::abs(l9.provenance_value("jensen_residual")) <= l9.provenance_value("jensen_error"));
    CHECK(l9.provenance_value("one_count_principal_branch") <= l9.provenance_value("one_count"));
    const std::vector<LemmaVerdict> th = audit_theorem(ctx);
    REQUIRE(th.size() == 3);
    for (const auto& v : th) {
      INFO(v.lemma_id);
      CHECK(v.pass);
    }
    CHECK(find(th, "theorem.iii").input("sigma_min") == 0.54);
  }

  SUBCASE("chain soundness follows from the measured maximum") {
    for (double t : {16.0, 300.0, 1e4}) {
      const std::vector<LemmaVerdict> vs = audit_chain(t, ledger);
      REQUIRE(vs.size() == 6);
      const LemmaVerdict& l8 = find(vs, "lemma8");
      const LemmaVerdict& chain = find(vs, "chain");
      const LemmaVerdict& l9 = find(vs, "lemma9");
      INFO("t = ", t);
      if (l8.pass) CHECK(chain.pass);
      CHECK(chain.computed == l9.computed);
      CHECK(chain.provenance_value("measured_log_max") <= l8.computed);
      CHECK(std::abs(l9.provenance_value("jensen_residual")) <= l9.provenance_value("jensen_error"));
    }
  }

  SUBCASE("a zero inside the exclusion disk is a finding, not a verdict") {
    // |0.5 + 14.13i - (4 + 16i)| ~ 3.97
    AuditOptions wide;
    wide.radii = default_radii(0.01);
    wide.radii->zero_exclusion = 4.2;
    const std::vector<LemmaVerdict> vs = audit_chain(16.0, ledger, wide);
    REQUIRE(vs.size() == 6);
    for (const auto& v : vs) {
      CHECK(v.finding == "rh-obstruction");
      CHECK_FALSE(v.pass);
      CHECK(v.provenance_value("zero_count") >= 1.0);
    }
  }
}
