#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "nevlab/zeros.hpp"
#include "support.hpp"

using namespace nevlab;
using nevlab::testing::count_inside;
using nevlab::testing::Rng;

namespace {

// Roots in |z| < 2 with multiplicity up to 2, total degree at most 8,
// kept `gap` away from the unit circle.
PointList random_roots(Rng& rng, double gap) {
  PointList roots;
  int degree = 0;
  const int target = rng.integer(1, 8);
  while (degree < target) {
    const Complex z = rng.in_annulus(0.0, 2.0);
    if (std::abs(std::abs(z) - 1.0) < gap) continue;
    const int m = std::min(rng.integer(1, 2), target - degree);
    roots.push_back({z, m});
    degree += m;
  }
  return roots;
}

}  // namespace

TEST_CASE("winding counts of simple cases") {
  const Complex w = std::polar(1.0, kTwoPi / 3);
  const FunctionHandle cube = handles::polynomial({{0.5, 1}, {0.5 * w, 1}, {0.5 * w * w, 1}});
  CHECK(winding_count(cube, 0.0, {0.0, 1.0}).count == 3);
  CHECK(winding_count(cube, 0.0, {0.0, 0.4}).count == 0);

  const FunctionHandle square = handles::polynomial({{0.0, 2}});
  try {
    winding_count(square, 1.0, {0.0, 1.0});
    FAIL("expected a boundary obstruction");
  } catch (const NumericError& e) {
    CHECK(e.kind() == ErrorKind::BoundaryObstruction);
    REQUIRE(e.location().has_value());
    CHECK(std::min(std::abs(*e.location() - 1.0), std::abs(*e.location() + 1.0)) < 0.05);
  }
  const WindingResult j = winding_count_jittered(square, 1.0, {0.0, 1.0});
  CHECK(j.jittered);
  CHECK(j.disk.radius != 1.0);
  CHECK(j.count == (j.disk.radius > 1.0 ? 2 : 0));

  SUBCASE("poles are cleared from the count") {
    const FunctionHandle f = handles::rational({{0.2, 2}}, {{-0.3, 1}});
    CHECK(winding_count(f, 0.0, {0.0, 1.0}).count == 2);
  }

  SUBCASE("tracking agrees with the trapezoid rule") {
    const FunctionHandle f = handles::polynomial({{0.3, 3}, {Complex(0.1, 0.9), 1}, {1.5, 1}});
    CHECK(winding_by_tracking(f, 0.0, {0.0, 1.0}).count == 4);
    CHECK(winding_by_tracking(f, 0.0, {0.0, 1.0}).method == "argument-tracking");
  }
}

TEST_CASE("winding counts of random polynomials match their constructed roots") {
  Rng rng(31);
  int agreements = 0;
  for (int i = 0; i < 200; ++i) {
    const PointList roots = random_roots(rng, 0.01);
    const Complex leading = std::polar(rng.uniform(0.1, 10.0), rng.uniform(0.0, kTwoPi));
    const FunctionHandle f = handles::polynomial(roots, leading);
    const WindingResult w = winding_count(f, 0.0, {0.0, 1.0});
    INFO("case ", i);
    CHECK(w.count == count_inside(roots, 0.0, 1.0));
    agreements += w.count == count_inside(roots, 0.0, 1.0);
  }
  CHECK(agreements == 200);
}

TEST_CASE("counts over four half-radius disks add up") {
  // The disks |z - c| < 1/2, c in {+-1/2, +-i/2}, overlap and do not cover
  // the unit disk. Each root is charged once per sub-disk holding it, and
  // the roots outside their union are counted by an independent residual
  // disk check, so both identities are exact.
  Rng rng(32);
  const Complex centers[] = {0.5, -0.5, Complex(0, 0.5), Complex(0, -0.5)};
  for (int i = 0; i < 100; ++i) {
    const PointList roots = random_roots(rng, 0.01);
    const FunctionHandle f = handles::polynomial(roots);
    const WindingResult full = winding_count_jittered(f, 0.0, {0.0, 1.0});
    int sub_total = 0;
    int charged = 0;
    std::vector<DiskSpec> used;
    for (Complex c : centers) {
      const WindingResult w = winding_count_jittered(f, 0.0, {c, 0.5});
      sub_total += w.count;
      used.push_back(w.disk);
      charged += count_inside(roots, w.disk.center, w.disk.radius);
    }
    int in_union = 0;
    int residual = 0;
    for (const auto& p : roots) {
      if (!(std::abs(p.location) < full.disk.radius)) continue;
      const bool covered = std::any_of(used.begin(), used.end(), [&](const DiskSpec& d) {
        return std::abs(p.location - d.center) < d.radius;
      });
      (covered ? in_union : residual) += p.multiplicity;
    }
    INFO("case ", i);
    CHECK(sub_total == charged);
    CHECK(full.count == in_union + residual);
  }
}

TEST_CASE("merge points") {
  const PointList merged = merge_points({{1.0, 1}, {1.0 + 1e-10, 2}, {Complex(0, 1), 1}}, 1e-8);
  REQUIRE(merged.size() == 2);
  CHECK(merged[0].location == Complex(0, 1));
  CHECK(merged[1].multiplicity == 3);
  CHECK(std::abs(merged[1].location - (1.0 + 2e-10 / 3)) < 1e-15);
  CHECK(total_multiplicity(merged) == 4);
}

TEST_CASE("locating a-points") {
  SUBCASE("z^2 = 1/4") {
    const PointList p = locate_a_points(handles::polynomial({{0.0, 2}}), 0.25, {0.0, 1.0}, 1e-10);
    REQUIRE(p.size() == 2);
    CHECK(std::abs(p[0].location + 0.5) < 1e-10);
    CHECK(std::abs(p[1].location - 0.5) < 1e-10);
    CHECK(p[0].multiplicity == 1);
    CHECK(p[1].multiplicity == 1);
  }

  SUBCASE("double root") {
    const PointList p = locate_a_points(handles::polynomial({{0.3, 2}}), 0.0, {0.0, 1.0}, 1e-9);
    REQUIRE(p.size() == 1);
    CHECK(std::abs(p[0].location - 0.3) < 1e-7);
    CHECK(p[0].multiplicity == 2);
  }

  SUBCASE("first zeta zero from the critical-line oracle") {
    const double gamma1 = testing::first_zero_ordinate();
    const FunctionHandle z = handles::zeta_shift(14.2);
    const DiskSpec disk{Complex(-3.5, 0.0), 0.3};
    CHECK(winding_count(z, 0.0, disk).count == 1);
    const PointList p = locate_a_points(z, 0.0, disk, 1e-10);
    REQUIRE(p.size() == 1);
    CHECK(std::abs(p[0].location + Complex(4.0, 14.2) - Complex(0.5, gamma1)) < 1e-8);
  }

  SUBCASE("1-points of a shifted zeta") {
    const FunctionHandle z = handles::memoized(handles::zeta_shift(100.0));
    const LocateResult located = locate_a_points_jittered(z, 1.0, {0.0, 3.48}, 1e-9);
    const WindingResult w = winding_count_jittered(z, 1.0, located.disk);
    CHECK(total_multiplicity(located.points) == w.count);
    for (const auto& p : located.points) CHECK(std::abs(z.value(p.location).value - 1.0) < 1e-6);
  }

  SUBCASE("random polynomials: multiplicities sum to the winding count") {
    Rng rng(33);
    for (int i = 0; i < 60; ++i) {
      const PointList roots = random_roots(rng, 0.01);
      const Complex a = rng.in_annulus(0.0, 0.5);
      const FunctionHandle f = handles::polynomial(roots, rng.uniform(0.5, 2.0));
      const LocateResult located = locate_a_points_jittered(f, a, {0.0, 1.0}, 1e-9);
      const WindingResult w = winding_count_jittered(f, a, located.disk);
      INFO("case ", i);
      REQUIRE(total_multiplicity(located.points) == w.count);
      for (const auto& p : located.points) {
        // a is generic, so its a-points are simple
        CHECK(p.multiplicity == 1);
        const Jet jet = f.jet(p.location);
        CHECK(std::abs(jet.value.value - a) <= 1e-9 * std::abs(jet.derivative.value) + 1e-13);
      }
    }
  }
}
