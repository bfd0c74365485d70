#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "troplag/kaneyama.hpp"
#include "troplag/outer.hpp"

using namespace troplag;
using troplag::testing::load_multisection;

namespace {

OuterPotential build_outer(const TropicalMultiSection& ts, double R = 4.0) {
  CircleRestriction cr = circle_restriction(ts);
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  return smooth_outer(cr, gen, R);
}

double fd_dr(const OuterPotential& o, double r, double theta, int sheet) {
  const double h = 1e-6 * r;
  return (o.value(r + h, theta, sheet) - o.value(r - h, theta, sheet)) / (2 * h);
}

double fd_dtheta(const OuterPotential& o, double r, double theta, int sheet) {
  const double h = 1e-7;
  return (o.value(r, theta + h, sheet) - o.value(r, theta - h, sheet)) / (2 * h);
}

}  // namespace

TEST_CASE("smoothing steps are smooth plateaus") {
  CHECK(smoothstep_inf(-0.5) == 0.0);
  CHECK(smoothstep_inf(0.0) == 0.0);
  CHECK(smoothstep_inf(1.0) == 1.0);
  CHECK(smoothstep_inf(1.5) == 1.0);
  CHECK(smoothstep_inf(0.5) == doctest::Approx(0.5));
  for (double u : {0.1, 0.3, 0.7}) {
    CHECK(smoothstep_inf(u) + smoothstep_inf(1 - u) == doctest::Approx(1.0));
    CHECK(smoothstep_inf(u) > 0.0);
    CHECK(smoothstep_inf(u) < 1.0);
    double h = 1e-6;
    double fd = (smoothstep_inf(u + h) - smoothstep_inf(u - h)) / (2 * h);
    CHECK(std::abs(smoothstep_inf_deriv(u) - fd) <= 1e-6 * std::max(1.0, std::abs(fd)));
  }
  CHECK(corner_bump(0.0, 0.2) == 1.0);
  CHECK(corner_bump(0.09, 0.2) == 1.0);
  CHECK(corner_bump(0.21, 0.2) == 0.0);
  CHECK(corner_bump(-0.21, 0.2) == 0.0);
  CHECK(corner_bump(0.15, 0.2) == corner_bump(-0.15, 0.2));
  CHECK(corner_bump(0.15, 0.2) > 0.0);
  CHECK(corner_bump(0.15, 0.2) < 1.0);
}

TEST_CASE("outer potential of the standard example") {
  TropicalMultiSection ts = kaneyama_tropicalize(KaneyamaBundle{});
  OuterPotential o = build_outer(ts);
  CHECK(o.k == 2);
  CHECK(o.sheets == 1);
  CHECK(o.deck_shift == doctest::Approx(M_PI));
  CHECK(o.window() == doctest::Approx(M_PI));
  REQUIRE(o.crossings.size() == 3);
  // Upstairs angles are half the downstairs crossing directions (pi/4, pi,
  // 3 pi/2).
  CHECK(std::abs(o.crossings[0] - M_PI / 8) <= 1e-12);
  CHECK(std::abs(o.crossings[1] - M_PI / 2) <= 1e-12);
  CHECK(std::abs(o.crossings[2] - 3 * M_PI / 4) <= 1e-12);
  CHECK(o.delta > 0.0);
  CHECK(o.m_delta > 0.0);
  CHECK(o.m_delta < 1.0);

  // Away from corner windows the potential is exactly piecewise trigonometric.
  for (double theta : o.crossings) {
    double r = 6.0;
    CHECK(o.value(r, theta) == o.value_unsmoothed(r, theta));
    // Crossings of the smoothed potential stay at the exact directions.
    CHECK(std::abs(o.deck_difference(r, theta)) <= 1e-9 * r * r);
  }

  // Smoothed and exact values agree in the radial power law everywhere.
  for (double theta : {0.1, 0.9, 1.8, 2.7}) {
    double v1 = o.value(5.0, theta);
    double v2 = o.value(10.0, theta);
    CHECK(v2 == doctest::Approx(v1 * std::pow(2.0, o.k)));
  }
}

TEST_CASE("outer derivatives match finite differences") {
  TropicalMultiSection ts = kaneyama_tropicalize(KaneyamaBundle{});
  OuterPotential o = build_outer(ts);
  for (double theta = 0.05; theta < o.window(); theta += 0.13) {
    for (double r : {4.5, 9.0}) {
      double a = o.dr(r, theta, 0);
      double b = fd_dr(o, r, theta, 0);
      CHECK(std::abs(a - b) <= 1e-4 * std::max(1.0, std::abs(a)));
      double c = o.dtheta(r, theta, 0);
      double d = fd_dtheta(o, r, theta, 0);
      CHECK(std::abs(c - d) <= 1e-4 * std::max(1.0, std::abs(c)));
    }
  }
}

TEST_CASE("deck difference of a split pair uses both sheets") {
  TropicalMultiSection ts = load_multisection("criterion8_split_n4.json");
  OuterPotential o = build_outer(ts);
  CHECK(o.sheets == 2);
  CHECK(o.k == 1);
  CHECK(o.window() == doctest::Approx(2 * M_PI));
  CHECK(o.crossings.size() == 4);
  double r = 7.0;
  for (double theta : {0.3, 1.9, 4.4}) {
    CHECK(o.deck_difference(r, theta) ==
          doctest::Approx(o.value(r, theta, 0) - o.value(r, theta, 1)));
  }
  for (double z : o.crossings)
    CHECK(std::abs(o.deck_difference(r, z)) <= 1e-9 * r);
}

TEST_CASE("corner damping keeps the deck difference sign fixed") {
  for (const char* name :
       {"e111_multisection.json", "criterion8_split_n4.json",
        "criterion10_hexagon.json", "maximal_onray_square.json"}) {
    TropicalMultiSection ts = load_multisection(name);
    OuterPotential o = build_outer(ts);
    RadialSignReport rep = radial_sign_check(o);
    CHECK(rep.ok);
    CHECK(rep.failures == 0);
    CHECK(rep.samples > 0);
  }
}

TEST_CASE("crossing directions clear every corner window") {
  TropicalMultiSection ts = load_multisection("criterion10_hexagon.json");
  OuterPotential o = build_outer(ts);
  for (double z : o.crossings) {
    auto [corner, offset] = o.nearest_corner(z);
    (void)corner;
    CHECK(std::abs(offset) > 1.5 * o.delta);
  }
}

TEST_CASE("an on-ray crossing is not treated as a corner") {
  TropicalMultiSection ts = load_multisection("maximal_onray_square.json");
  OuterPotential o = build_outer(ts);
  REQUIRE(o.crossings.size() == 3);
  // One crossing sits exactly on the first ray direction; both deck branches
  // pass it smoothly so it is not a corner and needs no damping window.
  CHECK(std::abs(o.crossings[0] - 0.0) <= 1e-12);
  CHECK(std::abs(o.crossings[1] - 3 * M_PI / 8) <= 1e-12);
  CHECK(std::abs(o.crossings[2] - 5 * M_PI / 8) <= 1e-12);
  for (double c : o.corners)
    CHECK(std::min(c, 2 * M_PI - c) > 1e-9);
  for (double z : o.crossings) {
    double r = 5.5;
    CHECK(o.value(r, z, 0) == o.value_unsmoothed(r, z, 0));
    CHECK(std::abs(o.deck_difference_dtheta(r, z)) > 1e-9);
  }
}
