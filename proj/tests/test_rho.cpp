#include <cmath>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "troplag/kaneyama.hpp"
#include "troplag/rho.hpp"

using namespace troplag;
using troplag::testing::load_multisection;

namespace {

OuterPotential outer_of(const TropicalMultiSection& ts, double R) {
  CircleRestriction cr = circle_restriction(ts);
  GenericityReport gen = genericity_count(ts);
  REQUIRE(gen.ok);
  return smooth_outer(cr, gen, R);
}

}  // namespace

TEST_CASE("monotone cubic interpolation") {
  MonotoneCubic c = MonotoneCubic::build({0, 1, 2, 4}, {0, 1, 1.5, 5});
  CHECK(c.eval(0) == 0.0);
  CHECK(c.eval(1) == 1.0);
  CHECK(c.eval(2) == 1.5);
  CHECK(c.eval(4) == 5.0);
  double prev = c.eval(0);
  for (double t = 0.05; t <= 4.0; t += 0.05) {
    double v = c.eval(t);
    CHECK(v >= prev);
    prev = v;
  }
  for (double t : {0.4, 1.3, 3.1}) {
    double h = 1e-6;
    double fd = (c.eval(t + h) - c.eval(t - h)) / (2 * h);
    CHECK(std::abs(c.deriv(t) - fd) <= 1e-5);
  }
  // Linear extension with the end tangents.
  CHECK(c.eval(-2) == doctest::Approx(0 - 2 * c.m.front()));
  CHECK(c.eval(6) == doctest::Approx(5 + 2 * c.m.back()));

  CHECK_THROWS_AS(MonotoneCubic::build({0}, {0}), TropError);
  CHECK_THROWS_WITH_AS(MonotoneCubic::build({0, 1, 2}, {0, 2, 1}),
                       doctest::Contains("strictly increasing"), TropError);
  CHECK_THROWS_AS(MonotoneCubic::build({0, 1, 1}, {0, 1, 2}), TropError);
}

TEST_CASE("reparametrization of the standard example") {
  const double R = 4.0, eps = 0.1;
  TropicalMultiSection ts = kaneyama_tropicalize(KaneyamaBundle{});
  OuterPotential outer = outer_of(ts, R);
  HyperellipticModel model = series_coefficients({{0.0, 1}}, 1.0);
  RhoMap rho = build_rho(outer, model, R, eps);

  CHECK(rho.period == doctest::Approx(M_PI));
  CHECK(rho.sources.size() == 3);

  CHECK(rho.blend(R) == 0.0);
  CHECK(rho.blend(R - 1) == 0.0);
  CHECK(rho.blend(R + eps) == 1.0);
  CHECK(rho.blend(R + eps / 2) > 0.0);
  CHECK(rho.blend(R + eps / 2) < 1.0);

  // Identity below the gluing radius: the knot table maps sources to
  // themselves and cubic interpolation reproduces the straight line.
  for (double theta : {0.0, 0.7, 1.9, 2.9}) {
    CHECK(std::abs(rho.eval(R - 0.5, theta) - theta) <= 1e-12);
    CHECK(std::abs(rho.dtheta(R - 0.5, theta) - 1.0) <= 1e-12);
  }

  // Exact periodicity and monotonicity above the blend window.
  for (double r : {R + eps, R + 1.0, 3 * R}) {
    for (int j = 0; j < 24; ++j) {
      double theta = rho.period * j / 24;
      CHECK(std::abs(rho.eval(r, theta + rho.period) - rho.eval(r, theta) - rho.period) <=
            1e-9);
      CHECK(rho.dtheta(r, theta) > 0.0);
    }
  }

  // At full blend the crossing directions land on the matched zero ladder.
  for (double r : {R + eps, R + 2.0}) {
    std::vector<double> tg = rho.targets(r);
    for (size_t i = 0; i < rho.sources.size(); ++i)
      CHECK(std::abs(rho.eval(r, rho.sources[i]) - tg[i]) <= 1e-12);
  }

  CHECK_NOTHROW(check_rho_drift(rho, R + 1, 5 * R));
}

TEST_CASE("reparametrization of a split four-crossing instance") {
  const double R = 4.0, eps = 0.1;
  TropicalMultiSection ts = load_multisection("criterion8_split_n4.json");
  OuterPotential outer = outer_of(ts, R);
  HyperellipticModel model = series_coefficients({{0.0, 2}}, 1.0);
  RhoMap rho = build_rho(outer, model, R, eps);
  CHECK(rho.period == doctest::Approx(2 * M_PI));
  CHECK(rho.sources.size() == 4);
  std::vector<double> zs = find_zeros(model, R + 1);
  REQUIRE(zs.size() == 4);
  // Matching moves each crossing to a nearby zero, never across the ladder.
  std::vector<double> tg = rho.targets(R + 1);
  for (size_t i = 0; i < tg.size(); ++i)
    CHECK(std::abs(tg[i] - rho.sources[i]) < rho.period / 4);
  CHECK_NOTHROW(check_rho_drift(rho, R + 1, 5 * R));
}

TEST_CASE("zero count mismatch is rejected") {
  const double R = 4.0, eps = 0.1;
  TropicalMultiSection ts = kaneyama_tropicalize(KaneyamaBundle{});
  OuterPotential outer = outer_of(ts, R);
  HyperellipticModel wrong = series_coefficients({{0.0, 2}}, 1.0);
  CHECK_THROWS_WITH_AS(build_rho(outer, wrong, R, eps),
                       doctest::Contains("crossings"), TropError);
}

TEST_CASE("drifting ladders keep the expected decay") {
  HyperellipticModel model =
      series_coefficients({{0.0, 1}, {1.0, 1}, {-1.0, 1}}, 1.0);
  RhoMap rho;
  rho.R = 6.0;
  rho.eps = 0.1;
  rho.period = model.window();
  rho.model = model;
  rho.sources = find_zeros(model, rho.R + 1);
  CHECK_NOTHROW(check_rho_drift(rho, rho.R + 1, 6 * rho.R));
}
