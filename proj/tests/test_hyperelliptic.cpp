#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "troplag/hyperelliptic.hpp"

using namespace troplag;
using cplx = std::complex<double>;

namespace {

cplx unit(double t) { return {std::cos(t), std::sin(t)}; }

// Base-plane point and its radial velocity for the upstairs polar ray
// (t, theta). Connected covers square the upstairs coordinate.
void path_at(const HyperellipticModel& m, double t, double theta, cplx& xi,
             cplx& dxi) {
  if (m.even) {
    xi = t * unit(theta);
    dxi = unit(theta);
  } else {
    xi = t * t * unit(2 * theta);
    dxi = 2.0 * t * unit(2 * theta);
  }
}

// Asymptotic branch of x at large radius, used to seed the continuous root.
cplx asym_branch(const HyperellipticModel& m, double t, double theta, int branch) {
  if (m.even)
    return static_cast<double>(branch) * m.scale() *
           std::pow(t * unit(theta), m.d / 2);
  return m.scale() * std::pow(t * unit(theta), m.d);
}

// Simpson integral of Re[x dxi] along the upstairs ray from t = a to t = b,
// with the branch of x tracked continuously from the asymptotic seed.
double quadrature_increment(const HyperellipticModel& m, double theta, int branch,
                            double a, double b, int panels = 4096) {
  const int nodes = 2 * panels + 1;
  const double h = (b - a) / (nodes - 1);
  std::vector<double> g(nodes);
  cplx near = asym_branch(m, a, theta, branch);
  for (int j = 0; j < nodes; ++j) {
    double t = a + h * j;
    cplx xi, dxi;
    path_at(m, t, theta, xi, dxi);
    cplx x = m.sqrt_f_continuous(xi, near);
    near = x;
    g[j] = (x * dxi).real();
  }
  double s = g[0] + g[nodes - 1];
  for (int j = 1; j < nodes - 1; ++j) s += g[j] * (j % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

HyperellipticModel model_of(std::vector<PolyRoot> roots, double a_d = 1.0) {
  return series_coefficients(std::move(roots), a_d);
}

}  // namespace

TEST_CASE("series coefficients of the five reference polynomials") {
  // f = xi
  HyperellipticModel lin = model_of({{0.0, 1}});
  CHECK(lin.d == 1);
  CHECK_FALSE(lin.even);
  CHECK(lin.leading_exponent() == doctest::Approx(3.0));
  CHECK(lin.stride() == 2);
  CHECK(lin.deck_shift() == doctest::Approx(M_PI));
  CHECK(lin.window() == doctest::Approx(M_PI));
  CHECK(lin.c[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  for (size_t i = 1; i < lin.c.size(); ++i) CHECK(lin.c[i] == 0.0);
  CHECK(lin.R0 == doctest::Approx(2.0));
  CHECK(lin.C_R0 == doctest::Approx(0.0));

  // f = xi (xi^2 - 1)
  HyperellipticModel cub = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}});
  CHECK(cub.d == 3);
  CHECK(cub.leading_exponent() == doctest::Approx(5.0));
  CHECK(cub.exponent(2) == doctest::Approx(1.0));
  CHECK(cub.c[0] == doctest::Approx(2.0 / 5.0).epsilon(1e-12));
  CHECK(cub.c[1] == doctest::Approx(0.0));
  CHECK(cub.c[2] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(cub.c[3] == doctest::Approx(0.0));
  CHECK(cub.c[4] == doctest::Approx(1.0 / 12.0).epsilon(1e-12));

  // f = xi (xi^2 - 1)(xi^2 - 4)
  HyperellipticModel quint =
      model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}, {2.0, 1}, {-2.0, 1}});
  CHECK(quint.d == 5);
  CHECK(quint.leading_exponent() == doctest::Approx(7.0));
  CHECK(quint.c[0] == doctest::Approx(2.0 / 7.0).epsilon(1e-12));
  CHECK(quint.R0 == doctest::Approx(6.0));
  CHECK(quint.monic == std::vector<double>{0, 4, 0, -5, 0, 1});

  // f = xi^2 + xi, the split quadratic with a log term
  HyperellipticModel quad = model_of({{0.0, 1}, {-1.0, 1}});
  CHECK(quad.d == 2);
  CHECK(quad.even);
  CHECK(quad.stride() == 1);
  CHECK(quad.deck_shift() == 0.0);
  CHECK(quad.window() == doctest::Approx(2 * M_PI));
  CHECK(quad.leading_exponent() == doctest::Approx(2.0));
  CHECK(quad.c[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quad.c[1] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(quad.log_index == 2);
  CHECK(quad.c_log == doctest::Approx(-1.0 / 8.0).epsilon(1e-12));
  CHECK(quad.c[3] == doctest::Approx(-1.0 / 16.0).epsilon(1e-12));

  // f = xi (xi - 1)(xi - 2)(xi - 3)
  HyperellipticModel quart = model_of({{0.0, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}});
  CHECK(quart.d == 4);
  CHECK(quart.even);
  CHECK(quart.leading_exponent() == doctest::Approx(3.0));
  CHECK(quart.monic == std::vector<double>{0, -6, 11, -6, 1});
  CHECK(quart.c[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(quart.c[1] == doctest::Approx(-3.0 / 2.0).epsilon(1e-12));
}

TEST_CASE("the closed form of the split quadratic potential") {
  HyperellipticModel quad = model_of({{0.0, 1}, {-1.0, 1}});
  for (double r : {50.0, 100.0, 400.0}) {
    double exact = r * r / 2 + r / 2 - std::log(r) / 8 - 1.0 / (16 * r);
    CHECK(std::abs(quad.value(r, 0.0, +1) - exact) <= 1e-4);
    CHECK(quad.value(r, 0.0, -1) == doctest::Approx(-quad.value(r, 0.0, +1)));
  }
}

TEST_CASE("radial derivative equals Re[x dxi/dr] pointwise") {
  std::vector<HyperellipticModel> models = {
      model_of({{0.0, 1}}),
      model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}}),
      model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}, {2.0, 1}, {-2.0, 1}}),
      model_of({{0.0, 1}, {-1.0, 1}}),
      model_of({{0.0, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}}),
      model_of({{0.0, 1}, {cplx(0.0, 1.0), 1}, {cplx(0.0, -1.0), 1}}, 2.5),
  };
  for (const auto& m : models) {
    for (double t : {9.0, 14.0}) {
      for (double theta : {0.3, 1.1, 2.0}) {
        for (int branch : {+1, -1}) {
          if (!m.even && branch < 0) continue;
          cplx xi, dxi;
          path_at(m, t, theta, xi, dxi);
          cplx x = m.sqrt_f_continuous(xi, asym_branch(m, t, theta, branch));
          double lhs = m.dr(t, theta, branch);
          double rhs = (x * dxi).real();
          double sc = std::max(1.0, std::abs(rhs));
          CHECK(std::abs(lhs - rhs) <= 1e-8 * sc);
        }
      }
    }
  }
}

TEST_CASE("angular derivative equals Re[x dxi/dtheta] pointwise") {
  HyperellipticModel cub = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}});
  HyperellipticModel quart = model_of({{0.0, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}});
  for (const HyperellipticModel* mp : {&cub, &quart}) {
    const auto& m = *mp;
    for (double theta : {0.2, 1.7}) {
      double t = 11.0;
      cplx xi, dxi;
      path_at(m, t, theta, xi, dxi);
      cplx x = m.sqrt_f_continuous(xi, asym_branch(m, t, theta, +1));
      cplx dxi_dtheta = cplx(0.0, m.even ? 1.0 : 2.0) * xi;
      double rhs = (x * dxi_dtheta).real();
      double sc = std::max(1.0, std::abs(rhs));
      CHECK(std::abs(m.dtheta(t, theta, +1) - rhs) <= 1e-8 * sc);
    }
  }
}

TEST_CASE("series increments match the independent quadrature") {
  std::vector<HyperellipticModel> models = {
      model_of({{0.0, 1}}),
      model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}}),
      model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}, {2.0, 1}, {-2.0, 1}}),
      model_of({{0.0, 1}, {-1.0, 1}}),
      model_of({{0.0, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}}),
  };
  for (const auto& m : models) {
    for (double theta : {0.3, 1.1, 2.0}) {
      for (int branch : {+1, -1}) {
        if (!m.even && branch < 0) continue;
        double lhs = m.value(16.0, theta, branch) - m.value(8.0, theta, branch);
        double rhs = quadrature_increment(m, theta, branch, 8.0, 16.0);
        double sc = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        CHECK(std::abs(lhs - rhs) <= 1e-6 * sc);
      }
    }
  }
}

TEST_CASE("deck difference conventions") {
  HyperellipticModel cub = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}});
  for (double theta : {0.0, 0.7, 2.9}) {
    double d = cub.deck_difference(10.0, theta);
    CHECK(d == doctest::Approx(cub.value(10.0, theta) -
                               cub.value(10.0, theta + cub.deck_shift())));
    CHECK(cub.deck_difference(10.0, theta + cub.deck_shift()) == doctest::Approx(-d));
  }
  HyperellipticModel quad = model_of({{0.0, 1}, {-1.0, 1}});
  for (double theta : {0.0, 0.7}) {
    CHECK(quad.deck_difference(10.0, theta) ==
          doctest::Approx(2 * quad.value(10.0, theta, +1)));
  }
}

TEST_CASE("branch flip and leading rescale act as expected") {
  HyperellipticModel cub = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}});
  HyperellipticModel flipped = cub;
  flipped.branch_flipped = !flipped.branch_flipped;
  CHECK(flipped.value(9.0, 1.3) == doctest::Approx(-cub.value(9.0, 1.3)));

  HyperellipticModel scaled = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}}, 0.25);
  double factor = std::pow(0.25, 0.5);
  CHECK(scaled.value(9.0, 1.3) == doctest::Approx(factor * cub.value(9.0, 1.3)));

  auto za = find_zeros(cub, 10.0);
  auto zb = find_zeros(scaled, 10.0);
  REQUIRE(za.size() == zb.size());
  for (size_t i = 0; i < za.size(); ++i) CHECK(std::abs(za[i] - zb[i]) <= 1e-10);
}

TEST_CASE("the deck difference has d + 2 zeros per fundamental window") {
  for (auto roots : std::vector<std::vector<PolyRoot>>{
           {{0.0, 1}},
           {{0.0, 1}, {1.0, 1}, {-1.0, 1}},
           {{0.0, 1}, {1.0, 1}, {-1.0, 1}, {2.0, 1}, {-2.0, 1}},
           {{0.0, 1}, {-1.0, 1}},
           {{0.0, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}},
       }) {
    HyperellipticModel m = model_of(roots);
    double r = 2.5 * m.R0;
    std::vector<double> zs = find_zeros(m, r);
    REQUIRE(static_cast<int>(zs.size()) == m.d + 2);
    for (size_t i = 0; i < zs.size(); ++i) {
      CHECK(zs[i] >= 0.0);
      CHECK(zs[i] < m.window());
      if (i) CHECK(zs[i] > zs[i - 1]);
      double scale_at = m.scale() * std::pow(r, m.leading_exponent());
      CHECK(std::abs(m.deck_difference(r, zs[i])) <= 1e-6 * scale_at);
    }
    // One sign per gap between consecutive zeros.
    for (size_t i = 0; i < zs.size(); ++i) {
      double lo = zs[i];
      double hi = i + 1 < zs.size() ? zs[i + 1] : zs[0] + m.window();
      int sign = 0;
      for (int j = 1; j < 40; ++j) {
        double th = lo + (hi - lo) * j / 40.0;
        double v = m.deck_difference(r, th);
        int s = (v > 0) - (v < 0);
        if (s == 0) continue;
        if (sign == 0) sign = s;
        CHECK(s == sign);
      }
    }
  }
}

TEST_CASE("zero count failures are reported") {
  HyperellipticModel quint =
      model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}, {2.0, 1}, {-2.0, 1}});
  CHECK_THROWS_AS(find_zeros(quint, 0.5), TropError);
  try {
    find_zeros(quint, 0.5);
  } catch (const TropError& e) {
    CHECK(e.code == ErrorCode::WrongZeroCount);
  }
}

TEST_CASE("inadmissible polynomials are rejected") {
  auto code_of = [](std::vector<PolyRoot> roots, double a_d = 1.0, int cover = 2) {
    try {
      series_coefficients(std::move(roots), a_d, 40, cover);
    } catch (const TropError& e) {
      return e.code;
    }
    return ErrorCode::ParseError;  // sentinel: no throw
  };
  CHECK(code_of({{1.0, 1}}) == ErrorCode::InadmissiblePolynomial);           // no root at 0
  CHECK(code_of({{0.0, 3}}) == ErrorCode::InadmissiblePolynomial);           // mult 3
  CHECK(code_of({{0.0, 1}, {cplx(0, 1), 1}}) == ErrorCode::InadmissiblePolynomial);
  CHECK(code_of({{0.0, 1}}, -1.0) == ErrorCode::InadmissiblePolynomial);     // a_d <= 0
  CHECK(code_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}}, 1.0, 3) ==
        ErrorCode::InadmissiblePolynomial);                                  // gcd(3,3) != 1
  // Valid data does not throw.
  CHECK(code_of({{0.0, 1}, {cplx(0, 1), 1}, {cplx(0, -1), 1}}) == ErrorCode::ParseError);
  CHECK(code_of({{0.0, 2}}) == ErrorCode::ParseError);
}

TEST_CASE("a degree-one triple cover") {
  HyperellipticModel m = series_coefficients({{0.0, 1}}, 8.0, 40, 3);
  CHECK(m.cover == 3);
  CHECK(m.stride() == 3);
  CHECK(m.scale() == doctest::Approx(2.0));
  CHECK(m.leading_exponent() == doctest::Approx(4.0));
  CHECK(m.c[0] == doctest::Approx(3.0 / 4.0).epsilon(1e-12));
  CHECK(m.deck_shift() == doctest::Approx(2 * M_PI / 3));
  CHECK(m.window() == doctest::Approx(2 * M_PI / 3));
}

TEST_CASE("zero ladders drift no faster than the tail allows") {
  HyperellipticModel lin = model_of({{0.0, 1}});
  DriftReport r1 = track_zero_drift(lin, 8.0, 80.0);
  CHECK(r1.pass);  // single-term model: the ladder does not move at all
  CHECK(r1.max_step <= 1e-12);

  HyperellipticModel cub = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}});
  DriftReport r2 = track_zero_drift(cub, 8.0, 80.0);
  CHECK(r2.pass);
  CHECK(r2.expected_exponent == doctest::Approx(3.0));
  CHECK(r2.fitted_exponent >= 2.8);
  CHECK(r2.steps_used >= 30);

  HyperellipticModel quart = model_of({{0.0, 1}, {1.0, 1}, {2.0, 1}, {3.0, 1}});
  DriftReport r3 = track_zero_drift(quart, 10.0, 100.0);
  CHECK(r3.pass);
  CHECK(r3.expected_exponent == doctest::Approx(2.0));
}

TEST_CASE("continuous square roots follow the branch") {
  HyperellipticModel cub = model_of({{0.0, 1}, {1.0, 1}, {-1.0, 1}});
  cplx x4 = cub.sqrt_f_continuous(4.0, 8.0);
  CHECK(x4.real() == doctest::Approx(std::sqrt(60.0)));
  cplx x4n = cub.sqrt_f_continuous(4.0, -8.0);
  CHECK(x4n.real() == doctest::Approx(-std::sqrt(60.0)));

  // A loop around the simple root at 1 swaps the branches.
  cplx center(1.0, 0.0);
  double rad = 0.5;
  cplx x = cub.sqrt_f_continuous(center + rad, cplx(1.0, 0.0));
  cplx x_start = x;
  for (int j = 1; j <= 64; ++j) {
    cplx p = center + rad * unit(2 * M_PI * j / 64);
    x = cub.sqrt_f_continuous(p, x);
  }
  CHECK(std::abs(x + x_start) <= 1e-9 * std::abs(x_start));
}
