#pragma once

#include <complex>
#include <vector>

#include "troplag/fan.hpp"

namespace troplag {

struct PolyRoot {
  std::complex<double> z;
  int mult = 1;
};

// Angular potential of the exact curve x^cover = f(xi) far from its branch
// points, written in upstairs polar coordinates xi = l^cover with l = r
// e^{i theta}. The primitive of Re[x dxi] along a ray expands as
//
//   phi(r, theta) = a_d^(1/cover) * sum_i c[i] * r^(E_i) * cos(E_i * theta)
//
// with E_i = exponent(i) strictly decreasing; for cover 2 and even d one term
// degenerates to c_log * log r (index log_index). The deck transformation
// acts by theta -> theta + deck_shift on a connected cover and by the branch
// sign on a split one.
struct HyperellipticModel {
  int d = 1;        // polynomial degree
  int cover = 2;    // r in x^cover = f(xi)
  bool even = false;
  double a_d = 1.0;  // leading coefficient, > 0
  bool branch_flipped = false;  // composed with (x, xi) -> (-x, xi)
  std::vector<PolyRoot> roots;
  std::vector<double> monic;  // monic coefficients, monic[i] multiplies xi^i
  std::vector<double> c;      // series coefficients of the monic polynomial
  double c_log = 0.0;
  int log_index = -1;
  double R0 = 2.0;   // validity radius used for tail estimates
  double C_R0 = 0.0; // |phi / (scale r^E0) - c0 cos(E0 theta)| <= C_R0 / r^stride for r >= R0

  double scale() const;            // a_d^(1/cover)
  double exponent(int i) const;    // E_i
  double leading_exponent() const { return exponent(0); }
  int stride() const { return even ? 1 : cover; }  // E_i = E_0 - stride * i
  double deck_shift() const { return even ? 0.0 : M_PI * 2.0 / cover; }
  double window() const { return even ? 2 * M_PI : 2 * M_PI / cover; }

  // branch = +1 or -1 picks the sheet on a split (even) cover; ignored sign
  // otherwise since the connected cover reaches the deck partner by the
  // angle shift.
  double value(double r, double theta, int branch = +1) const;
  double dr(double r, double theta, int branch = +1) const;
  double dtheta(double r, double theta, int branch = +1) const;

  // Difference between the two deck partners over (r, theta).
  double deck_difference(double r, double theta) const;
  double deck_difference_dtheta(double r, double theta) const;

  std::complex<double> f_at(std::complex<double> xi) const;       // full polynomial
  std::complex<double> monic_at(std::complex<double> xi) const;
  std::complex<double> sqrt_f_continuous(std::complex<double> xi,
                                         std::complex<double> near) const;
};

// Builds the model from a root list. Requirements: 0 is a root, every
// multiplicity is 1 or 2, non-real roots come in conjugate pairs, a_d > 0,
// and for cover > 2 the degree is coprime to the cover. Throws
// InadmissiblePolynomial otherwise.
HyperellipticModel series_coefficients(std::vector<PolyRoot> roots, double a_d,
                                       int order = 40, int cover = 2);

// The d+2 angular zeros of the deck difference at radius r, sorted inside
// [0, window()). Throws WrongZeroCount when the count is off (radius too
// small for the series to be single-signed between zeros).
std::vector<double> find_zeros(const HyperellipticModel& m, double r);

struct DriftReport {
  bool pass = false;
  double fitted_exponent = 0;  // decay rate p of |d theta_i / d r| ~ r^-p
  double expected_exponent = 0;
  double max_step = 0;  // largest angular move between consecutive radii
  int steps_used = 0;
  std::vector<double> radii;
};

// Tracks the zero ladder over log-spaced radii in [r_lo, r_hi] and fits the
// decay exponent of the angular drift. Pass iff the fit reaches the
// theoretical rate minus 0.2 (an all-zero drift passes trivially).
DriftReport track_zero_drift(const HyperellipticModel& m, double r_lo, double r_hi,
                             int steps = 40);

}  // namespace troplag
