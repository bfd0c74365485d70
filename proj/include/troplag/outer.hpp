#pragma once

#include <cmath>

#include "troplag/multisection.hpp"

namespace troplag {

// Smoothed potential of the tropical data on the outer region r >= R, in
// upstairs polar coordinates. Away from the corner directions it equals the
// exact piecewise potential r^k (A cos k theta + B sin k theta); inside a
// window of width 2 delta / r around each corner alpha it is blended with the
// damped corner value m_delta * f(alpha):
//
//   w * m_delta * r^k f(alpha) + (1 - w) * r^k f(theta),  w = bump(r (theta - alpha))
//
// where bump is 1 on [-delta/2, delta/2], 0 outside [-delta, delta], and
// C-infinity in between. m_delta < 1 is chosen so the deck differences keep
// their sign and radial monotonicity through the windows.
struct OuterPotential {
  int k = 2;          // radial power and angular frequency
  int sheets = 1;     // 1 connected cover, 2 split pair
  double deck_shift = 0;  // angular deck step on a connected cover
  double R = 4;
  double delta = 0.1;
  double m_delta = 0.9;

  struct Arc {
    double lo = 0, hi = 0;
    Vec2 coeff;
  };
  // Arcs per sheet, sorted by lo, covering one full period starting at the
  // first ray direction.
  std::vector<std::vector<Arc>> arcs;
  std::vector<double> corners;    // kink directions common to the sheet structure
  std::vector<double> crossings;  // deck-difference zeros inside [0, window)

  double window() const { return sheets == 2 ? 2 * M_PI : deck_shift; }

  double f(double theta, int sheet) const;       // piecewise trig profile at r = 1
  double df(double theta, int sheet) const;      // its angular derivative
  double value(double r, double theta, int sheet = 0) const;
  double value_unsmoothed(double r, double theta, int sheet = 0) const;
  double dr(double r, double theta, int sheet = 0) const;
  double dtheta(double r, double theta, int sheet = 0) const;

  double deck_difference(double r, double theta) const;
  double deck_difference_dtheta(double r, double theta) const;
  double deck_difference_dr(double r, double theta) const;

  // Nearest corner of the (merged) corner set, as (corner angle, signed
  // angular offset of theta from it).
  std::pair<double, double> nearest_corner(double theta) const;
};

// C-infinity step: 0 for u <= 0, 1 for u >= 1.
double smoothstep_inf(double u);
double smoothstep_inf_deriv(double u);

// Plateau bump used for the corner windows: 1 on |x| <= delta/2, 0 on
// |x| >= delta.
double corner_bump(double x, double delta);
double corner_bump_deriv(double x, double delta);

// Builds the smoothed outer potential. delta_request = 0 picks a quarter of
// the smallest corner gap; the width is halved until every crossing direction
// clears the corner windows.
OuterPotential smooth_outer(const CircleRestriction& cr, const GenericityReport& gen,
                            double R, double delta_request = 0);

struct RadialSignReport {
  bool ok = true;
  long long samples = 0;
  long long failures = 0;
  double min_alignment = 0;  // min of sign(diff) * d(diff)/dr * r over tested samples
};

// Checks that the deck difference and its radial derivative agree in sign
// wherever the difference is resolvable, on a log-radial sample grid.
RadialSignReport radial_sign_check(const OuterPotential& outer, int r_samples = 24,
                                   int theta_samples = 720, double r_hi_factor = 4.0);

}  // namespace troplag
