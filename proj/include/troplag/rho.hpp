#pragma once

#include "troplag/hyperelliptic.hpp"
#include "troplag/outer.hpp"

namespace troplag {

// Monotone C^1 piecewise cubic through strictly increasing knots, with
// Fritsch-Butland tangents. Evaluation outside the knot range extends
// linearly with the end tangents.
struct MonotoneCubic {
  std::vector<double> x, y, m;

  static MonotoneCubic build(std::vector<double> x, std::vector<double> y);
  double eval(double t) const;
  double deriv(double t) const;
};

// One radius slice of the angular reparametrization: a periodic monotone map
// sending the outer crossing directions toward the model's deck-difference
// zeros at this radius.
struct RhoRow {
  double r = 0;
  double period = M_PI;
  MonotoneCubic map;  // built over three periods, evaluated in the middle one
  double eval(double theta) const;
  double deriv(double theta) const;
};

struct RhoMap {
  double R = 4, eps = 0.1;
  double period = M_PI;        // pi connected double cover, 2 pi split pair
  std::vector<double> sources;  // outer crossing angles in [0, period)
  int shift = 0;               // source i matches zero (i + shift) mod N ...
  double wind = 0;             // ... lifted by this angle
  // Model snapshot used only for its zero ladder; later rescalings of the
  // leading coefficient and branch flips leave the zeros unchanged.
  HyperellipticModel model;

  double blend(double r) const;  // 0 for r <= R, 1 for r >= R + eps
  std::vector<double> targets(double r) const;  // matched zero ladder at radius r
  RhoRow row(double r) const;
  double eval(double r, double theta) const;
  double dtheta(double r, double theta) const;
};

// Chooses the cyclic matching between the outer crossings and the model zeros
// (least total squared displacement) and verifies monotone rows on a sample
// of radii. Throws GluingInconsistent when the counts disagree and
// MonotonicityFailure when a sampled row is not strictly monotone.
RhoMap build_rho(const OuterPotential& outer, const HyperellipticModel& model,
                 double R, double eps);

// Sampled decay check of the row movement: max_i |rho(r, theta_i) -
// rho(r', theta_i)| / |r - r'| must fall at least like r^-(stride + 1).
// Throws DriftBoundViolated when the fitted rate is short by more than 0.2.
void check_rho_drift(const RhoMap& rho, double r_lo, double r_hi, int steps = 24);

}  // namespace troplag
