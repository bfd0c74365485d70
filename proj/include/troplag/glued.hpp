#pragma once

#include <complex>
#include <optional>

#include "troplag/rho.hpp"

namespace troplag {

// Potential interpolating between the reparametrized model (inside) and the
// smoothed tropical potential (outside):
//
//   phi(r, theta) = chi(r) phi_outer + (1 - chi(r)) phi_model(r, rho(r, theta))
//
// chi is exactly 0 up to R + eps and exactly 1 from R + 1 on, so each side is
// evaluated bitwise-exactly in its own region.
struct GluedPotential {
  OuterPotential outer;
  HyperellipticModel model;  // final leading coefficient and branch flip
  RhoMap rho;
  double R = 4, eps = 0.1;
  double a_d_initial = 1;
  int halvings = 0;

  int sheets() const { return outer.sheets; }
  double window() const { return outer.window(); }
  double chi(double r) const;

  // Inner part evaluated through a prebuilt reparametrization row (callers
  // iterating over a grid keep one row per radius).
  double inner_value(const RhoRow& row, double r, double theta, int sheet) const;
  double value(double r, double theta, int sheet = 0) const;
  double deck_difference(double r, double theta) const;
};

// Aligns the model branch with the outer difference, then halves the leading
// coefficient until the reparametrized model difference is dominated by the
// outer difference on the handover annulus [R + eps, R + 1] away from the
// crossing bands. Throws ShrinkExhausted after 60 halvings and
// GluingInconsistent when the angular slopes at a crossing disagree in sign.
GluedPotential glue(const OuterPotential& outer, const HyperellipticModel& model,
                    const RhoMap& rho, double a_d_initial = 1.0);

enum class Verdict { Certified, Violated, Inconclusive };

const char* verdict_name(Verdict v);

struct CellRef {
  int i = -1, j = -1;
  double r0 = 0, r1 = 0, t0 = 0, t1 = 0;
  double margin = 0;
};

struct EmbeddednessCertificate {
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0;  // smallest certified cell margin
  CellRef worst;
  int nr = 0, ntheta = 0;
  double r_lo = 0, r_hi = 0;
  long long cells = 0;
  double seconds = 0;
};

// Grid certificate that the two deck partners never share a cotangent fiber
// over [r_lo, r_hi]: on every cell, one of the two residual channels
// (angular and radial derivative of the deck difference) stays away from zero
// by a sampled-Lipschitz margin. `parallel` switches the OpenMP kernel; the
// serial kernel is kept as the reference implementation.
EmbeddednessCertificate verify_embedding(const GluedPotential& gp, int nr, int ntheta,
                                         double r_lo, double r_hi, bool parallel = true);

struct ImmersedPointReport {
  std::complex<double> xi;  // double root of the model polynomial
  std::complex<double> g0;  // branch slope: the local model is dx = +-g0 dxi
  double angle1 = 0, angle2 = 0;  // canonical intersection angles in (0, pi)
  double angle_sum = 0;           // always pi for a pair of Lagrangian planes
  int degree = 1;
  int degree_other = 1;
};

// Canonical angles between the Lagrangian planes {dx = g0 dxi} and
// {dx = -g0 dxi} in complex coordinates (xi1 + i x1, xi2 + i x2).
std::pair<double, double> lagrangian_tangent_angles(std::complex<double> g0);

// One report per double root; the realized surface touches itself exactly
// there.
std::vector<ImmersedPointReport> immersed_points(const GluedPotential& gp);

struct CloudPoint {
  double r = 0, theta = 0;
  double xi1 = 0, xi2 = 0;
  double x1 = 0, x2 = 0;
  int sheet = 0;
};

struct Cloud {
  std::vector<CloudPoint> pts;
  int n_rows = 0, n_theta = 0;
  int inner_rows = 0;
  long long branch_points_skipped = 0;
  double seam_r = 0;
  double seam_mismatch = 0;  // |gradient point - exact curve point| at the seam
};

// Samples the realized Lagrangian: below R from the exact model curve
// (complex square-root continuation down each angular column), above R from
// the gradient of the glued potential.
Cloud sample_lagrangian(const GluedPotential& gp, int n_rows, int n_theta,
                        double r_max, double r_min = 0);

struct CollisionReport {
  long long compared = 0;
  long long collisions = 0;
  double min_x_gap = 0;  // smallest fiber gap among compared non-neighbor pairs
  std::vector<std::pair<int, int>> pairs;
  double seconds = 0;
};

// Independent all-pairs self-intersection scan of a sampled cloud: points
// whose base points xi agree within the local sample spacing are compared in
// the fiber. Pairs adjacent in the sample grid and pairs inside the expected
// touching zone of a double root are excluded. `parallel` as above.
CollisionReport collision_scan(const Cloud& cloud, const GluedPotential& gp,
                               bool parallel = true);

}  // namespace troplag
