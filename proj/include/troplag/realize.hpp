#pragma once

#include <optional>

#include "troplag/glued.hpp"
#include "troplag/multisection.hpp"

namespace troplag {

struct RealizeOptions {
  double R_override = 0;  // 0 = choose from the series tail bound
  double eps = 0.1;       // handover width, in (0, 1)
  int series_order = 40;
  double a_d_initial = 1.0;
  std::vector<PolyRoot> roots;  // empty = simple roots 0, 1, ..., d-1
  int grid_nr = 400, grid_ntheta = 400;
  double r_far = 0;  // outer certification radius, 0 = R + 5
  int drift_steps = 24;
  int cloud_rows = 0, cloud_cols = 0;  // 0 = skip sampling and the scan
  bool parallel = true;
};

struct RealizeResult {
  ValidationReport validation;
  GenericityReport genericity;
  RealizabilityVerdict verdict;
  TopologyPrediction topology;
  ExtPrediction ext;
  bool predicted = false;  // topology and ext fields are meaningful

  bool built = false;  // a numerical potential was constructed
  std::optional<GluedPotential> glued;
  EmbeddednessCertificate certificate;
  DriftReport drift;
  std::vector<double> zero_radii;
  std::vector<std::vector<double>> zeros;
  std::vector<ImmersedPointReport> immersed;

  std::optional<Cloud> cloud;
  CollisionReport scan;
  bool scanned = false;
};

// Full pipeline: validate, count crossings, decide realizability, and for
// double covers build the smoothed potential, certify embeddedness, track the
// zero drift, and optionally sample the surface and run the collision scan.
// Degrees above 2 stop after the combinatorial verdict.
RealizeResult realize(const TropicalMultiSection& ts, const RealizeOptions& opt = {});

// Simple roots 0, 1, ..., d-1.
std::vector<PolyRoot> default_roots(int d);

// Radius where the leading series term dominates the tail estimate with
// margin.
double choose_gluing_radius(const HyperellipticModel& m);

}  // namespace troplag
