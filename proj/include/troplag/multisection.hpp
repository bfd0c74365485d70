#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "troplag/fan.hpp"

namespace troplag {

// Covering type of the domain over the circle of directions.
//   MaximalO:   the domain circle is connected and covers r:1, with cyclic
//               deck group; upstairs angle theta maps to r*theta downstairs.
//   SplitPairE: r = 2 and the domain is two disjoint circles, each mapping
//               1:1; the deck action swaps the sheets.
enum class CoveringKind { MaximalO, SplitPairE };

// Lift of a maximal cone: an affine chart of the multi-section carrying a
// single integral slope.
struct Lift {
  int cone = 0;
  int sheet = 0;
  Vec2 slope;
  int mult = 1;
};

// Lift of a ray together with the two adjacent maximal-cone lifts it bounds.
// lower sits over cone (ray-1 mod n), upper over cone (ray mod n).
struct RayLift {
  int ray = 0;
  int sheet = 0;
  int mult = 1;
  std::pair<int, int> lower;  // (cone, sheet)
  std::pair<int, int> upper;  // (cone, sheet)
};

struct TropicalMultiSection {
  Fan fan;
  int degree = 2;  // number of sheets r
  CoveringKind kind = CoveringKind::MaximalO;
  std::vector<Lift> lifts;
  std::vector<RayLift> adjacency;

  int lift_index(int cone, int sheet) const;  // -1 when absent
  const Lift& lift(int cone, int sheet) const;
};

struct Violation {
  ErrorCode code;
  std::string what;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
  // Sheet cycles over the circle of directions, as lift indices in
  // counterclockwise walking order. MaximalO: one cycle of length r*n.
  // SplitPairE: two cycles of length n. Populated only when structurally
  // walkable.
  std::vector<std::vector<int>> cycles;
};

// Structural validation: multiplicity counts over every cone, slope agreement
// along shared rays, adjacency bookkeeping, and the covering structure
// declared by `kind`. Collects violations instead of throwing.
ValidationReport validate(const TropicalMultiSection& ts);

// Restriction of the tropical potential to the circle at infinity, pulled
// back to the covering circle(s). On the arc over window [lo, hi) the
// potential is r^k (A cos(k theta) + B sin(k theta)) with (A,B) the slope of
// the arc's chart and k the covering degree (k = 1 on a split sheet).
struct CircleRestriction {
  int k = 2;
  double deck_shift = 0;  // upstairs angle shift of the deck generator (0 for split)
  struct Arc {
    int cycle = 0;  // which domain circle (0, or 0/1 for SplitPairE)
    int cone = 0;
    int sheet = 0;
    Vec2 coeff;
    double lo = 0, hi = 0;  // upstairs window
    Vec2 dir_lo, dir_hi;    // exact downstairs ray directions of the window ends
  };
  std::vector<Arc> arcs;  // ordered by cycle, then by lo
};

CircleRestriction circle_restriction(const TropicalMultiSection& ts);

// One transversal crossing of two deck translates of the potential graph.
struct Crossing {
  int arc = 0;          // downstairs maximal cone, or ray index when on_ray
  bool on_ray = false;  // crossing sits exactly on a ray both sheets pass smoothly
  Vec2 direction;       // exact primitive downstairs direction of the crossing
  int trip_a = 0, trip_b = 0;  // deck translates involved (0..r-1); 0/1 = the two split sheets
};

enum class GenericityFailure {
  None,
  CornerHit,         // crossing at a direction where a sheet has a kink
  CoincidingGraphs,  // two translates share a whole arc
  TangentTouch,      // zero on a ray without a sign change
  UnbalancedPairs,   // r >= 3: translate pairs disagree on crossing counts
};

struct GenericityReport {
  bool ok = false;
  int N = 0;  // crossings per deck pair
  std::vector<int> pair_counts;
  std::vector<Crossing> crossings;
  GenericityFailure failure = GenericityFailure::None;
  std::string detail;
};

// Exact integer count of the pairwise transversal crossings between deck
// translates of the circle restriction. Fails (ok = false) rather than
// throwing when the data is non-generic.
GenericityReport genericity_count(const TropicalMultiSection& ts);

enum class Realizable { Yes, No, Unknown };

struct RealizabilityVerdict {
  Realizable verdict = Realizable::Unknown;
  int N = 0;
  int d = 0;  // polynomial degree of the chosen smoothing model; 0 = none needed
  bool trivial = false;  // split pair realized by two disjoint sections
  std::string reason;
};

// Decides whether the multi-section is the boundary datum of an embedded (or,
// for split pairs, immersed) exact Lagrangian, and picks the model degree d.
RealizabilityVerdict realizability(const TropicalMultiSection& ts, int d_max = 0);

struct TopologyPrediction {
  int genus = 0;
  int punctures = 0;
  int b0 = 1, b1 = 0, b2 = 0;
};

struct ExtPrediction {
  int ext0 = 0, ext1 = 0, ext2 = 0;
};

// Surface topology of the realizing Lagrangian, from the covering kind and
// the crossing count N.
TopologyPrediction topology_from_N(CoveringKind kind, int N);
TopologyPrediction topology_prediction(const TropicalMultiSection& ts);

// Endomorphism-algebra dimensions predicted for the mirror object.
ExtPrediction ext_from_N(int N);
ExtPrediction ext_prediction(const TropicalMultiSection& ts);

// Conical Lagrangian spanned by the multi-section: one stratum per lift with
// its slope as base covector, plus the origin stratum (one per domain circle).
ConicalLagrangian tropical_conical_lagrangian(const TropicalMultiSection& ts);

// Twist by a toric divisor: adds the divisor's per-cone character to every
// slope. Keeps validity and shifts all graphs in lockstep, so crossing data
// is unchanged.
TropicalMultiSection twist(const TropicalMultiSection& ts, const ToricDivisor& d);

// Uniform random valid multi-section over the fan, slopes within the given
// box, resampled until it is generic. Used for property testing.
TropicalMultiSection random_multisection(const Fan& fan, CoveringKind kind,
                                         uint64_t seed, long long slope_box = 5,
                                         int degree = 2);

}  // namespace troplag
