#pragma once

#include <array>
#include <utility>

#include "troplag/multisection.hpp"

namespace troplag {

// Equivariant rank-2 bundle on the projective plane presented as the cokernel
// of 1 -> (Z0^a, Z1^b, Z2^c), twisted by a toric divisor and optionally
// dualized. The plane's rays are stored in canonical order [(1,0), (0,1),
// (-1,-1)], i.e. the prime divisors [D1, D2, D0] in homogeneous-coordinate
// numbering; k0, k1, k2 are the twist coefficients of D0, D1, D2.
struct KaneyamaBundle {
  long long a = 1, b = 1, c = 1;
  long long k0 = 0, k1 = 0, k2 = 0;
  bool dual = false;

  friend bool operator==(const KaneyamaBundle&, const KaneyamaBundle&) = default;

  // Dualizing is the same as twisting down by a*D0 + b*D1 + c*D2, so every
  // bundle in the family has a unique non-dual normal form.
  KaneyamaBundle canonical() const;
  bool equivalent(const KaneyamaBundle& o) const;
};

Fan p2_fan();

// Torus weights of the fiber over the fixed point of each maximal cone
// (cone 0 = <D1,D2> chart, cone 1 = <D2,D0>, cone 2 = <D0,D1>).
std::array<std::pair<Vec2, Vec2>, 3> fixed_point_characters(const KaneyamaBundle& kb);

// The tropical multi-section carrying the fixed-point weights as slopes, with
// sheets matched across rays by their common restriction. Always a connected
// (MaximalO) double cover for this family.
TropicalMultiSection kaneyama_tropicalize(const KaneyamaBundle& kb);

// Inverse of tropicalization on its image: recovers the normal form of the
// unique family member with the given weight data. Throws NotInFamily when
// the data did not come from the family, AmbiguousMatch if the normal form
// were not unique.
KaneyamaBundle rigidity_invert(const TropicalMultiSection& ts);

struct MirrorSummary {
  KaneyamaBundle bundle;
  int N = 0;
  int d = 0;
  TopologyPrediction topology;
  ExtPrediction ext;
  bool exact_filling = false;
};

MirrorSummary mirror_summary(const KaneyamaBundle& kb);

}  // namespace troplag
