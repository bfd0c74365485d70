#pragma once

#include <string>

#include "troplag/glued.hpp"
#include "troplag/multisection.hpp"

namespace troplag {

// Deterministic 640x640 renderings (fixed sampling, %.6g coordinates), so
// repeated runs produce byte-identical files. Throw EmptySubject when there
// is nothing to draw.

// Rays of the fan with the unit circle.
std::string fan_to_svg(const Fan& fan);

// Polar profiles of the deck translates of the circle restriction, with the
// crossing directions marked.
std::string multisection_to_svg(const TropicalMultiSection& ts);

// Downstairs scatter of a sampled surface, colored by sheet. Large clouds are
// subsampled to at most max_points.
std::string cloud_to_svg(const Cloud& cloud, int max_points = 20000);

}  // namespace troplag
