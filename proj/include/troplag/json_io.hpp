#pragma once

#include <string>

#include "troplag/kaneyama.hpp"
#include "troplag/realize.hpp"

namespace troplag {

// JSON document formats. Every top-level document carries
// {"schema": "troplag/1", "type": <kind>}; readers throw ParseError on
// malformed input, missing tags, or structurally invalid data.

// The "type" tag of a document, for dispatch.
std::string document_type(const std::string& text);

Fan fan_from_json(const std::string& text);
std::string fan_to_json(const Fan& fan);

TropicalMultiSection multisection_from_json(const std::string& text);
std::string multisection_to_json(const TropicalMultiSection& ts);

KaneyamaBundle bundle_from_json(const std::string& text);
std::string bundle_to_json(const KaneyamaBundle& kb);

std::string validation_to_json(const ValidationReport& rep);
std::string genericity_to_json(const GenericityReport& rep);
std::string certificate_to_json(const EmbeddednessCertificate& cert);
std::string collision_to_json(const CollisionReport& rep);
std::string realize_to_json(const RealizeResult& res);
std::string mirror_to_json(const MirrorSummary& s);

// Column layout: r,theta,xi1,xi2,x1,x2,sheet
std::string cloud_to_csv(const Cloud& cloud);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace troplag
