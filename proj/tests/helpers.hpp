#pragma once

#include <string>

#include "troplag/json_io.hpp"

namespace troplag::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(TROPLAG_TESTDATA) + "/" + name;
}

inline std::string fixture(const std::string& name) {
  return read_file(fixture_path(name));
}

inline TropicalMultiSection load_multisection(const std::string& name) {
  return multisection_from_json(fixture(name));
}

}  // namespace troplag::testing
