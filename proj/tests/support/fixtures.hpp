#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "pcp/algebra.hpp"
#include "pcp/presentation.hpp"
#include "pcp/text_format.hpp"

namespace pcp::testing {

inline std::string fixture_path(const std::string& name) { return std::string(PCP_FIXTURE_DIR) + "/" + name + ".pcp"; }

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GroupPresentation group_fixture(const std::string& name) {
  return prepare(to_group_raw(parse_document(read_fixture(name))));
}

inline AlgebraPresentation algebra_fixture(const std::string& name) {
  return validate_algebra(to_algebra_raw(parse_document(read_fixture(name))));
}

inline GroupPresentation group_from(const std::string& text) { return prepare(to_group_raw(parse_document(text))); }

inline AlgebraPresentation algebra_from(const std::string& text) {
  return validate_algebra(to_algebra_raw(parse_document(text)));
}

}  // namespace pcp::testing
