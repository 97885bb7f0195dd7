#pragma once

#include "ckg/kg/ntriples.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace ckg::testing {

inline std::string fixture_path(const std::string& rel) { return std::string(CKG_FIXTURES_DIR) + "/" + rel; }

inline std::string read_fixture(const std::string& rel) {
    std::ifstream in(fixture_path(rel), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + rel);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline kg::Graph fixture_graph() { return kg::read_ntriples_file(fixture_path("ckg.nt")); }

}  // namespace ckg::testing
