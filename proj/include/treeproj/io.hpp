#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "treeproj/topology.hpp"
#include "treeproj/types.hpp"

namespace treeproj {

/// One decimal coefficient per line; blank lines and lines starting with '#'
/// are ignored. Throws std::runtime_error with a line diagnostic on malformed
/// input.
std::vector<double> read_coefficients(std::istream& in);
std::vector<double> read_coefficients_file(const std::string& path);

/// J such that count = d^J with J >= 2. Throws std::runtime_error with the
/// offending length otherwise.
std::int64_t infer_levels(std::int64_t d, std::int64_t count);

/// Result document for the project/gta commands. Field order is fixed so that
/// identical inputs serialize byte-identically.
nlohmann::ordered_json result_document(const TreeTopology& t, std::int64_t k,
                                       const ProjectionResult& result,
                                       std::int64_t bound);

}  // namespace treeproj
