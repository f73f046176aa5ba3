#pragma once

#include <cstdint>

#include "treeproj/topology.hpp"
#include "treeproj/types.hpp"

namespace treeproj {

/// Greedy tree approximation: grow the support from the root, repeatedly
/// adding the frontier node of maximum squared coefficient (smallest id on
/// ties). Always yields a valid rooted tree of cardinality k, but not
/// necessarily the optimum. Operation counters are left at zero.
ProjectionResult gta_project(const TreeTopology& t, const Signal& y, std::int64_t k);

}  // namespace treeproj
