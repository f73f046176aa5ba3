#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "treeproj/topology.hpp"
#include "treeproj/types.hpp"

namespace treeproj {

/// Thrown when an enumeration would produce more supports than the caller's
/// ceiling allows.
struct enumeration_limit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultEnumerationCeiling = 10'000'000;

/// Number of rooted trees of cardinality k, saturating instead of overflowing.
std::uint64_t count_rooted_trees(const TreeTopology& t, std::int64_t k);

/// Every rooted tree of cardinality k, each exactly once, in lexicographic
/// order of sorted node lists. Refuses (before generating anything) when the
/// count exceeds max_supports.
std::vector<Support> enumerate_rooted_trees(
    const TreeTopology& t, std::int64_t k,
    std::int64_t max_supports = kDefaultEnumerationCeiling);

/// Ground-truth projection by exhaustion over the full enumeration. Ties are
/// broken by lexicographically smallest node list. Operation counters are left
/// at zero.
ProjectionResult brute_force_project(
    const TreeTopology& t, const Signal& y, std::int64_t k,
    std::int64_t max_supports = kDefaultEnumerationCeiling);

/// Feasibility check for a selection indicator: entries in {0,1}, root
/// selected, selection never increases along any branch, and exactly k nodes
/// selected.
bool is_valid_decision(const TreeTopology& t, const DecisionVector& tau, std::int64_t k);

}  // namespace treeproj
