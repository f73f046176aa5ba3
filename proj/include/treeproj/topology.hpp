#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "treeproj/types.hpp"

namespace treeproj {

/// Canonical d-ary coefficient tree over N = d^J nodes, numbered 1..N from
/// coarse to fine. Node 1 is the root at level 0 and has the d-1 children
/// {2..d}; every other node i <= N/d has the children {d(i-1)+1 .. di};
/// nodes above N/d are leaves. Immutable after construction.
class TreeTopology {
public:
    TreeTopology(std::int64_t d, std::int64_t levels);

    std::int64_t d() const { return d_; }
    std::int64_t levels() const { return levels_; }  // J
    std::int64_t node_count() const { return n_; }   // N = d^J

    /// Level of node i: 0 for the root, j for d^(j-1) < i <= d^j.
    std::int64_t level_of(NodeId i) const;

    std::vector<NodeId> children_of(NodeId i) const;

    /// Empty for the root.
    std::optional<NodeId> parent_of(NodeId i) const;

    /// Largest subtree cardinality at level j (1 <= j <= J) that can
    /// contribute to a rooted tree of cardinality k: the smaller of the
    /// geometric capacity (d^(J+1-j)-1)/(d-1) and k-j, clamped at 0.
    std::int64_t cardinality_cap(std::int64_t k, std::int64_t level) const;

    /// True iff the set contains the root and is closed under taking parents.
    bool is_rooted_tree(const Support& support) const;

    /// d^j for 0 <= j <= J, exact in integer arithmetic.
    std::int64_t power(std::int64_t j) const { return powers_[static_cast<std::size_t>(j)]; }

private:
    void require_node(NodeId i) const;

    std::int64_t d_;
    std::int64_t levels_;
    std::int64_t n_;
    std::vector<std::int64_t> powers_;  // powers_[j] = d^j
};

}  // namespace treeproj
