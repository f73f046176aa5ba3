#include "treeproj/topology.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace treeproj {

TreeTopology::TreeTopology(std::int64_t d, std::int64_t levels) : d_(d), levels_(levels) {
    if (d < 2) throw std::invalid_argument("tree order d must be at least 2");
    if (levels < 2) throw std::invalid_argument("level count J must be at least 2");

    powers_.reserve(static_cast<std::size_t>(levels) + 1);
    powers_.push_back(1);
    for (std::int64_t j = 1; j <= levels; ++j) {
        const std::int64_t prev = powers_.back();
        if (prev > std::numeric_limits<std::int64_t>::max() / d) {
            throw std::invalid_argument("d^J does not fit a 64-bit integer");
        }
        powers_.push_back(prev * d);
    }
    n_ = powers_.back();
}

void TreeTopology::require_node(NodeId i) const {
    if (i < 1 || i > n_) {
        throw std::out_of_range("node id " + std::to_string(i) + " outside 1.." +
                                std::to_string(n_));
    }
}

std::int64_t TreeTopology::level_of(NodeId i) const {
    require_node(i);
    for (std::int64_t j = 0; j <= levels_; ++j) {
        if (i <= power(j)) return j;
    }
    return levels_;  // unreachable: i <= n_ = power(levels_)
}

std::vector<NodeId> TreeTopology::children_of(NodeId i) const {
    require_node(i);
    std::vector<NodeId> out;
    if (i == 1) {
        out.reserve(static_cast<std::size_t>(d_ - 1));
        for (NodeId c = 2; c <= d_; ++c) out.push_back(c);
    } else if (i <= n_ / d_) {
        out.reserve(static_cast<std::size_t>(d_));
        for (NodeId c = d_ * (i - 1) + 1; c <= d_ * i; ++c) out.push_back(c);
    }
    return out;
}

std::optional<NodeId> TreeTopology::parent_of(NodeId i) const {
    require_node(i);
    if (i == 1) return std::nullopt;
    return (i - 1) / d_ + 1;
}

std::int64_t TreeTopology::cardinality_cap(std::int64_t k, std::int64_t level) const {
    if (level < 1 || level > levels_) {
        throw std::out_of_range("level " + std::to_string(level) + " outside 1.." +
                                std::to_string(levels_));
    }
    if (k < 1) {
        throw std::out_of_range("cardinality " + std::to_string(k) +
                                " must be at least 1");
    }
    // (d^(J+1-j) - 1) / (d - 1) is an exact geometric series in integers.
    const std::int64_t geometric = (power(levels_ + 1 - level) - 1) / (d_ - 1);
    const std::int64_t by_budget = k - level;
    const std::int64_t cap = geometric < by_budget ? geometric : by_budget;
    return cap > 0 ? cap : 0;
}

bool TreeTopology::is_rooted_tree(const Support& support) const {
    std::vector<char> member(static_cast<std::size_t>(n_) + 1, 0);
    for (NodeId i : support.nodes) {
        require_node(i);
        if (member[static_cast<std::size_t>(i)]) {
            throw std::invalid_argument("duplicate node id " + std::to_string(i));
        }
        member[static_cast<std::size_t>(i)] = 1;
    }
    if (!member[1]) return false;
    for (NodeId i : support.nodes) {
        if (i == 1) continue;
        const NodeId p = (i - 1) / d_ + 1;
        if (!member[static_cast<std::size_t>(p)]) return false;
    }
    return true;
}

}  // namespace treeproj
