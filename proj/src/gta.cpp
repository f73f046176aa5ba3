#include "treeproj/gta.hpp"

#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeproj {

ProjectionResult gta_project(const TreeTopology& t, const Signal& y, std::int64_t k) {
    const std::int64_t n = t.node_count();
    if (y.size() != n) {
        throw std::invalid_argument("signal length " + std::to_string(y.size()) +
                                    " does not match node count " + std::to_string(n));
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("cardinality " + std::to_string(k) + " outside 1.." +
                                    std::to_string(n));
    }

    const auto lower_priority = [&y](NodeId a, NodeId b) {
        const double wa = y[a] * y[a];
        const double wb = y[b] * y[b];
        if (wa != wb) return wa < wb;
        return a > b;
    };
    std::priority_queue<NodeId, std::vector<NodeId>, decltype(lower_priority)> frontier(
        lower_priority);
    std::vector<char> selected(static_cast<std::size_t>(n) + 1, 0);

    // Every node enters the frontier exactly once, when its parent is taken.
    frontier.push(1);
    for (std::int64_t taken = 0; taken < k; ++taken) {
        const NodeId i = frontier.top();
        frontier.pop();
        selected[static_cast<std::size_t>(i)] = 1;
        for (NodeId child : t.children_of(i)) frontier.push(child);
    }

    ProjectionResult result;
    result.projection.assign(static_cast<std::size_t>(n), 0.0);
    result.support.nodes.reserve(static_cast<std::size_t>(k));
    for (NodeId i = 1; i <= n; ++i) {
        if (selected[static_cast<std::size_t>(i)]) {
            result.support.nodes.push_back(i);
            result.projection[static_cast<std::size_t>(i - 1)] = y[i];
        }
    }
    result.energy = support_energy(y, result.support);
    return result;
}

}  // namespace treeproj
