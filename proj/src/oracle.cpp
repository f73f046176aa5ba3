#include "treeproj/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace treeproj {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return a > kSaturated - b ? kSaturated : a + b;
}

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kSaturated / b ? kSaturated : a * b;
}

// Truncated convolution under saturating arithmetic.
std::vector<std::uint64_t> sat_conv(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b,
                                    std::size_t max_len) {
    std::vector<std::uint64_t> out(std::min(a.size() + b.size() - 1, max_len), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < out.size(); ++j) {
            out[i + j] = sat_add(out[i + j], sat_mul(a[i], b[j]));
        }
    }
    return out;
}

std::int64_t subtree_size(const TreeTopology& t, std::int64_t level) {
    return (t.power(t.levels() + 1 - level) - 1) / (t.d() - 1);
}

void require_cardinality(const TreeTopology& t, std::int64_t k) {
    if (k < 1 || k > t.node_count()) {
        throw std::invalid_argument("cardinality " + std::to_string(k) + " outside 1.." +
                                    std::to_string(t.node_count()));
    }
}

// Depth-first take-or-leave enumeration. Candidates are processed in
// increasing node id; including a candidate appends its children, which are
// always larger than every pending candidate, so the pending range stays
// sorted and each support is produced exactly once, in lexicographic order of
// its (ascending) node list. potential = nodes chosen so far plus everything
// still reachable through pending candidates; branches that cannot reach k
// are cut.
struct Enumerator {
    const TreeTopology& t;
    std::int64_t k;
    std::vector<Support>& out;
    std::vector<NodeId> chosen;
    std::vector<NodeId> pending;

    void step(std::size_t idx, std::int64_t potential) {
        if (static_cast<std::int64_t>(chosen.size()) == k) {
            out.push_back(Support{chosen});
            return;
        }
        if (idx == pending.size()) return;
        const NodeId c = pending[idx];

        chosen.push_back(c);
        const std::size_t before = pending.size();
        for (NodeId child : t.children_of(c)) pending.push_back(child);
        step(idx + 1, potential);
        pending.resize(before);
        chosen.pop_back();

        const std::int64_t without = potential - subtree_size(t, t.level_of(c));
        if (without >= k) step(idx + 1, without);
    }
};

}  // namespace

std::uint64_t count_rooted_trees(const TreeTopology& t, std::int64_t k) {
    require_cardinality(t, k);
    const std::size_t max_len = static_cast<std::size_t>(k) + 1;

    // ways[l] = number of rooted subtrees of cardinality l hanging from one
    // node of the current level; identical for all nodes of a level.
    std::vector<std::uint64_t> ways = {1, 1};  // leaves: empty or the node itself
    for (std::int64_t j = t.levels() - 1; j >= 1; --j) {
        std::vector<std::uint64_t> combined = {1};
        for (std::int64_t r = 0; r < t.d(); ++r) combined = sat_conv(combined, ways, max_len);
        std::vector<std::uint64_t> next(std::min(combined.size() + 1, max_len), 0);
        next[0] = 1;
        for (std::size_t l = 1; l < next.size(); ++l) next[l] = combined[l - 1];
        ways = std::move(next);
    }

    // The root contributes itself plus subtrees of its d-1 children.
    std::vector<std::uint64_t> combined = {1};
    for (std::int64_t r = 2; r <= t.d(); ++r) combined = sat_conv(combined, ways, max_len);
    const std::size_t want = static_cast<std::size_t>(k) - 1;
    return want < combined.size() ? combined[want] : 0;
}

std::vector<Support> enumerate_rooted_trees(const TreeTopology& t, std::int64_t k,
                                            std::int64_t max_supports) {
    require_cardinality(t, k);
    const std::uint64_t count = count_rooted_trees(t, k);
    if (max_supports < 0 ||
        count > static_cast<std::uint64_t>(max_supports)) {
        const std::string shown =
            count == kSaturated ? std::string("more than 2^64-1") : std::to_string(count);
        throw enumeration_limit_error("enumerating " + shown +
                                      " supports exceeds the ceiling of " +
                                      std::to_string(max_supports));
    }

    std::vector<Support> out;
    out.reserve(static_cast<std::size_t>(count));
    Enumerator e{t, k, out, {1}, {}, };
    std::int64_t potential = 1;
    for (NodeId child : t.children_of(1)) {
        e.pending.push_back(child);
        potential += subtree_size(t, 1);
    }
    e.step(0, potential);
    return out;
}

ProjectionResult brute_force_project(const TreeTopology& t, const Signal& y,
                                     std::int64_t k, std::int64_t max_supports) {
    if (y.size() != t.node_count()) {
        throw std::invalid_argument("signal length " + std::to_string(y.size()) +
                                    " does not match node count " +
                                    std::to_string(t.node_count()));
    }
    const std::vector<Support> all = enumerate_rooted_trees(t, k, max_supports);

    // Strict improvement over a lexicographically ascending enumeration keeps
    // the lexicographically smallest support among energy ties.
    const Support* best = &all.front();
    double best_energy = support_energy(y, *best);
    for (const Support& s : all) {
        const double e = support_energy(y, s);
        if (e > best_energy) {
            best_energy = e;
            best = &s;
        }
    }

    ProjectionResult result;
    result.projection.assign(static_cast<std::size_t>(t.node_count()), 0.0);
    for (NodeId i : best->nodes) {
        result.projection[static_cast<std::size_t>(i - 1)] = y[i];
    }
    result.support = *best;
    result.energy = best_energy;
    return result;
}

bool is_valid_decision(const TreeTopology& t, const DecisionVector& tau,
                       std::int64_t k) {
    if (static_cast<std::int64_t>(tau.size()) != t.node_count()) {
        throw std::invalid_argument("indicator length " + std::to_string(tau.size()) +
                                    " does not match node count " +
                                    std::to_string(t.node_count()));
    }
    std::int64_t selected = 0;
    for (std::size_t i = 0; i < tau.size(); ++i) {
        if (tau[i] != 0 && tau[i] != 1) return false;
        selected += tau[i];
    }
    if (selected != k || tau[0] != 1) return false;
    for (NodeId i = 2; i <= t.node_count(); ++i) {
        if (tau[static_cast<std::size_t>(i - 1)] == 1) {
            const NodeId p = *t.parent_of(i);
            if (tau[static_cast<std::size_t>(p - 1)] == 0) return false;
        }
    }
    return true;
}

}  // namespace treeproj
