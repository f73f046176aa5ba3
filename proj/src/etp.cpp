#include "treeproj/etp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace treeproj {

DPTables::DPTables(const TreeTopology& t, std::int64_t k) : k_(k), d_(t.d()) {
    const std::int64_t n = t.node_count();
    f_.resize(static_cast<std::size_t>(n) + 1);
    g_.resize(static_cast<std::size_t>(n) + 1);
    f_[1].assign(static_cast<std::size_t>(k) + 1, 0.0);
    g_[1].assign(static_cast<std::size_t>((k + 1) * d_), 0);
    for (std::int64_t j = 1; j <= t.levels(); ++j) {
        // Rows always hold cardinalities 0 and 1 even when the cap is 0, so
        // the unconditional F(i,1)=y_i^2 initialization has a home.
        const std::int64_t cap = std::max<std::int64_t>(t.cardinality_cap(k, j), 1);
        for (NodeId i = t.power(j - 1) + 1; i <= t.power(j); ++i) {
            f_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(cap) + 1, 0.0);
            g_[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>((cap + 1) * d_),
                                                   0);
        }
    }
}

namespace {

// Folds one child's table into node i's partial rows. The partial table
// before this merge covers cardinalities up to partial_cap, so the split
// point s (nodes granted to this child) ranges over
//   max(0, l - partial_cap) .. min(l - 1, child_cap).
// s = 0 keeps the partial solution unchanged: its value is the already known
// f_node[l], so it costs a comparison but no addition. Scanning s upward with
// a strict improvement test makes ties resolve to the smallest s.
// Writes go through scratch rows and are copied back afterwards, keeping the
// whole merge a function of the pre-merge state.
void merge_child(std::vector<double>& f_node, std::vector<std::int64_t>& g_node,
                 const std::vector<double>& f_child, std::int64_t lmax,
                 std::int64_t partial_cap, std::int64_t child_cap, std::int64_t r,
                 std::int64_t d, std::vector<double>& f_tmp,
                 std::vector<std::int64_t>& g_tmp, OpCounter& ops) {
    for (std::int64_t l = 2; l <= lmax; ++l) {
        const std::int64_t s_lo = std::max<std::int64_t>(0, l - partial_cap);
        const std::int64_t s_hi = std::min<std::int64_t>(l - 1, child_cap);
        double best = 0.0;
        std::int64_t best_s = -1;
        for (std::int64_t s = s_lo; s <= s_hi; ++s) {
            double cand;
            if (s == 0) {
                cand = f_node[static_cast<std::size_t>(l)];
            } else {
                cand = f_child[static_cast<std::size_t>(s)] +
                       f_node[static_cast<std::size_t>(l - s)];
                ++ops.additions;
            }
            ++ops.comparisons;
            if (best_s < 0 || cand > best) {
                best = cand;
                best_s = s;
            }
        }
        f_tmp[static_cast<std::size_t>(l)] = best;
        const std::int64_t* from = &g_node[static_cast<std::size_t>((l - best_s) * d)];
        std::int64_t* to = &g_tmp[static_cast<std::size_t>(l * d)];
        for (std::int64_t q = 0; q < d; ++q) to[q] = from[q];
        to[r - 1] = best_s;
    }
    for (std::int64_t l = 2; l <= lmax; ++l) {
        f_node[static_cast<std::size_t>(l)] = f_tmp[static_cast<std::size_t>(l)];
        const std::int64_t* from = &g_tmp[static_cast<std::size_t>(l * d)];
        std::int64_t* to = &g_node[static_cast<std::size_t>(l * d)];
        for (std::int64_t q = 0; q < d; ++q) to[q] = from[q];
    }
}

}  // namespace

DPTables forward_pass(const TreeTopology& t, const Signal& y, std::int64_t k,
                      OpCounter& ops) {
    const std::int64_t n = t.node_count();
    const std::int64_t d = t.d();
    const std::int64_t levels = t.levels();
    if (y.size() != n) {
        throw std::invalid_argument("signal length " + std::to_string(y.size()) +
                                    " does not match node count " + std::to_string(n));
    }
    if (k < 1 || k > n) {
        throw std::invalid_argument("cardinality " + std::to_string(k) + " outside 1.." +
                                    std::to_string(n));
    }

    DPTables tab(t, k);
    auto& f = tab.f_;
    auto& g = tab.g_;

    std::vector<std::int64_t> cap(static_cast<std::size_t>(levels) + 1, 0);
    for (std::int64_t j = 1; j <= levels; ++j) cap[static_cast<std::size_t>(j)] = t.cardinality_cap(k, j);

    for (NodeId i = t.power(levels - 1) + 1; i <= n; ++i) {
        f[static_cast<std::size_t>(i)][1] = y[i] * y[i];
    }

    std::vector<double> f_tmp(static_cast<std::size_t>(k) + 1, 0.0);
    std::vector<std::int64_t> g_tmp(static_cast<std::size_t>((k + 1) * d), 0);

    for (std::int64_t j = levels - 1; j >= 1; --j) {
        const std::int64_t node_cap = cap[static_cast<std::size_t>(j)];
        const std::int64_t child_cap = cap[static_cast<std::size_t>(j + 1)];
        for (NodeId i = t.power(j - 1) + 1; i <= t.power(j); ++i) {
            auto& f_node = f[static_cast<std::size_t>(i)];
            auto& g_node = g[static_cast<std::size_t>(i)];
            f_node[1] = y[i] * y[i];
            for (std::int64_t r = 1; r <= d; ++r) {
                const std::int64_t lmax =
                    std::min<std::int64_t>(node_cap, r * child_cap + 1);
                const auto& f_child = f[static_cast<std::size_t>(d * (i - 1) + r)];
                merge_child(f_node, g_node, f_child, lmax, (r - 1) * child_cap + 1,
                            child_cap, r, d, f_tmp, g_tmp, ops);
            }
        }
    }

    // Root merge: children are the nodes 2..d themselves, merged in slots
    // r = 2..d; slot 1 stays empty.
    f[1][1] = y[1] * y[1];
    const std::int64_t root_child_cap = cap[1];
    for (std::int64_t r = 2; r <= d; ++r) {
        const std::int64_t lmax =
            std::min<std::int64_t>(k, (r - 1) * root_child_cap + 1);
        const auto& f_child = f[static_cast<std::size_t>(r)];
        merge_child(f[1], g[1], f_child, lmax, (r - 2) * root_child_cap + 1,
                    root_child_cap, r, d, f_tmp, g_tmp, ops);
    }

    return tab;
}

Support backtrack(const TreeTopology& t, const DPTables& tables, std::int64_t k_sub,
                  OpCounter& ops) {
    if (k_sub < 1 || k_sub > tables.k()) {
        throw std::invalid_argument("cardinality " + std::to_string(k_sub) +
                                    " outside 1.." + std::to_string(tables.k()));
    }
    const std::int64_t n = t.node_count();
    const std::int64_t d = t.d();
    std::vector<char> selected(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int64_t> card(static_cast<std::size_t>(n) + 1, 0);
    selected[1] = 1;
    card[1] = k_sub;

    for (std::int64_t j = 0; j <= t.levels() - 1; ++j) {
        const NodeId first = (j == 0) ? 1 : t.power(j - 1) + 1;
        const NodeId last = t.power(j);
        const std::int64_t r_first = (j == 0) ? 2 : 1;
        for (NodeId i = first; i <= last; ++i) {
            if (!selected[static_cast<std::size_t>(i)]) continue;
            const std::int64_t li = card[static_cast<std::size_t>(i)];
            for (std::int64_t r = r_first; r <= d; ++r) {
                const std::int64_t s = tables.alloc(i, li, r);
                ++ops.pass2_comparisons;
                if (s > 0) {
                    const NodeId c = d * (i - 1) + r;
                    selected[static_cast<std::size_t>(c)] = 1;
                    card[static_cast<std::size_t>(c)] = s;
                }
            }
        }
    }

    Support out;
    out.nodes.reserve(static_cast<std::size_t>(k_sub));
    for (NodeId i = 1; i <= n; ++i) {
        if (selected[static_cast<std::size_t>(i)]) out.nodes.push_back(i);
    }
    return out;
}

ProjectionResult etp_project(const TreeTopology& t, const Signal& y, std::int64_t k) {
    OpCounter ops;
    const DPTables tables = forward_pass(t, y, k, ops);
    Support support = backtrack(t, tables, k, ops);

    ProjectionResult result;
    result.projection.assign(static_cast<std::size_t>(t.node_count()), 0.0);
    for (NodeId i : support.nodes) {
        result.projection[static_cast<std::size_t>(i - 1)] = y[i];
    }
    result.energy = support_energy(y, support);
    result.support = std::move(support);
    result.ops = ops;
    return result;
}

std::int64_t operation_bound(std::int64_t d, std::int64_t n, std::int64_t k) {
    if (d < 2 || n < 1 || k < 1) {
        throw std::invalid_argument("operation_bound requires d >= 2, n >= 1, k >= 1");
    }
    std::int64_t x = 0;
    if (__builtin_mul_overflow(std::int64_t{3}, d, &x) ||
        __builtin_mul_overflow(x, d, &x) || __builtin_mul_overflow(x, n, &x) ||
        __builtin_mul_overflow(x, k, &x) || __builtin_add_overflow(x, n, &x)) {
        throw std::overflow_error("3*d^2*N*k + N overflows 64-bit arithmetic");
    }
    return x;
}

}  // namespace treeproj
