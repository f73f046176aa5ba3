#pragma once

#include <cstdint>
#include <vector>

#include "treeproj/topology.hpp"
#include "treeproj/types.hpp"

namespace treeproj {

/// Dynamic-programming tables of the two-pass projection. For node i,
/// energy(i, l) is the maximum total squared energy of any subtree of
/// cardinality l that is rooted at i (contains i, parent-closed within i's
/// subtree); alloc(i, l, r) is the number of those l nodes drawn from the
/// subtree of i's r-th child. Rows are jagged: node i at level j holds
/// cardinalities 0..max(l(j),1), the root holds 0..k.
class DPTables {
public:
    DPTables(const TreeTopology& t, std::int64_t k);

    std::int64_t k() const { return k_; }
    std::int64_t cap(NodeId i) const {
        return static_cast<std::int64_t>(f_[static_cast<std::size_t>(i)].size()) - 1;
    }
    double energy(NodeId i, std::int64_t l) const {
        return f_[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
    }
    /// Child index r is 1-based (child node id d(i-1)+r).
    std::int64_t alloc(NodeId i, std::int64_t l, std::int64_t r) const {
        return g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(l * d_ + (r - 1))];
    }

private:
    friend DPTables forward_pass(const TreeTopology&, const Signal&, std::int64_t,
                                 OpCounter&);

    std::int64_t k_;
    std::int64_t d_;
    std::vector<std::vector<double>> f_;        // [node] -> energies, index by l
    std::vector<std::vector<std::int64_t>> g_;  // [node] -> flat (cap+1) x d allocations
};

/// Fine-to-coarse pass: fills the tables bottom-up, merging children one at a
/// time. Each argmax candidate examined counts one comparison; each candidate
/// that evaluates a cross sum counts one addition.
DPTables forward_pass(const TreeTopology& t, const Signal& y, std::int64_t k,
                      OpCounter& ops);

/// Coarse-to-fine pass: reads the allocation records back from the root and
/// returns the support of cardinality k_sub achieving energy(1, k_sub). Works
/// for any 1 <= k_sub <= tables.k(). Each allocation-nonzero test counts one
/// pass2 comparison.
Support backtrack(const TreeTopology& t, const DPTables& tables, std::int64_t k_sub,
                  OpCounter& ops);

/// Exact projection onto rooted trees of cardinality k: keeps the coefficients
/// on the maximum-energy rooted support of size k and zeroes the rest.
ProjectionResult etp_project(const TreeTopology& t, const Signal& y, std::int64_t k);

/// Guaranteed ceiling on counted operations for one projection: 3*d^2*N*k + N.
/// Throws std::overflow_error if the product does not fit 64 bits.
std::int64_t operation_bound(std::int64_t d, std::int64_t n, std::int64_t k);

}  // namespace treeproj
