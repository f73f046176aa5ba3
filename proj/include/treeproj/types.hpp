#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeproj {

using NodeId = std::int64_t;

/// Real coefficient vector. Entries must be finite; length is validated
/// against a topology at the point of use.
class Signal {
public:
    explicit Signal(std::vector<double> values) : values_(std::move(values)) {
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isfinite(values_[i])) {
                throw std::invalid_argument("signal entry " + std::to_string(i + 1) +
                                            " is not finite");
            }
        }
    }

    const std::vector<double>& values() const { return values_; }
    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    double operator[](NodeId i) const { return values_[static_cast<std::size_t>(i - 1)]; }

private:
    std::vector<double> values_;
};

/// A node set, kept sorted ascending with no duplicates (1-based ids).
struct Support {
    std::vector<NodeId> nodes;

    std::int64_t size() const { return static_cast<std::int64_t>(nodes.size()); }
    bool operator==(const Support& other) const = default;
};

/// 0/1 selection indicator over all N nodes. Stored as plain ints so that
/// infeasible vectors (entries outside {0,1}) can be represented and rejected
/// by the feasibility check.
using DecisionVector = std::vector<int>;

struct OpCounter {
    std::int64_t additions = 0;
    std::int64_t comparisons = 0;
    std::int64_t pass2_comparisons = 0;

    std::int64_t total() const { return additions + comparisons + pass2_comparisons; }
};

struct ProjectionResult {
    std::vector<double> projection;
    Support support;
    double energy = 0.0;
    OpCounter ops;
};

/// Sum of squared coefficients over a support, accumulated in ascending node
/// order so identical supports always produce identical sums.
inline double support_energy(const Signal& y, const Support& support) {
    double e = 0.0;
    for (NodeId i : support.nodes) e += y[i] * y[i];
    return e;
}

}  // namespace treeproj
