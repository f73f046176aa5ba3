#include <stdexcept>

#include "doctest.h"
#include "treeproj/topology.hpp"

using treeproj::NodeId;
using treeproj::Support;
using treeproj::TreeTopology;

TEST_CASE("construction computes N = d^J") {
    CHECK(TreeTopology(2, 2).node_count() == 4);
    CHECK(TreeTopology(2, 4).node_count() == 16);
    CHECK(TreeTopology(3, 2).node_count() == 9);
    CHECK(TreeTopology(4, 3).node_count() == 64);
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(TreeTopology(1, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeTopology(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(TreeTopology(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(TreeTopology(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(TreeTopology(2, 64), std::invalid_argument);  // 2^64 overflows
    CHECK_NOTHROW(TreeTopology(2, 62));                           // 2^62 still fits
}

TEST_CASE("level_of matches the level boundaries") {
    const TreeTopology t(2, 3);
    CHECK(t.level_of(1) == 0);
    CHECK(t.level_of(2) == 1);
    CHECK(t.level_of(3) == 2);
    CHECK(t.level_of(4) == 2);
    CHECK(t.level_of(5) == 3);
    CHECK(t.level_of(7) == 3);
    CHECK(t.level_of(8) == 3);
    CHECK_THROWS_AS(t.level_of(0), std::out_of_range);
    CHECK_THROWS_AS(t.level_of(9), std::out_of_range);

    // Node counts per level: 1 at level 0, (d-1)*d^(j-1) at level j, summing to N.
    for (std::int64_t d : {2, 3, 4}) {
        const TreeTopology u(d, 3);
        std::int64_t total = 0;
        std::vector<std::int64_t> per_level(4, 0);
        for (NodeId i = 1; i <= u.node_count(); ++i) ++per_level[u.level_of(i)];
        CHECK(per_level[0] == 1);
        for (std::int64_t j = 1; j <= 3; ++j) {
            CHECK(per_level[j] == (d - 1) * u.power(j - 1));
            total += per_level[j];
        }
        CHECK(total + 1 == u.node_count());
    }
}

TEST_CASE("children_of follows the canonical numbering") {
    const TreeTopology t(2, 2);
    CHECK(t.children_of(1) == std::vector<NodeId>{2});
    CHECK(t.children_of(2) == std::vector<NodeId>{3, 4});
    CHECK(t.children_of(3).empty());
    CHECK(t.children_of(4).empty());

    const TreeTopology u(3, 2);
    CHECK(u.children_of(1) == std::vector<NodeId>{2, 3});
    CHECK(u.children_of(2) == std::vector<NodeId>{4, 5, 6});
    CHECK(u.children_of(3) == std::vector<NodeId>{7, 8, 9});
    CHECK(u.children_of(4).empty());
    CHECK_THROWS_AS(u.children_of(10), std::out_of_range);
}

TEST_CASE("parent_of inverts children_of") {
    const TreeTopology t(2, 3);
    CHECK(!t.parent_of(1).has_value());
    CHECK(t.parent_of(2) == 1);
    CHECK(t.parent_of(4) == 2);
    CHECK(TreeTopology(3, 2).parent_of(3) == 1);

    for (std::int64_t d : {2, 3, 4}) {
        const TreeTopology u(d, 3);
        for (NodeId i = 1; i <= u.node_count(); ++i) {
            for (NodeId c : u.children_of(i)) CHECK(u.parent_of(c) == i);
        }
    }
}

TEST_CASE("cardinality_cap evaluates the per-level budget") {
    const TreeTopology t(2, 3);
    CHECK(t.cardinality_cap(4, 1) == 3);
    CHECK(t.cardinality_cap(4, 2) == 2);
    CHECK(t.cardinality_cap(4, 3) == 1);
    CHECK(t.cardinality_cap(2, 2) == 0);  // k - j binds and clamps at 0
    CHECK(TreeTopology(2, 4).cardinality_cap(20, 1) == 15);  // geometric term binds

    CHECK_THROWS_AS(t.cardinality_cap(4, 0), std::out_of_range);
    CHECK_THROWS_AS(t.cardinality_cap(4, 4), std::out_of_range);
    CHECK_THROWS_AS(t.cardinality_cap(0, 1), std::out_of_range);
    // Budgets beyond the node count are meaningful: the subtree-size term binds.
    CHECK(t.cardinality_cap(9, 1) == 7);

    // Never exceeds k-1 at levels >= 1, and never goes negative.
    for (std::int64_t d : {2, 3}) {
        const TreeTopology u(d, 3);
        for (std::int64_t k = 1; k <= u.node_count(); ++k) {
            for (std::int64_t j = 1; j <= 3; ++j) {
                const std::int64_t cap = u.cardinality_cap(k, j);
                CHECK(cap >= 0);
                CHECK(cap <= k - 1);
            }
        }
    }
}

TEST_CASE("is_rooted_tree requires the root and parent closure") {
    const TreeTopology t(2, 2);
    CHECK(t.is_rooted_tree(Support{{1, 2, 4}}));
    CHECK(t.is_rooted_tree(Support{{1}}));
    CHECK(t.is_rooted_tree(Support{{1, 2, 3, 4}}));
    CHECK(!t.is_rooted_tree(Support{{1, 3}}));   // parent 2 of node 3 missing
    CHECK(!t.is_rooted_tree(Support{{2, 3}}));   // root absent
    CHECK(!t.is_rooted_tree(Support{{}}));
    CHECK_THROWS_AS(t.is_rooted_tree(Support{{1, 5}}), std::out_of_range);
    CHECK_THROWS_AS(t.is_rooted_tree(Support{{1, 2, 2}}), std::invalid_argument);
}
