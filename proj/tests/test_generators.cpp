#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "linlay/generators.hpp"

using namespace linlay;

TEST_CASE("complete and complete bipartite generators") {
    Graph k6 = complete_graph(6);
    CHECK(k6.n == 6);
    CHECK(k6.edges.size() == 15);
    Graph k33 = complete_bipartite(3, 3);
    CHECK(k33.n == 6);
    CHECK(k33.edges.size() == 9);
    REQUIRE(k33.bipartition.has_value());
    CHECK(k33.bipartition->a.size() == 3);
    CHECK(k33.bipartition->b.size() == 3);
    for (const Edge& e : k33.edges) {
        CHECK(e.u < 3);
        CHECK(e.v >= 3);
    }
}

TEST_CASE("challenge graph for k=1 has the four expected edges") {
    ChallengeInstance inst = challenge_graph(1);
    CHECK(inst.graph.n == 4);  // v_0, v_1, u_0, u_1 with u_i = 2+i
    std::map<Edge, ChallengeClass> got;
    REQUIRE(inst.edge_class.size() == inst.graph.edges.size());
    for (size_t i = 0; i < inst.graph.edges.size(); ++i)
        got[inst.graph.edges[i]] = inst.edge_class[i];
    REQUIRE(got.size() == 4);
    CHECK(got[Edge(0, 2)] == ChallengeClass::Red);    // (v_0, u_0)
    CHECK(got[Edge(1, 3)] == ChallengeClass::Red);    // (v_1, u_1)
    CHECK(got[Edge(0, 3)] == ChallengeClass::Brown);  // (v_0, u_1)
    CHECK(got[Edge(1, 2)] == ChallengeClass::Blue);   // (v_1, u_0)
}

TEST_CASE("challenge graphs are subcubic with valid mixed layouts") {
    for (int k = 1; k <= 6; ++k) {
        ChallengeInstance inst = challenge_graph(k);
        int n = 1 << k;
        CHECK(inst.graph.n == 2 * n);
        std::vector<int> deg(inst.graph.n, 0);
        for (const Edge& e : inst.graph.edges) {
            deg[e.u]++;
            deg[e.v]++;
        }
        CHECK(*std::max_element(deg.begin(), deg.end()) <= 3);
        ValidationReport rep = validate_layout(inst.mixed_layout);
        CHECK(rep.ok());
        CHECK(is_separated(inst.mixed_layout));
        auto [s, q] = inst.mixed_layout.signature();
        CHECK(s <= 1);
        CHECK(q <= 2);
    }
}

TEST_CASE("challenge permutation is a bijection built from 4-blocks") {
    for (int k = 1; k <= 8; ++k) {
        std::vector<int> p = challenge_permutation(k);
        int n = 1 << k;
        REQUIRE(static_cast<int>(p.size()) == n);
        std::vector<bool> seen(n, false);
        for (int x : p) {
            REQUIRE(x >= 0);
            REQUIRE(x < n);
            CHECK_FALSE(seen[x]);
            seen[x] = true;
        }
    }
    // k=2 by hand: block size 4, first (and only) block uses f_1 = identity
    // after the span-4 pass, then the span-16 pass does not apply.
    std::vector<int> p1 = challenge_permutation(1);
    std::vector<bool> seen = {false, false};
    for (int x : p1) seen[x] = true;
    CHECK(seen == std::vector<bool>({true, true}));
}

TEST_CASE("challenge queue layouts use at most 4 queues") {
    for (int k = 1; k <= 6; ++k) {
        LinearLayout l = challenge_queue_layout(k);
        CHECK(validate_layout(l).ok());
        CHECK(is_separated(l));
        auto [s, q] = l.signature();
        CHECK(s == 0);
        CHECK(q <= 4);
        CHECK(l.graph.edges == challenge_graph(k).graph.edges);
    }
}

TEST_CASE("diagonal grid instances are valid separated layouts") {
    std::vector<std::vector<bool>> pattern = {{true, false}, {false, true}};
    DiagonalGridInstance inst = diagonal_grid_instance(pattern, 123);
    CHECK(validate_layout(inst.layout).ok());
    CHECK(is_separated(inst.layout));
    CHECK(inst.layout.pages.size() == 4);  // one page per cell
    // Cut vectors describe a 2x2 block structure.
    CHECK(inst.col_cuts.size() == 1);
    CHECK(inst.row_cuts.size() == 1);
    // Deterministic per seed.
    DiagonalGridInstance again = diagonal_grid_instance(pattern, 123);
    CHECK(again.graph.edges == inst.graph.edges);
    CHECK(again.layout.order.order == inst.layout.order.order);
}

TEST_CASE("random layout instances: valid, deterministic, within budget") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        LinearLayout l = random_layout_instance(2, 2, 6, 6, 0.4, true, seed);
        CHECK(validate_layout(l).ok());
        CHECK(is_separated(l));
        auto [s, q] = l.signature();
        CHECK(s <= 2);
        CHECK(q <= 2);
        CHECK(s >= 1);  // requested pages get at least one edge
        CHECK(q >= 1);
        LinearLayout again = random_layout_instance(2, 2, 6, 6, 0.4, true, seed);
        CHECK(again.graph.edges == l.graph.edges);
        CHECK(again.order.order == l.order.order);
    }
    // Non-separated variant.
    LinearLayout m = random_layout_instance(1, 1, 5, 5, 0.4, false, 9);
    CHECK(validate_layout(m).ok());
}
