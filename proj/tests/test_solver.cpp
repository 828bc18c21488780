#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "linlay/generators.hpp"
#include "linlay/solver.hpp"
#include "support/naive.hpp"

using namespace linlay;

TEST_CASE("path and cycle basics") {
    // P4: one stack or one queue suffices.
    Graph p4 = make_graph(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
    CHECK(stack_number(p4) == 1);
    CHECK(queue_number(p4) == 1);
    // C4 also fits one stack and one queue.
    Graph c4 = make_graph(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(0, 3)});
    CHECK(stack_number(c4) == 1);
    CHECK(queue_number(c4) == 1);
    // K4 is planar Hamiltonian: 2 stacks; and qn(K4) = 2.
    Graph k4 = complete_graph(4);
    CHECK(stack_number(k4) == 2);
    CHECK(queue_number(k4) == 2);
}

TEST_CASE("witnesses validate and respect the budget") {
    Graph k5 = complete_graph(5);
    PageBudget b;
    b.stacks = 3;
    SolveResult res = feasible(k5, b);
    REQUIRE(res.feasible);
    REQUIRE(res.witness.has_value());
    CHECK(validate_layout(*res.witness).ok());
    auto [s, q] = res.witness->signature();
    CHECK(s <= 3);
    CHECK(q == 0);

    b.stacks = 2;
    CHECK_FALSE(feasible(k5, b).feasible);
}

TEST_CASE("separated search honors the bipartition blocks") {
    Graph k33 = complete_bipartite(3, 3);
    PageBudget b;
    b.stacks = 1;
    b.queues = 1;
    b.separated = true;
    SolveResult res = feasible(k33, b);
    REQUIRE(res.feasible);
    CHECK(validate_layout(*res.witness).ok());
    CHECK(is_separated(*res.witness));

    // Graphs without a bipartition cannot be solved in separated mode.
    CHECK_THROWS_AS(feasible(complete_graph(4), b), std::domain_error);
}

TEST_CASE("size guard refuses, never lies") {
    Graph big = complete_graph(17);
    PageBudget b;
    b.stacks = 8;
    CHECK_THROWS_AS(feasible(big, b), std::runtime_error);
    // Raising the cap lifts the refusal (kept trivial so the search is fast).
    Graph sparse = make_graph(17, {Edge(0, 16)});
    CHECK(feasible(sparse, b, 20).feasible);
}

TEST_CASE("max_twist and max_rainbow on known configurations") {
    // k pairwise-crossing edges: (0,k), (1,k+1), ..., under identity order.
    for (int k = 2; k <= 4; ++k) {
        std::vector<Edge> edges;
        for (int i = 0; i < k; ++i) edges.push_back(Edge(i, k + i));
        Graph g = make_graph(2 * k, edges);
        CHECK(max_twist(g, identity_order(2 * k)) == k);
        CHECK(max_rainbow(g, identity_order(2 * k)) == 1);
    }
    // k nested edges: (0,2k-1), (1,2k-2), ...
    for (int k = 2; k <= 4; ++k) {
        std::vector<Edge> edges;
        for (int i = 0; i < k; ++i) edges.push_back(Edge(i, 2 * k - 1 - i));
        Graph g = make_graph(2 * k, edges);
        CHECK(max_rainbow(g, identity_order(2 * k)) == k);
        CHECK(max_twist(g, identity_order(2 * k)) == 1);
    }
    // Twist forces stacks, rainbow forces queues: lower bounds agree with the
    // exact numbers on K4.
    Graph k4 = complete_graph(4);
    VertexOrder id = identity_order(4);
    CHECK(max_twist(k4, id) == 2);
    CHECK(max_rainbow(k4, id) == 2);
}

TEST_CASE("pruned solver matches the naive enumerator on small graphs") {
    // A fast subset of the acceptance corpus: all connected graphs on <= 4
    // vertices, three budgets.
    std::vector<Graph> graphs;
    for (const Graph& g : naive::corpus())
        if (g.n <= 4) graphs.push_back(g);
    REQUIRE(graphs.size() == 9);  // 1 + 2 + 6 connected graphs on 2..4 vertices
    const std::pair<int, int> budgets[] = {{1, 0}, {0, 1}, {1, 1}};
    for (const Graph& g : graphs) {
        for (auto [s, q] : budgets) {
            PageBudget b;
            b.stacks = s;
            b.queues = q;
            CAPTURE(g.n);
            CAPTURE(s);
            CAPTURE(q);
            CHECK(feasible(g, b).feasible == naive::feasible(g, s, q, false));
        }
    }
}

TEST_CASE("separated numbers on stars") {
    // K_{1,n} is a caterpillar: separated 1-stack and 1-queue layouts exist.
    Graph star = complete_bipartite(1, 4);
    CHECK(separated_stack_number(star) == 1);
    CHECK(separated_queue_number(star) == 1);
    CHECK(separated_mixed_number(star) == 1);
}

TEST_CASE("environment variable overrides the default guard") {
#ifdef _WIN32
    // not exercised
#else
    setenv("LINLAY_MAX_VERTICES", "5", 1);
    CHECK(default_max_vertices() == 5);
    unsetenv("LINLAY_MAX_VERTICES");
    CHECK(default_max_vertices() == 16);
#endif
}
