#pragma once

#include <cstdint>
#include <optional>

#include "linlay/core.hpp"

namespace linlay {

struct PageBudget {
    int stacks = 0;
    int queues = 0;
    bool separated = false;
};

struct SolveResult {
    bool feasible = false;
    std::optional<LinearLayout> witness;
    std::uint64_t nodes_explored = 0;
};

// Vertex cap for the exact search; LINLAY_MAX_VERTICES overrides the default
// of 16. Exceeding the cap raises std::runtime_error (a refusal, never a
// wrong answer).
int default_max_vertices();

// Exact decision: does the graph admit a layout within the budget?
SolveResult feasible(const Graph& graph, const PageBudget& budget, int max_vertices = -1);

// Same decision with the vertex order fixed.
SolveResult feasible_with_order(const Graph& graph, const VertexOrder& order,
                                const PageBudget& budget);

int stack_number(const Graph& graph, int max_vertices = -1);
int queue_number(const Graph& graph, int max_vertices = -1);
int mixed_number(const Graph& graph, int max_vertices = -1);
int separated_stack_number(const Graph& graph, int max_vertices = -1);
int separated_queue_number(const Graph& graph, int max_vertices = -1);
int separated_mixed_number(const Graph& graph, int max_vertices = -1);

// Largest set of pairwise crossing (resp. nesting) edges under the order.
int max_twist(const Graph& graph, const VertexOrder& order);
int max_rainbow(const Graph& graph, const VertexOrder& order);

} // namespace linlay
