#pragma once

#include <cstdint>
#include <vector>

#include "linlay/core.hpp"

namespace linlay {

Graph complete_graph(int n);
Graph complete_bipartite(int m, int n);

enum class ChallengeClass { Red, Brown, Blue };

struct ChallengeInstance {
    int k = 0;  // n = 2^k; vertices v_0..v_{n-1} are ids 0..n-1, u_i is n+i
    Graph graph;
    LinearLayout mixed_layout;  // separated (1,2): red+brown queues, blue stack
    std::vector<ChallengeClass> edge_class;  // aligned with graph.edges
};

ChallengeInstance challenge_graph(int k);

// The recursive f_1..f_4 block permutation of 0..2^k-1; applying it to both
// rows and columns of the challenge grid yields a <= 4-queue layout.
std::vector<int> challenge_permutation(int k);

// The permuted separated pure-queue layout itself (<= 4 queues, validated).
LinearLayout challenge_queue_layout(int k);

struct DiagonalGridInstance {
    Graph graph;
    LinearLayout layout;        // separated, one page per cell
    std::vector<int> col_cuts;  // coarse block structure (cell boundaries)
    std::vector<int> row_cuts;
};

// Grid whose cells each hold one monotone diagonal; pattern[i][j] true =
// increasing cell. Cell extents are randomized per seed.
DiagonalGridInstance diagonal_grid_instance(const std::vector<std::vector<bool>>& pattern,
                                            std::uint64_t seed);

// Layout-first random instance: signature componentwise <= (s,q), valid by
// construction, separated on request. Every requested page receives at
// least one edge when the vertex count permits.
LinearLayout random_layout_instance(int s, int q, int n_a, int n_b, double density,
                                    bool separated, std::uint64_t seed);

} // namespace linlay
