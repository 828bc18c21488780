#pragma once

#include <functional>
#include <vector>

#include "linlay/core.hpp"

namespace linlay {

struct RiffleSpec {
    std::vector<std::vector<Vertex>> parts;  // ordered partition V_1..V_k
    VertexOrder target_order;
};

// Block structure over a grid; a cell (bi, bj) is odd iff
// (bi + bj + odd_offset) is odd. Odd cells may hold no stack points and even
// cells no queue points.
struct CheckerboardGrid {
    std::vector<int> col_cuts;  // ascending cut positions, excluding 0 and m
    std::vector<int> row_cuts;
    int odd_offset = 0;
};

struct MinorMap {
    std::vector<std::vector<Vertex>> branch_sets;  // G-vertex -> H-vertices
    int radius = 0;
};

struct ShallowGraphResult {
    Graph h;
    LinearLayout h_layout;
    MinorMap map;
};

struct ContractionBoundReport {
    bool holds = false;
    int qn_g = 0;
    int qn_h = 0;
    long long bound = 0;  // (2r+1) * (2*qn_h)^(2r+1)
};

// Lemma 1(1): riffle a pure-queue layout into the target order; at most
// k^2 * q queue pages.
LinearLayout riffle_split(const LinearLayout& layout, const RiffleSpec& spec);

// Lemma 1(2): bipartite variant, parts 1..l cover A and l+1..k cover B; at
// most 2*l*(k-l)*q queue pages.
LinearLayout riffle_split_bipartite(const LinearLayout& layout, const RiffleSpec& spec, int l);

// Corollary 2: separated <= 2q-queue layout preserving the relative order
// inside each side.
LinearLayout separate(const LinearLayout& layout);

// Theorem 5: separated (1,1) layout -> separated <= 4-queue layout over the
// same graph, reversing one A-prefix and one B-prefix.
LinearLayout theorem5_transform(const LinearLayout& layout);

// Checkerboard step: reverse alternating row/column blocks to obtain a pure
// queue layout; requires the parity property (odd cells stack-free, even
// cells queue-free).
LinearLayout checkerboard_transform(const LinearLayout& layout, const CheckerboardGrid& grid);

// Halve a block structure whose cells each carry one monotone diagonal into
// a CheckerboardGrid satisfying the parity property. Cut vectors describe
// the coarse cells; they are refined by splitting each block in half.
CheckerboardGrid halve_diagonal_grid(const LinearLayout& layout,
                                     const std::vector<int>& col_cuts,
                                     const std::vector<int>& row_cuts);

using QueueLayoutOracle = std::function<LinearLayout(const Graph&)>;

// Lemma 7: pure-queue separated layout applying the same permutation to A
// and B (relative to the input order); |A| == |B| required unless pad is
// set, in which case isolated vertices are appended to the smaller side.
LinearLayout same_permutation_transform(const LinearLayout& layout, const QueueLayoutOracle& oracle,
                                        bool pad = false);

// Lemma 8: reroute stacks S_1..S_{s-1}; H admits a separated (1, s+q-1)
// layout and G is a 1-shallow minor of H.
ShallowGraphResult build_shallow_graph_H(const LinearLayout& layout);

Graph contract(const Graph& h, const MinorMap& map);

// Lemma 2 inequality qn(G) <= (2r+1) * (2*qn(H))^(2r+1) with exact values.
ContractionBoundReport check_contraction_bound(const Graph& g, const Graph& h,
                                               const MinorMap& map, int max_vertices = -1);

} // namespace linlay
