#pragma once

#include <optional>
#include <string>
#include <vector>

#include "linlay/core.hpp"
#include "linlay/transforms.hpp"

namespace linlay {

struct Tree {
    std::vector<int> parent;                 // parent[0] == -1 (root)
    std::vector<std::vector<int>> children;  // in creation order

    int size() const { return static_cast<int>(parent.size()); }
    int root() const { return 0; }
    std::vector<int> depths() const;
    // Leaves in depth-first (left-to-right) order.
    std::vector<int> leaves() const;
};

// Root with one child that is the root of a complete binary tree of height
// h; all leaves end up at depth h+1.
Tree chain_binary_tree(int h);
// Complete binary tree of height h (single node when h == 0).
Tree complete_binary_tree(int h);
// Replace every tree edge by a path with one extra node.
Tree subdivide_tree_edges(const Tree& t);
// Append one child below every leaf.
Tree append_leaf_children(const Tree& t);

enum class TreeEdgeColor { Blue, Red };

struct TreeLayout {
    Tree tree;
    std::vector<std::vector<Vertex>> bags;  // node -> ordered vertex list
    std::vector<int> s_of;                  // node -> S(x)
    std::vector<int> q_of;                  // node -> Q(x)
    std::vector<int> k_of;                  // child node -> K(parent, child); k_of[root] == 0
    std::optional<std::vector<TreeEdgeColor>> coloring;  // child node -> color of parent edge
};

struct TreeLayoutReport {
    std::vector<std::string> violations;       // T-partition / declared-value defects
    std::vector<std::string> simple_defects;   // simpleness bullets
    bool ok() const { return violations.empty(); }
    bool simple() const { return violations.empty() && simple_defects.empty(); }
};

struct SubdivisionRecord {
    Graph host;      // the subdivision D
    Graph original;  // G
    // paths[i] replaces original.edges[i]; starts at .u, ends at .v.
    std::vector<std::vector<Vertex>> paths;

    int division_count(int edge_index) const {
        return static_cast<int>(paths[edge_index].size()) - 2;
    }
};

TreeLayoutReport validate_tree_layout(const Graph& host, const TreeLayout& tl);

// Lemma 3: subdivide a pure k-page layout into a simple T-layout of the
// given tree; page i is routed to leaf i.
std::pair<SubdivisionRecord, TreeLayout> subdivide_into_tree_layout(const LinearLayout& layout,
                                                                    const Tree& tree);

// [DW05]: one division vertex per edge; separated (original vertices vs.
// division vertices) layout with <= q+1 queues, original order preserved.
std::pair<SubdivisionRecord, LinearLayout> subdivide_once_separated(const LinearLayout& layout);

// Lemma 4 accounting; node_order maps position -> tree node.
std::pair<int, int> lambda_values(const TreeLayout& tl, const std::vector<int>& node_order);

// Lemma 4 assembly into a mixed layout of the host graph.
LinearLayout tree_layout_to_mixed(const Graph& host, const TreeLayout& tl,
                                  const std::vector<int>& node_order);

// Lemma 5: 3-stack subdivision; stack edges get 2h+2 and queue edges 2h+3
// division vertices, h = ceil(log2(max(s,q))).
std::pair<SubdivisionRecord, LinearLayout> mixed_to_3stack_subdivision(const LinearLayout& layout);

// Lemma 6: 1-stack 1-queue subdivision; 4h+4 / 4h+6 division vertices.
std::pair<SubdivisionRecord, LinearLayout> mixed_to_1s1q_subdivision(const LinearLayout& layout);

// Lemma 9: separated (1,q) -> separated (1,<=6); queue edges get
// 2*ceil(log2 q) division vertices, stack edges none.
std::pair<SubdivisionRecord, LinearLayout> separated_1sq_to_1s6q_subdivision(
    const LinearLayout& layout);

// Contract every path; returns G and the radius-ceil((k+1)/2) MinorMap that
// splits each path at its midpoint.
std::pair<Graph, MinorMap> contract_subdivision(const SubdivisionRecord& rec);

} // namespace linlay
