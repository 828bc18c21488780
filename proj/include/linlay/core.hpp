#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace linlay {

using Vertex = int;

// Unordered edge, normalized so that u < v.
struct Edge {
    Vertex u = -1;
    Vertex v = -1;

    Edge() = default;
    Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Bipartition {
    std::vector<Vertex> a;
    std::vector<Vertex> b;
};

// Simple undirected graph on dense vertex ids 0..n-1.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;  // sorted, unique
    std::optional<Bipartition> bipartition;

    bool has_edge(Vertex u, Vertex v) const;
    // Throws std::invalid_argument on self-loops, duplicates, ids out of
    // range, or a bipartition that does not partition V / is not respected.
    void check() const;
    // -1 when no bipartition, 0 for side A, 1 for side B.
    int side_of(Vertex v) const;
};

Graph make_graph(int n, std::vector<Edge> edges,
                 std::optional<Bipartition> bipartition = std::nullopt);

// A permutation of 0..n-1 together with its inverse.
struct VertexOrder {
    std::vector<Vertex> order;  // position -> vertex
    std::vector<int> positions; // vertex -> position

    int size() const { return static_cast<int>(order.size()); }
    int pos(Vertex v) const;
};

VertexOrder make_order(std::vector<Vertex> order);
VertexOrder identity_order(int n);

enum class PageKind { Stack, Queue };

struct Page {
    PageKind kind = PageKind::Queue;
    std::vector<Edge> edges;
};

struct LinearLayout {
    Graph graph;
    VertexOrder order;
    std::vector<Page> pages;

    // (#stack pages, #queue pages)
    std::pair<int, int> signature() const;
};

struct GridPoint {
    int col = 0;
    int row = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

// Reduced adjacency matrix view of a separated layout.
struct GridRepresentation {
    std::vector<Vertex> cols;  // A-vertices in order
    std::vector<Vertex> rows;  // B-vertices in order
    std::vector<GridPoint> points;
};

enum class PairDefect { Cross, Nest };

struct PairViolation {
    int page = -1;
    Edge e1, e2;
    PairDefect kind = PairDefect::Cross;
};

struct ValidationReport {
    std::vector<PairViolation> pair_violations;
    std::vector<Edge> missing;    // in graph, on no page
    std::vector<Edge> duplicated; // on more than one page (or twice on one)
    std::vector<Edge> unknown;    // on a page but not in the graph

    bool ok() const {
        return pair_violations.empty() && missing.empty() &&
               duplicated.empty() && unknown.empty();
    }
};

enum class MonotoneClass { Increasing, Decreasing, Neither, Both };

// True iff the endpoints of e1 and e2 strictly interleave under the order.
bool edges_cross(const VertexOrder& order, Edge e1, Edge e2);
// True iff one edge's endpoints strictly enclose the other's.
bool edges_nest(const VertexOrder& order, Edge e1, Edge e2);

ValidationReport validate_layout(const LinearLayout& layout);

bool is_separated(const LinearLayout& layout);

GridRepresentation to_grid(const LinearLayout& layout);
// Inverse of to_grid: reconstructs the separated layout (A before B, one
// queue page holding all edges unless pages are supplied by the caller).
LinearLayout from_grid(const GridRepresentation& grid);

MonotoneClass monotone_class(const std::vector<GridPoint>& points);

// Reverses the vertex order on positions [from, to]; pages unchanged.
LinearLayout reverse_segment(const LinearLayout& layout, int from, int to);

// Reverses the A-block of a valid separated layout, swapping every page's
// kind; the (s,q) signature becomes (q,s).
LinearLayout separated_flip(const LinearLayout& layout);

// --- shared helpers -------------------------------------------------------

// Partition points into the minimum number of weakly increasing subsets
// (Mirsky layering of the nesting order). Returns per-point layer indices
// and the layer count.
int nesting_layers(const std::vector<GridPoint>& points, std::vector<int>& layer_of);

int ceil_log2(int x);

std::string edge_key(Edge e);  // "u,v"

} // namespace linlay
