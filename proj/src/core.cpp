#include "linlay/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace linlay {

bool Graph::has_edge(Vertex u, Vertex v) const {
    return std::binary_search(edges.begin(), edges.end(), Edge(u, v));
}

void Graph::check() const {
    if (n < 0) throw std::invalid_argument("graph: negative vertex count");
    for (const Edge& e : edges) {
        if (e.u == e.v) throw std::invalid_argument("graph: self-loop");
        if (e.u < 0 || e.v >= n) throw std::invalid_argument("graph: vertex id out of range");
    }
    if (!std::is_sorted(edges.begin(), edges.end()))
        throw std::invalid_argument("graph: edges not sorted");
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
        throw std::invalid_argument("graph: duplicate edge");
    if (bipartition) {
        std::vector<int> side(n, -1);
        for (Vertex v : bipartition->a) {
            if (v < 0 || v >= n || side[v] != -1)
                throw std::invalid_argument("graph: bad bipartition side A");
            side[v] = 0;
        }
        for (Vertex v : bipartition->b) {
            if (v < 0 || v >= n || side[v] != -1)
                throw std::invalid_argument("graph: bad bipartition side B");
            side[v] = 1;
        }
        for (int v = 0; v < n; ++v)
            if (side[v] == -1)
                throw std::invalid_argument("graph: bipartition does not cover all vertices");
        for (const Edge& e : edges)
            if (side[e.u] == side[e.v])
                throw std::invalid_argument("graph: edge inside one bipartition side");
    }
}

int Graph::side_of(Vertex v) const {
    if (!bipartition) return -1;
    for (Vertex a : bipartition->a)
        if (a == v) return 0;
    return 1;
}

Graph make_graph(int n, std::vector<Edge> edges, std::optional<Bipartition> bipartition) {
    Graph g;
    g.n = n;
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges = std::move(edges);
    g.bipartition = std::move(bipartition);
    g.check();
    return g;
}

int VertexOrder::pos(Vertex v) const {
    if (v < 0 || v >= static_cast<int>(positions.size()))
        throw std::domain_error("vertex not in order");
    return positions[v];
}

VertexOrder make_order(std::vector<Vertex> order) {
    VertexOrder vo;
    const int n = static_cast<int>(order.size());
    vo.positions.assign(n, -1);
    for (int p = 0; p < n; ++p) {
        Vertex v = order[p];
        if (v < 0 || v >= n || vo.positions[v] != -1)
            throw std::invalid_argument("order is not a permutation of 0..n-1");
        vo.positions[v] = p;
    }
    vo.order = std::move(order);
    return vo;
}

VertexOrder identity_order(int n) {
    std::vector<Vertex> o(n);
    for (int i = 0; i < n; ++i) o[i] = i;
    return make_order(std::move(o));
}

std::pair<int, int> LinearLayout::signature() const {
    int s = 0, q = 0;
    for (const Page& p : pages)
        (p.kind == PageKind::Stack ? s : q)++;
    return {s, q};
}

bool edges_cross(const VertexOrder& order, Edge e1, Edge e2) {
    if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) return false;
    int a = order.pos(e1.u), b = order.pos(e1.v);
    int c = order.pos(e2.u), d = order.pos(e2.v);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

bool edges_nest(const VertexOrder& order, Edge e1, Edge e2) {
    if (e1.u == e2.u || e1.u == e2.v || e1.v == e2.u || e1.v == e2.v) return false;
    int a = order.pos(e1.u), b = order.pos(e1.v);
    int c = order.pos(e2.u), d = order.pos(e2.v);
    if (a > b) std::swap(a, b);
    if (c > d) std::swap(c, d);
    return (a < c && d < b) || (c < a && b < d);
}

ValidationReport validate_layout(const LinearLayout& layout) {
    ValidationReport report;
    std::map<Edge, int> seen;  // edge -> #occurrences across pages
    for (int pi = 0; pi < static_cast<int>(layout.pages.size()); ++pi) {
        const Page& page = layout.pages[pi];
        for (const Edge& e : page.edges) {
            if (!layout.graph.has_edge(e.u, e.v)) report.unknown.push_back(e);
            seen[e]++;
        }
        for (size_t i = 0; i < page.edges.size(); ++i) {
            for (size_t j = i + 1; j < page.edges.size(); ++j) {
                const Edge& e1 = page.edges[i];
                const Edge& e2 = page.edges[j];
                if (page.kind == PageKind::Stack && edges_cross(layout.order, e1, e2))
                    report.pair_violations.push_back({pi, e1, e2, PairDefect::Cross});
                if (page.kind == PageKind::Queue && edges_nest(layout.order, e1, e2))
                    report.pair_violations.push_back({pi, e1, e2, PairDefect::Nest});
            }
        }
    }
    for (const Edge& e : layout.graph.edges) {
        auto it = seen.find(e);
        if (it == seen.end())
            report.missing.push_back(e);
        else if (it->second > 1)
            report.duplicated.push_back(e);
    }
    return report;
}

bool is_separated(const LinearLayout& layout) {
    if (!layout.graph.bipartition) throw std::domain_error("is_separated: no bipartition");
    const Bipartition& bp = *layout.graph.bipartition;
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : bp.b) side[v] = 1;
    int flips = 0;
    for (int p = 1; p < layout.order.size(); ++p)
        if (side[layout.order.order[p]] != side[layout.order.order[p - 1]]) flips++;
    return flips <= 1;
}

GridRepresentation to_grid(const LinearLayout& layout) {
    if (!is_separated(layout)) throw std::domain_error("to_grid: layout is not separated");
    const Bipartition& bp = *layout.graph.bipartition;
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : bp.b) side[v] = 1;

    GridRepresentation grid;
    std::vector<int> col_of(layout.graph.n, -1), row_of(layout.graph.n, -1);
    for (Vertex v : layout.order.order) {
        if (side[v] == 0) {
            col_of[v] = static_cast<int>(grid.cols.size());
            grid.cols.push_back(v);
        } else {
            row_of[v] = static_cast<int>(grid.rows.size());
            grid.rows.push_back(v);
        }
    }
    for (const Edge& e : layout.graph.edges) {
        Vertex av = side[e.u] == 0 ? e.u : e.v;
        Vertex bv = side[e.u] == 0 ? e.v : e.u;
        grid.points.push_back({col_of[av], row_of[bv]});
    }
    std::sort(grid.points.begin(), grid.points.end());
    return grid;
}

LinearLayout from_grid(const GridRepresentation& grid) {
    Bipartition bp;
    bp.a = grid.cols;
    bp.b = grid.rows;
    std::vector<Edge> edges;
    for (const GridPoint& p : grid.points)
        edges.emplace_back(grid.cols.at(p.col), grid.rows.at(p.row));
    int n = 0;
    for (Vertex v : grid.cols) n = std::max(n, v + 1);
    for (Vertex v : grid.rows) n = std::max(n, v + 1);

    LinearLayout layout;
    layout.graph = make_graph(n, edges, bp);
    std::vector<Vertex> order = grid.cols;
    order.insert(order.end(), grid.rows.begin(), grid.rows.end());
    layout.order = make_order(std::move(order));
    Page page;
    page.kind = PageKind::Queue;
    page.edges = layout.graph.edges;
    layout.pages.push_back(std::move(page));
    return layout;
}

MonotoneClass monotone_class(const std::vector<GridPoint>& points) {
    bool inc = true, dec = true;
    for (size_t i = 0; i < points.size(); ++i) {
        for (size_t j = i + 1; j < points.size(); ++j) {
            long long prod = static_cast<long long>(points[i].col - points[j].col) *
                             (points[i].row - points[j].row);
            if (prod < 0) inc = false;
            if (prod > 0) dec = false;
        }
    }
    if (inc && dec) return MonotoneClass::Both;
    if (inc) return MonotoneClass::Increasing;
    if (dec) return MonotoneClass::Decreasing;
    return MonotoneClass::Neither;
}

LinearLayout reverse_segment(const LinearLayout& layout, int from, int to) {
    if (from < 0 || to < from || to >= layout.order.size())
        throw std::invalid_argument("reverse_segment: positions out of range");
    LinearLayout out = layout;
    std::vector<Vertex> order = layout.order.order;
    std::reverse(order.begin() + from, order.begin() + to + 1);
    out.order = make_order(std::move(order));
    return out;
}

LinearLayout separated_flip(const LinearLayout& layout) {
    if (!validate_layout(layout).ok())
        throw std::invalid_argument("separated_flip: input layout invalid");
    if (!is_separated(layout))
        throw std::domain_error("separated_flip: layout is not separated");
    const Bipartition& bp = *layout.graph.bipartition;
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : bp.b) side[v] = 1;
    // Find the extent of the A-block in the order.
    int first = -1, last = -1;
    for (int p = 0; p < layout.order.size(); ++p) {
        if (side[layout.order.order[p]] == 0) {
            if (first < 0) first = p;
            last = p;
        }
    }
    LinearLayout out = layout;
    if (first >= 0) out = reverse_segment(layout, first, last);
    for (Page& page : out.pages)
        page.kind = page.kind == PageKind::Stack ? PageKind::Queue : PageKind::Stack;
    return out;
}

int nesting_layers(const std::vector<GridPoint>& points, std::vector<int>& layer_of) {
    // p dominates q (q nests inside p) iff p.col < q.col and p.row > q.row.
    const int k = static_cast<int>(points.size());
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return points[a] < points[b]; });
    layer_of.assign(k, 0);
    int layers = 0;
    for (int ii = 0; ii < k; ++ii) {
        int i = idx[ii];
        int best = 0;
        for (int jj = 0; jj < ii; ++jj) {
            int j = idx[jj];
            if (points[j].col < points[i].col && points[j].row > points[i].row)
                best = std::max(best, layer_of[j] + 1);
        }
        layer_of[i] = best;
        layers = std::max(layers, best + 1);
    }
    return layers;
}

int ceil_log2(int x) {
    if (x <= 1) return 0;
    int h = 0;
    int v = 1;
    while (v < x) {
        v *= 2;
        h++;
    }
    return h;
}

std::string edge_key(Edge e) {
    return std::to_string(e.u) + "," + std::to_string(e.v);
}

} // namespace linlay
