#include "linlay/generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace linlay {

Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete_graph: n must be positive");
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back(Edge(u, v));
    return make_graph(n, edges);
}

Graph complete_bipartite(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("complete_bipartite: sides must be positive");
    std::vector<Edge> edges;
    Bipartition bp;
    for (int u = 0; u < m; ++u) bp.a.push_back(u);
    for (int v = 0; v < n; ++v) bp.b.push_back(m + v);
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < n; ++v) edges.push_back(Edge(u, m + v));
    return make_graph(m + n, edges, bp);
}

// --- challenge family -------------------------------------------------------

ChallengeInstance challenge_graph(int k) {
    if (k < 1) throw std::invalid_argument("challenge_graph: k must be >= 1");
    const int n = 1 << k;
    auto v = [&](int i) { return i; };
    auto u = [&](int i) { return n + i; };

    // Classes in priority order: duplicates keep the earliest class.
    std::map<Edge, ChallengeClass> cls;
    auto add = [&](int vi, int ui, ChallengeClass c) {
        Edge e(v(vi), u(ui));
        cls.emplace(e, c);  // no overwrite: red first, brown second, blue last
    };
    for (int i = 0; i < n; ++i) add(i, i, ChallengeClass::Red);
    for (int i = 0; i < n / 2; ++i) {
        add(i, 2 * i, ChallengeClass::Brown);
        add(i, 2 * i + 1, ChallengeClass::Brown);
    }
    for (int i = n / 2; i < n; ++i) {
        add(i, 2 * n - 2 * i - 2, ChallengeClass::Blue);
        add(i, 2 * n - 2 * i - 1, ChallengeClass::Blue);
    }

    ChallengeInstance inst;
    inst.k = k;
    std::vector<Edge> edges;
    Bipartition bp;
    for (int i = 0; i < n; ++i) bp.a.push_back(v(i));
    for (int i = 0; i < n; ++i) bp.b.push_back(u(i));
    for (const auto& [e, c] : cls) edges.push_back(e);
    inst.graph = make_graph(2 * n, edges, bp);
    for (const Edge& e : inst.graph.edges) inst.edge_class.push_back(cls.at(e));

    std::vector<Vertex> order;
    for (int i = 0; i < n; ++i) order.push_back(v(i));
    for (int i = 0; i < n; ++i) order.push_back(u(i));
    inst.mixed_layout.graph = inst.graph;
    inst.mixed_layout.order = make_order(order);
    Page blue{PageKind::Stack, {}}, red{PageKind::Queue, {}}, brown{PageKind::Queue, {}};
    for (size_t i = 0; i < inst.graph.edges.size(); ++i) {
        switch (inst.edge_class[i]) {
            case ChallengeClass::Red: red.edges.push_back(inst.graph.edges[i]); break;
            case ChallengeClass::Brown: brown.edges.push_back(inst.graph.edges[i]); break;
            case ChallengeClass::Blue: blue.edges.push_back(inst.graph.edges[i]); break;
        }
    }
    inst.mixed_layout.pages = {blue, red, brown};
    if (!validate_layout(inst.mixed_layout).ok())
        throw std::logic_error("challenge_graph: bundled layout invalid");
    return inst;
}

std::vector<int> challenge_permutation(int k) {
    if (k < 1) throw std::invalid_argument("challenge_permutation: k must be >= 1");
    const int n = 1 << k;
    static const int F[4][4] = {
        {0, 1, 2, 3},  // f_1
        {1, 0, 3, 2},  // f_2
        {2, 3, 0, 1},  // f_3
        {3, 2, 1, 0},  // f_4
    };
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int span = 4; span <= n; span *= 4) {
        const int unit = span / 4;
        std::vector<int> next = idx;
        for (int start = 0; start + span <= n; start += span) {
            int block = start / span;           // 0-based; block i (1-based) uses f_{i mod 4}
            const int* f = F[block % 4];        // block 1 -> f_1, ..., block 4 -> f_4
            for (int t = 0; t < 4; ++t)
                for (int w = 0; w < unit; ++w)
                    next[start + t * unit + w] = idx[start + f[t] * unit + w];
        }
        idx = std::move(next);
    }
    return idx;
}

LinearLayout challenge_queue_layout(int k) {
    ChallengeInstance inst = challenge_graph(k);
    const int n = 1 << k;
    std::vector<int> perm = challenge_permutation(k);

    auto build = [&](const std::vector<int>& pos) -> std::pair<LinearLayout, int> {
        std::vector<GridPoint> pts;
        for (const Edge& e : inst.graph.edges) pts.push_back({pos[e.u], pos[e.v - n]});
        std::vector<int> layer;
        int layers = nesting_layers(pts, layer);
        LinearLayout out;
        out.graph = inst.graph;
        std::vector<Vertex> inv(n);
        for (int i = 0; i < n; ++i) inv[pos[i]] = i;
        std::vector<Vertex> order;
        for (int i = 0; i < n; ++i) order.push_back(inv[i]);
        for (int i = 0; i < n; ++i) order.push_back(n + inv[i]);
        out.order = make_order(order);
        out.pages.assign(layers, Page{PageKind::Queue, {}});
        for (size_t i = 0; i < inst.graph.edges.size(); ++i)
            out.pages[layer[i]].edges.push_back(inst.graph.edges[i]);
        for (Page& p : out.pages) std::sort(p.edges.begin(), p.edges.end());
        return {std::move(out), layers};
    };

    // pos[i] = position of index i; try the permutation as a sequence first,
    // then as a position map.
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[perm[i]] = i;
    auto [layout, layers] = build(pos);
    if (layers > 4) {
        std::tie(layout, layers) = build(perm);
        if (layers > 4)
            throw std::logic_error("challenge_queue_layout: permutation does not reach 4 queues");
    }
    if (!validate_layout(layout).ok())
        throw std::logic_error("challenge_queue_layout: layout invalid");
    return layout;
}

// --- diagonal grids ---------------------------------------------------------

DiagonalGridInstance diagonal_grid_instance(const std::vector<std::vector<bool>>& pattern,
                                            std::uint64_t seed) {
    if (pattern.empty() || pattern.front().empty())
        throw std::invalid_argument("diagonal_grid_instance: empty pattern");
    const int rows = static_cast<int>(pattern.size());
    const int cols = static_cast<int>(pattern.front().size());
    for (const auto& r : pattern)
        if (static_cast<int>(r.size()) != cols)
            throw std::invalid_argument("diagonal_grid_instance: ragged pattern");

    // Square cells with a shared even side keep every diagonal corner-to-
    // corner, which the halving step requires.
    std::mt19937_64 rng(seed);
    const int m = 2 * (1 + static_cast<int>(rng() % 3));  // 2, 4 or 6
    const int w = cols * m, h = rows * m;

    DiagonalGridInstance inst;
    Bipartition bp;
    for (int c = 0; c < w; ++c) bp.a.push_back(c);
    for (int r = 0; r < h; ++r) bp.b.push_back(w + r);
    std::vector<Edge> edges;
    std::vector<Page> pages;
    for (int bi = 0; bi < rows; ++bi)
        for (int bj = 0; bj < cols; ++bj) {
            Page page;
            page.kind = pattern[bi][bj] ? PageKind::Queue : PageKind::Stack;
            for (int t = 0; t < m; ++t) {
                int c = bj * m + t;
                int r = bi * m + (pattern[bi][bj] ? t : m - 1 - t);
                Edge e(c, w + r);
                edges.push_back(e);
                page.edges.push_back(e);
            }
            std::sort(page.edges.begin(), page.edges.end());
            pages.push_back(std::move(page));
        }
    inst.graph = make_graph(w + h, edges, bp);
    std::vector<Vertex> order;
    for (int c = 0; c < w; ++c) order.push_back(c);
    for (int r = 0; r < h; ++r) order.push_back(w + r);
    inst.layout.graph = inst.graph;
    inst.layout.order = make_order(order);
    inst.layout.pages = std::move(pages);
    for (int j = 1; j < cols; ++j) inst.col_cuts.push_back(j * m);
    for (int i = 1; i < rows; ++i) inst.row_cuts.push_back(i * m);
    if (!validate_layout(inst.layout).ok())
        throw std::logic_error("diagonal_grid_instance: layout invalid");
    return inst;
}

// --- random layout-first instances ------------------------------------------

LinearLayout random_layout_instance(int s, int q, int n_a, int n_b, double density,
                                    bool separated, std::uint64_t seed) {
    if (s < 0 || q < 0 || s + q < 1)
        throw std::invalid_argument("random_layout_instance: need s+q >= 1");
    if (n_a < 1 || n_b < 1)
        throw std::invalid_argument("random_layout_instance: sides must be positive");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("random_layout_instance: density must be in [0,1]");

    std::mt19937_64 rng(seed);
    const int n = n_a + n_b;
    std::vector<Vertex> order;
    if (separated) {
        std::vector<Vertex> a, b;
        for (int i = 0; i < n_a; ++i) a.push_back(i);
        for (int i = 0; i < n_b; ++i) b.push_back(n_a + i);
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        order = a;
        order.insert(order.end(), b.begin(), b.end());
    } else {
        for (int i = 0; i < n; ++i) order.push_back(i);
        std::shuffle(order.begin(), order.end(), rng);
    }
    VertexOrder vo = make_order(order);

    std::vector<Page> pages;
    for (int i = 0; i < s; ++i) pages.push_back({PageKind::Stack, {}});
    for (int i = 0; i < q; ++i) pages.push_back({PageKind::Queue, {}});

    std::set<Edge> used;
    auto try_insert = [&](Page& page, Edge e) {
        if (used.count(e)) return false;
        for (const Edge& f : page.edges) {
            if (page.kind == PageKind::Stack ? edges_cross(vo, e, f) : edges_nest(vo, e, f))
                return false;
        }
        page.edges.push_back(e);
        used.insert(e);
        return true;
    };
    auto random_edge = [&]() {
        int a = static_cast<int>(rng() % n_a);
        int b = n_a + static_cast<int>(rng() % n_b);
        return Edge(a, b);
    };

    for (Page& page : pages)
        for (int att = 0; att < 200 && page.edges.empty(); ++att) try_insert(page, random_edge());
    const long long target = static_cast<long long>(density * n_a * n_b + 0.5);
    long long misses = 0;
    while (static_cast<long long>(used.size()) < target && misses < 50 * target + 200) {
        Page& page = pages[rng() % pages.size()];
        if (!try_insert(page, random_edge())) misses++;
    }

    Bipartition bp;
    for (int i = 0; i < n_a; ++i) bp.a.push_back(i);
    for (int i = 0; i < n_b; ++i) bp.b.push_back(n_a + i);
    LinearLayout out;
    out.graph = make_graph(n, std::vector<Edge>(used.begin(), used.end()), bp);
    out.order = vo;
    for (Page& p : pages) {
        if (p.edges.empty()) continue;
        std::sort(p.edges.begin(), p.edges.end());
        out.pages.push_back(std::move(p));
    }
    if (!validate_layout(out).ok())
        throw std::logic_error("random_layout_instance: layout invalid");
    return out;
}

} // namespace linlay
