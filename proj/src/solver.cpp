#include "linlay/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace linlay {

namespace {

struct Search {
    const Graph& g;
    PageBudget budget;
    int n;
    int page_count;
    std::vector<PageKind> kinds;
    std::vector<std::vector<int>> adj;
    std::vector<int> pos;          // vertex -> position, -1 if unplaced
    std::vector<Vertex> prefix;    // placed vertices in order
    std::vector<std::vector<Edge>> page_edges;
    std::vector<int> side;         // separated only: 0 = A, 1 = B
    int a_count = 0;
    std::uint64_t nodes = 0;
    bool fixed_order = false;
    std::vector<Vertex> order_in;  // when fixed_order

    bool found = false;
    std::vector<Vertex> out_order;
    std::vector<std::vector<Edge>> out_pages;

    explicit Search(const Graph& graph, const PageBudget& b) : g(graph), budget(b) {
        n = g.n;
        page_count = budget.stacks + budget.queues;
        for (int i = 0; i < budget.stacks; ++i) kinds.push_back(PageKind::Stack);
        for (int i = 0; i < budget.queues; ++i) kinds.push_back(PageKind::Queue);
        adj.assign(n, {});
        for (const Edge& e : g.edges) {
            adj[e.u].push_back(e.v);
            adj[e.v].push_back(e.u);
        }
        pos.assign(n, -1);
        page_edges.assign(page_count, {});
        if (budget.separated) {
            if (!g.bipartition)
                throw std::domain_error("feasible: separated budget needs a bipartition");
            side.assign(n, 0);
            for (Vertex v : g.bipartition->b) side[v] = 1;
            a_count = static_cast<int>(g.bipartition->a.size());
        }
    }

    bool conflicts(int page, Edge e) const {
        int a = pos[e.u], b = pos[e.v];
        if (a > b) std::swap(a, b);
        const bool stack = kinds[page] == PageKind::Stack;
        for (const Edge& f : page_edges[page]) {
            if (f.u == e.u || f.u == e.v || f.v == e.u || f.v == e.v) continue;
            int c = pos[f.u], d = pos[f.v];
            if (c > d) std::swap(c, d);
            if (stack) {
                if ((a < c && c < b && b < d) || (c < a && a < d && d < b)) return true;
            } else {
                if ((a < c && d < b) || (c < a && b < d)) return true;
            }
        }
        return false;
    }

    bool assign(const std::vector<Edge>& pending, size_t i, int placed) {
        if (i == pending.size()) return place(placed + 1);
        const Edge e = pending[i];
        bool tried_empty_stack = false, tried_empty_queue = false;
        for (int p = 0; p < page_count; ++p) {
            if (page_edges[p].empty()) {
                bool& tried = kinds[p] == PageKind::Stack ? tried_empty_stack : tried_empty_queue;
                if (tried) continue;
                tried = true;
            }
            nodes++;
            if (conflicts(p, e)) continue;
            page_edges[p].push_back(e);
            if (assign(pending, i + 1, placed)) return true;
            page_edges[p].pop_back();
        }
        return false;
    }

    bool place(int k) {
        if (k == n) {
            found = true;
            out_order = prefix;
            out_pages = page_edges;
            return true;
        }
        for (int v = 0; v < n; ++v) {
            if (pos[v] != -1) continue;
            if (fixed_order) {
                if (order_in[k] != v) continue;
            } else if (budget.separated && side[v] != (k < a_count ? 0 : 1)) {
                continue;
            }
            nodes++;
            pos[v] = k;
            prefix.push_back(v);
            std::vector<Edge> pending;
            for (int w : adj[v])
                if (pos[w] != -1) pending.push_back(Edge(v, w));
            std::sort(pending.begin(), pending.end(), [&](const Edge& x, const Edge& y) {
                int px = std::min(pos[x.u], pos[x.v]);
                int py = std::min(pos[y.u], pos[y.v]);
                return px < py;
            });
            if (assign(pending, 0, k)) return true;
            prefix.pop_back();
            pos[v] = -1;
            if (fixed_order) break;
        }
        return false;
    }

    SolveResult run() {
        SolveResult res;
        if (n == 0) {
            res.feasible = g.edges.empty();
            return res;
        }
        place(0);
        res.feasible = found;
        res.nodes_explored = nodes;
        if (found) {
            LinearLayout layout;
            layout.graph = g;
            layout.order = make_order(out_order);
            for (int p = 0; p < page_count; ++p) {
                if (out_pages[p].empty()) continue;
                Page page;
                page.kind = kinds[p];
                page.edges = out_pages[p];
                std::sort(page.edges.begin(), page.edges.end());
                layout.pages.push_back(std::move(page));
            }
            res.witness = std::move(layout);
        }
        return res;
    }
};

void check_budget(const PageBudget& budget) {
    if (budget.stacks < 0 || budget.queues < 0 || budget.stacks + budget.queues < 1)
        throw std::invalid_argument("budget must request at least one page");
}

void check_guard(const Graph& g, int max_vertices) {
    int cap = max_vertices >= 0 ? max_vertices : default_max_vertices();
    if (g.n > cap)
        throw std::runtime_error("solver size guard: graph has " + std::to_string(g.n) +
                                 " vertices, cap is " + std::to_string(cap));
}

} // namespace

int default_max_vertices() {
    if (const char* env = std::getenv("LINLAY_MAX_VERTICES")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 16;
}

SolveResult feasible(const Graph& graph, const PageBudget& budget, int max_vertices) {
    graph.check();
    check_budget(budget);
    check_guard(graph, max_vertices);
    Search search(graph, budget);
    return search.run();
}

SolveResult feasible_with_order(const Graph& graph, const VertexOrder& order,
                                const PageBudget& budget) {
    graph.check();
    check_budget(budget);
    if (order.size() != graph.n)
        throw std::invalid_argument("feasible_with_order: order length mismatch");
    Search search(graph, budget);
    search.fixed_order = true;
    search.order_in = order.order;
    return search.run();
}

namespace {

int minimize(const Graph& g, int max_vertices, bool separated,
             const std::vector<std::pair<int, int>>* mixed_splits, bool stacks_only) {
    if (g.edges.empty()) return 0;
    for (int total = 1;; ++total) {
        if (mixed_splits == nullptr) {
            PageBudget b;
            b.separated = separated;
            (stacks_only ? b.stacks : b.queues) = total;
            if (feasible(g, b, max_vertices).feasible) return total;
        } else {
            for (int s = 0; s <= total; ++s) {
                PageBudget b;
                b.stacks = s;
                b.queues = total - s;
                b.separated = separated;
                if (feasible(g, b, max_vertices).feasible) return total;
            }
        }
    }
}

} // namespace

int stack_number(const Graph& g, int max_vertices) {
    return minimize(g, max_vertices, false, nullptr, true);
}

int queue_number(const Graph& g, int max_vertices) {
    return minimize(g, max_vertices, false, nullptr, false);
}

int mixed_number(const Graph& g, int max_vertices) {
    std::vector<std::pair<int, int>> dummy;
    return minimize(g, max_vertices, false, &dummy, false);
}

int separated_queue_number(const Graph& g, int max_vertices) {
    return minimize(g, max_vertices, true, nullptr, false);
}

int separated_stack_number(const Graph& g, int max_vertices) {
    // ssn = sqn (Observation 1 swaps stacks and queues in separated layouts).
    return separated_queue_number(g, max_vertices);
}

int separated_mixed_number(const Graph& g, int max_vertices) {
    std::vector<std::pair<int, int>> dummy;
    return minimize(g, max_vertices, true, &dummy, false);
}

int max_rainbow(const Graph& graph, const VertexOrder& order) {
    const int m = static_cast<int>(graph.edges.size());
    std::vector<std::pair<int, int>> iv(m);
    for (int i = 0; i < m; ++i) {
        int a = order.pos(graph.edges[i].u), b = order.pos(graph.edges[i].v);
        iv[i] = {std::min(a, b), std::max(a, b)};
    }
    std::sort(iv.begin(), iv.end(), [](auto& x, auto& y) {
        return x.first != y.first ? x.first < y.first : x.second > y.second;
    });
    // Longest chain of strictly nested intervals.
    std::vector<int> depth(m, 1);
    int best = m > 0 ? 1 : 0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < i; ++j)
            if (iv[j].first < iv[i].first && iv[i].second < iv[j].second)
                depth[i] = std::max(depth[i], depth[j] + 1);
        best = std::max(best, depth[i]);
    }
    return best;
}

int max_twist(const Graph& graph, const VertexOrder& order) {
    const int m = static_cast<int>(graph.edges.size());
    if (m == 0) return 0;
    std::vector<std::pair<int, int>> iv(m);
    for (int i = 0; i < m; ++i) {
        int a = order.pos(graph.edges[i].u), b = order.pos(graph.edges[i].v);
        iv[i] = {std::min(a, b), std::max(a, b)};
    }
    std::sort(iv.begin(), iv.end());
    // A twist is a family of intervals pairwise strictly interleaving; all of
    // them straddle one gap between consecutive positions, so take the best
    // strictly-increasing chain (in both endpoints) over each gap.
    int best = 1;
    for (int gap = 0; gap + 1 < order.size(); ++gap) {
        std::vector<std::pair<int, int>> span;
        for (const auto& e : iv)
            if (e.first <= gap && e.second >= gap + 1) span.push_back(e);
        const int k = static_cast<int>(span.size());
        std::vector<int> len(k, 1);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < i; ++j)
                if (span[j].first < span[i].first && span[j].second < span[i].second)
                    len[i] = std::max(len[i], len[j] + 1);
            best = std::max(best, len[i]);
        }
    }
    return best;
}

} // namespace linlay
