#include "linlay/tree_layout.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "linlay/solver.hpp"

namespace linlay {

// --- trees -----------------------------------------------------------------

std::vector<int> Tree::depths() const {
    std::vector<int> d(size(), 0);
    for (int v = 1; v < size(); ++v) d[v] = d[parent[v]] + 1;
    return d;
}

std::vector<int> Tree::leaves() const {
    std::vector<int> out;
    std::vector<int> stack = {root()};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (children[x].empty()) {
            out.push_back(x);
            continue;
        }
        for (auto it = children[x].rbegin(); it != children[x].rend(); ++it) stack.push_back(*it);
    }
    return out;
}

namespace {

int add_node(Tree& t, int parent) {
    int id = t.size();
    t.parent.push_back(parent);
    t.children.emplace_back();
    if (parent >= 0) t.children[parent].push_back(id);
    return id;
}

void grow_complete(Tree& t, int node, int levels) {
    if (levels == 0) return;
    int a = add_node(t, node);
    int b = add_node(t, node);
    grow_complete(t, a, levels - 1);
    grow_complete(t, b, levels - 1);
}

} // namespace

Tree complete_binary_tree(int h) {
    Tree t;
    add_node(t, -1);
    grow_complete(t, 0, h);
    return t;
}

Tree chain_binary_tree(int h) {
    Tree t;
    add_node(t, -1);
    int c = add_node(t, 0);
    grow_complete(t, c, h);
    return t;
}

Tree subdivide_tree_edges(const Tree& t) {
    Tree out;
    std::vector<int> remap(t.size(), -1);
    remap[0] = add_node(out, -1);
    // Depth-first, preserving child order.
    std::vector<int> stack = {0};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (auto it = t.children[x].rbegin(); it != t.children[x].rend(); ++it) stack.push_back(*it);
        for (int c : t.children[x]) {
            int mid = add_node(out, remap[x]);
            remap[c] = add_node(out, mid);
        }
    }
    return out;
}

Tree append_leaf_children(const Tree& t) {
    Tree out = t;
    for (int leaf : t.leaves()) add_node(out, leaf);
    return out;
}

// --- validation --------------------------------------------------------------

namespace {

// Minimum non-nesting partition size of inter-bag edges, as grid points
// (position in bag x, position in bag y).
int inter_bag_layers(const std::vector<GridPoint>& pts) {
    std::vector<int> layer;
    return nesting_layers(pts, layer);
}

Graph bag_subgraph(const Graph& host, const std::vector<Vertex>& bag, std::vector<Edge>& intra) {
    std::vector<int> local(host.n, -1);
    for (int i = 0; i < static_cast<int>(bag.size()); ++i) local[bag[i]] = i;
    std::vector<Edge> edges;
    for (const Edge& e : intra) edges.push_back(Edge(local[e.u], local[e.v]));
    return make_graph(static_cast<int>(bag.size()), edges);
}

} // namespace

TreeLayoutReport validate_tree_layout(const Graph& host, const TreeLayout& tl) {
    TreeLayoutReport rep;
    const int nodes = tl.tree.size();
    if (static_cast<int>(tl.bags.size()) != nodes || static_cast<int>(tl.s_of.size()) != nodes ||
        static_cast<int>(tl.q_of.size()) != nodes || static_cast<int>(tl.k_of.size()) != nodes) {
        rep.violations.push_back("tree/bag/value sizes disagree");
        return rep;
    }
    std::vector<int> node_of(host.n, -1), bag_pos(host.n, -1);
    for (int x = 0; x < nodes; ++x)
        for (int i = 0; i < static_cast<int>(tl.bags[x].size()); ++i) {
            Vertex v = tl.bags[x][i];
            if (v < 0 || v >= host.n || node_of[v] != -1) {
                rep.violations.push_back("bags do not partition the vertices");
                return rep;
            }
            node_of[v] = x;
            bag_pos[v] = i;
        }
    for (int v = 0; v < host.n; ++v)
        if (node_of[v] == -1) {
            rep.violations.push_back("vertex " + std::to_string(v) + " is in no bag");
            return rep;
        }

    std::vector<std::vector<Edge>> intra(nodes);
    std::map<std::pair<int, int>, std::vector<Edge>> inter;  // (parent, child) -> edges
    for (const Edge& e : host.edges) {
        int x = node_of[e.u], y = node_of[e.v];
        if (x == y) {
            intra[x].push_back(e);
        } else if (tl.tree.parent[x] == y) {
            inter[{y, x}].push_back(e);
        } else if (tl.tree.parent[y] == x) {
            inter[{x, y}].push_back(e);
        } else {
            rep.violations.push_back("edge (" + edge_key(e) + ") spans non-adjacent bags");
        }
    }

    for (int x = 0; x < nodes; ++x) {
        const bool leaf = tl.tree.children[x].empty();
        if (!intra[x].empty()) {
            Graph sub = bag_subgraph(host, tl.bags[x], intra[x]);
            PageBudget budget;
            budget.stacks = tl.s_of[x];
            budget.queues = tl.q_of[x];
            if (budget.stacks + budget.queues == 0) {
                rep.violations.push_back("bag " + std::to_string(x) +
                                         " has intra edges but S=Q=0");
            } else if (!feasible_with_order(sub, identity_order(sub.n), budget).feasible) {
                rep.violations.push_back("bag " + std::to_string(x) +
                                         " cannot meet its declared S/Q under the bag order");
            }
            if (!leaf) rep.simple_defects.push_back("non-leaf bag " + std::to_string(x) +
                                                    " is not independent");
            if (leaf && tl.s_of[x] + tl.q_of[x] > 1)
                rep.simple_defects.push_back("leaf bag " + std::to_string(x) +
                                             " is not a single page");
        }
    }
    for (int c = 1; c < nodes; ++c) {
        auto it = inter.find({tl.tree.parent[c], c});
        if (it == inter.end()) continue;
        std::vector<GridPoint> pts;
        for (const Edge& e : it->second) {
            Vertex pv = node_of[e.u] == tl.tree.parent[c] ? e.u : e.v;
            Vertex cv = pv == e.u ? e.v : e.u;
            pts.push_back({bag_pos[pv], bag_pos[cv]});
        }
        int actual = inter_bag_layers(pts);
        if (actual > tl.k_of[c])
            rep.violations.push_back("tree edge to node " + std::to_string(c) + " needs K=" +
                                     std::to_string(actual) + " > declared " +
                                     std::to_string(tl.k_of[c]));
        if (actual > 1)
            rep.simple_defects.push_back("tree edge to node " + std::to_string(c) +
                                         " has K=" + std::to_string(actual));
    }
    return rep;
}

// --- Lemma 3 ----------------------------------------------------------------

std::pair<SubdivisionRecord, TreeLayout> subdivide_into_tree_layout(const LinearLayout& layout,
                                                                    const Tree& tree) {
    layout.graph.check();
    if (!validate_layout(layout).ok())
        throw std::invalid_argument("subdivide_into_tree_layout: input layout invalid");
    if (layout.pages.empty())
        throw std::invalid_argument("subdivide_into_tree_layout: layout has no pages");
    const PageKind kind = layout.pages.front().kind;
    for (const Page& p : layout.pages)
        if (p.kind != kind)
            throw std::invalid_argument("subdivide_into_tree_layout: layout must be pure");
    const std::vector<int> leaves = tree.leaves();
    if (static_cast<int>(leaves.size()) < static_cast<int>(layout.pages.size()))
        throw std::invalid_argument("subdivide_into_tree_layout: tree has fewer leaves than pages");

    const Graph& g = layout.graph;
    const int n = g.n;
    const int m = static_cast<int>(g.edges.size());
    const std::vector<int> depth = tree.depths();

    // Page of each edge, and the root->leaf path of each page.
    std::map<Edge, int> page_of_edge;
    for (int p = 0; p < static_cast<int>(layout.pages.size()); ++p)
        for (const Edge& e : layout.pages[p].edges) page_of_edge[e] = p;
    std::vector<std::vector<int>> page_path(layout.pages.size());  // nodes below root
    for (int p = 0; p < static_cast<int>(layout.pages.size()); ++p) {
        std::vector<int> path;
        for (int x = leaves[p]; x != tree.root(); x = tree.parent[x]) path.push_back(x);
        std::reverse(path.begin(), path.end());
        page_path[p] = std::move(path);
    }

    // Symbols: (edge, direction) per visited node; down walks from the left
    // endpoint towards the leaf, up back to the right endpoint.
    struct Sym {
        int edge;
        bool up;
        bool operator<(const Sym& o) const {
            return edge != o.edge ? edge < o.edge : up < o.up;
        }
        bool operator==(const Sym& o) const { return edge == o.edge && up == o.up; }
    };
    std::vector<int> lpos(m), rpos(m);  // endpoint positions under sigma
    std::vector<Vertex> lv(m), rv(m);
    for (int e = 0; e < m; ++e) {
        int pu = layout.order.pos(g.edges[e].u), pv = layout.order.pos(g.edges[e].v);
        if (pu < pv) {
            lpos[e] = pu; rpos[e] = pv; lv[e] = g.edges[e].u; rv[e] = g.edges[e].v;
        } else {
            lpos[e] = pv; rpos[e] = pu; lv[e] = g.edges[e].v; rv[e] = g.edges[e].u;
        }
    }

    std::vector<std::vector<Sym>> bag_syms(tree.size());  // ordered after sorting
    std::vector<std::map<Sym, int>> sym_pos(tree.size());
    std::vector<int> edge_page(m);
    for (int e = 0; e < m; ++e) {
        edge_page[e] = page_of_edge[g.edges[e]];
        for (int z : page_path[edge_page[e]]) {
            bag_syms[z].push_back({e, false});
            bag_syms[z].push_back({e, true});
        }
    }

    // Order bags top-down: sort by the anchor's position one level up; at
    // depth 1 anchors are original endpoints and may collide, in which case
    // up-vertices precede down-vertices and ties among equals follow the
    // partner endpoint (mirrored for stack inputs).
    std::vector<int> nodes_by_depth(tree.size());
    for (int i = 0; i < tree.size(); ++i) nodes_by_depth[i] = i;
    std::sort(nodes_by_depth.begin(), nodes_by_depth.end(),
              [&](int a, int b) { return depth[a] != depth[b] ? depth[a] < depth[b] : a < b; });
    for (int z : nodes_by_depth) {
        if (z == tree.root()) continue;
        int w = tree.parent[z];
        auto anchor = [&](const Sym& s) -> long long {
            if (depth[z] == 1) return s.up ? rpos[s.edge] : lpos[s.edge];
            return sym_pos[w].at(s);
        };
        std::sort(bag_syms[z].begin(), bag_syms[z].end(), [&](const Sym& a, const Sym& b) {
            long long aa = anchor(a), ab = anchor(b);
            if (aa != ab) return aa < ab;
            if (a.up != b.up) return a.up;  // ups first at a shared endpoint
            int pa = a.up ? lpos[a.edge] : rpos[a.edge];
            int pb = b.up ? lpos[b.edge] : rpos[b.edge];
            if (kind == PageKind::Stack) std::swap(pa, pb);  // mirror for stacks
            if (pa != pb) return pa < pb;
            return a.edge < b.edge;
        });
        for (int i = 0; i < static_cast<int>(bag_syms[z].size()); ++i)
            sym_pos[z][bag_syms[z][i]] = i;
    }

    // Materialize division vertices.
    int next_id = n;
    std::vector<std::map<Sym, Vertex>> sym_id(tree.size());
    TreeLayout tl;
    tl.tree = tree;
    tl.bags.assign(tree.size(), {});
    tl.s_of.assign(tree.size(), 0);
    tl.q_of.assign(tree.size(), 0);
    tl.k_of.assign(tree.size(), 0);
    for (Vertex v : layout.order.order) tl.bags[tree.root()].push_back(v);
    for (int z = 0; z < tree.size(); ++z) {
        if (z == tree.root()) continue;
        for (const Sym& s : bag_syms[z]) {
            sym_id[z][s] = next_id;
            tl.bags[z].push_back(next_id);
            next_id++;
        }
        tl.k_of[z] = 1;
    }
    for (int p = 0; p < static_cast<int>(layout.pages.size()); ++p) {
        if (layout.pages[p].edges.empty()) continue;
        int leaf = leaves[p];
        if (kind == PageKind::Stack)
            tl.s_of[leaf] = 1;
        else
            tl.q_of[leaf] = 1;
    }

    SubdivisionRecord rec;
    rec.original = g;
    rec.paths.assign(m, {});
    std::vector<Edge> host_edges;
    for (int e = 0; e < m; ++e) {
        std::vector<Vertex>& path = rec.paths[e];
        path.push_back(lv[e]);
        const std::vector<int>& pp = page_path[edge_page[e]];
        for (int z : pp) path.push_back(sym_id[z].at({e, false}));
        for (auto it = pp.rbegin(); it != pp.rend(); ++it)
            path.push_back(sym_id[*it].at({e, true}));
        path.push_back(rv[e]);
        for (size_t i = 0; i + 1 < path.size(); ++i) host_edges.push_back(Edge(path[i], path[i + 1]));
    }
    rec.host = make_graph(next_id, host_edges);
    return {std::move(rec), std::move(tl)};
}

// --- one-division-vertex subdivision ----------------------------------------

std::pair<SubdivisionRecord, LinearLayout> subdivide_once_separated(const LinearLayout& layout) {
    layout.graph.check();
    if (!validate_layout(layout).ok())
        throw std::invalid_argument("subdivide_once_separated: input layout invalid");
    for (const Page& p : layout.pages)
        if (p.kind != PageKind::Queue)
            throw std::invalid_argument("subdivide_once_separated: input must be pure-queue");
    const Graph& g = layout.graph;
    const int m = static_cast<int>(g.edges.size());

    // Division vertices ordered by (left position, right position).
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    auto lr = [&](int e) {
        int a = layout.order.pos(g.edges[e].u), b = layout.order.pos(g.edges[e].v);
        return std::pair<int, int>(std::min(a, b), std::max(a, b));
    };
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return lr(a) != lr(b) ? lr(a) < lr(b) : a < b;
    });
    std::vector<Vertex> div_of(m);
    for (int r = 0; r < m; ++r) div_of[idx[r]] = g.n + r;

    SubdivisionRecord rec;
    rec.original = g;
    rec.paths.assign(m, {});
    std::vector<Edge> host_edges;
    for (int e = 0; e < m; ++e) {
        int a = layout.order.pos(g.edges[e].u), b = layout.order.pos(g.edges[e].v);
        Vertex left = a < b ? g.edges[e].u : g.edges[e].v;
        Vertex right = left == g.edges[e].u ? g.edges[e].v : g.edges[e].u;
        rec.paths[e] = {left, div_of[e], right};
        host_edges.push_back(Edge(left, div_of[e]));
        host_edges.push_back(Edge(div_of[e], right));
    }
    Bipartition bp;
    bp.a = layout.order.order;
    for (int r = 0; r < m; ++r) bp.b.push_back(g.n + r);
    rec.host = make_graph(g.n + m, host_edges, bp);

    LinearLayout out;
    out.graph = rec.host;
    std::vector<Vertex> order = layout.order.order;
    for (int r = 0; r < m; ++r) order.push_back(g.n + r);
    out.order = make_order(std::move(order));
    // One queue holding every left half, then one per original queue with
    // the right halves.
    Page lefts;
    lefts.kind = PageKind::Queue;
    for (int e = 0; e < m; ++e) {
        int a = layout.order.pos(g.edges[e].u), b = layout.order.pos(g.edges[e].v);
        Vertex left = a < b ? g.edges[e].u : g.edges[e].v;
        lefts.edges.push_back(Edge(left, div_of[e]));
    }
    std::sort(lefts.edges.begin(), lefts.edges.end());
    out.pages.push_back(std::move(lefts));
    std::map<Edge, int> edge_index;
    for (int e = 0; e < m; ++e) edge_index[g.edges[e]] = e;
    for (const Page& p : layout.pages) {
        Page rights;
        rights.kind = PageKind::Queue;
        for (const Edge& e : p.edges) {
            int ei = edge_index[e];
            int a = layout.order.pos(e.u), b = layout.order.pos(e.v);
            Vertex right = a < b ? e.v : e.u;
            rights.edges.push_back(Edge(div_of[ei], right));
        }
        std::sort(rights.edges.begin(), rights.edges.end());
        if (!rights.edges.empty()) out.pages.push_back(std::move(rights));
    }
    return {std::move(rec), std::move(out)};
}

// --- Lemma 4 ----------------------------------------------------------------

namespace {

void require_coloring(const TreeLayout& tl, const std::vector<int>& node_order) {
    if (!tl.coloring)
        throw std::invalid_argument("lambda_values: coloring not assigned");
    if (static_cast<int>(node_order.size()) != tl.tree.size())
        throw std::invalid_argument("lambda_values: node order length mismatch");
    // Blue tree edges must form a stack, red a queue, under the node order.
    std::vector<int> npos(tl.tree.size());
    for (int i = 0; i < static_cast<int>(node_order.size()); ++i) npos[node_order[i]] = i;
    const auto& color = *tl.coloring;
    for (int c = 1; c < tl.tree.size(); ++c) {
        for (int d = c + 1; d < tl.tree.size(); ++d) {
            int pc = tl.tree.parent[c], pd = tl.tree.parent[d];
            if (c == pd || d == pc || pc == pd || c == d) continue;
            int a = std::min(npos[c], npos[pc]), b = std::max(npos[c], npos[pc]);
            int x = std::min(npos[d], npos[pd]), y = std::max(npos[d], npos[pd]);
            if (a == x || a == y || b == x || b == y) continue;
            bool cross = (a < x && x < b && b < y) || (x < a && a < y && y < b);
            bool nest = (a < x && y < b) || (x < a && b < y);
            if (color[c] == TreeEdgeColor::Blue && color[d] == TreeEdgeColor::Blue && cross)
                throw std::invalid_argument("lambda_values: blue tree edges cross");
            if (color[c] == TreeEdgeColor::Red && color[d] == TreeEdgeColor::Red && nest)
                throw std::invalid_argument("lambda_values: red tree edges nest");
        }
    }
}

} // namespace

std::pair<int, int> lambda_values(const TreeLayout& tl, const std::vector<int>& node_order) {
    require_coloring(tl, node_order);
    const auto& color = *tl.coloring;
    const int nodes = tl.tree.size();
    std::vector<int> npos(nodes);
    for (int i = 0; i < nodes; ++i) npos[node_order[i]] = i;

    int lambda_s = 0;
    for (int x = 0; x < nodes; ++x) {
        int sum = tl.s_of[x];
        if (x != tl.tree.root() && color[x] == TreeEdgeColor::Blue) sum += tl.k_of[x];
        for (int c : tl.tree.children[x])
            if (color[c] == TreeEdgeColor::Blue) sum += tl.k_of[c];
        lambda_s = std::max(lambda_s, sum);
    }
    int lambda_q = 0;
    for (int x = 0; x < nodes; ++x) {
        int best = 0;
        for (int y = 0; y < nodes; ++y) {
            if (npos[y] > npos[x]) continue;
            int sum = 0;
            // Red tree edges (y,z) with x placed no later than z.
            if (y != tl.tree.root() && color[y] == TreeEdgeColor::Red &&
                npos[tl.tree.parent[y]] >= npos[x])
                sum += tl.k_of[y];
            for (int z : tl.tree.children[y])
                if (color[z] == TreeEdgeColor::Red && npos[z] >= npos[x]) sum += tl.k_of[z];
            best = std::max(best, sum);
        }
        lambda_q = std::max(lambda_q, tl.q_of[x] + best);
    }
    return {lambda_s, lambda_q};
}

namespace {

// Greedy-then-exact packing of edge units into at most cap pages of one
// kind; conflict is any cross (stacks) / nest (queues) pair.
std::vector<std::vector<int>> pack_units(const std::vector<std::vector<char>>& conflict, int count,
                                         int cap, const std::vector<int>& order_key) {
    std::vector<int> order(count);
    for (int i = 0; i < count; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return order_key[a] != order_key[b] ? order_key[a] < order_key[b] : a < b;
    });
    std::vector<int> color(count, -1);
    int used = 0;
    for (int u : order) {
        int c = 0;
        for (;; ++c) {
            bool ok = true;
            for (int v : order) {
                if (color[v] == c && conflict[u][v]) { ok = false; break; }
            }
            if (ok) break;
        }
        color[u] = c;
        used = std::max(used, c + 1);
    }
    if (used > cap) {
        // Exact backtracking with the cap as the color bound.
        std::fill(color.begin(), color.end(), -1);
        std::vector<int> seq = order;
        auto rec = [&](auto&& self, int i) -> bool {
            if (i == count) return true;
            int u = seq[i];
            for (int c = 0; c < cap; ++c) {
                bool ok = true;
                for (int j = 0; j < i; ++j)
                    if (color[seq[j]] == c && conflict[u][seq[j]]) { ok = false; break; }
                if (!ok) continue;
                color[u] = c;
                if (self(self, i + 1)) return true;
                color[u] = -1;
            }
            return false;
        };
        if (!rec(rec, 0))
            throw std::logic_error("tree_layout_to_mixed: unit packing exceeds lambda bound");
        used = cap;
    }
    std::vector<std::vector<int>> pages(used);
    for (int u = 0; u < count; ++u) pages[color[u]].push_back(u);
    while (!pages.empty() && pages.back().empty()) pages.pop_back();
    return pages;
}

} // namespace

LinearLayout tree_layout_to_mixed(const Graph& host, const TreeLayout& tl,
                                  const std::vector<int>& node_order) {
    require_coloring(tl, node_order);
    TreeLayoutReport rep = validate_tree_layout(host, tl);
    if (!rep.ok())
        throw std::invalid_argument("tree_layout_to_mixed: tree layout invalid: " +
                                    rep.violations.front());
    const auto& color = *tl.coloring;
    const int nodes = tl.tree.size();
    auto [lambda_s, lambda_q] = lambda_values(tl, node_order);

    // Bag orientation: flipped below a blue edge.
    std::vector<char> flipped(nodes, 0);
    std::vector<int> npos(nodes);
    for (int i = 0; i < nodes; ++i) npos[node_order[i]] = i;
    for (int i = 0; i < nodes; ++i) {
        int x = node_order[i];
        if (x == tl.tree.root()) continue;
        flipped[x] = flipped[tl.tree.parent[x]] ^ (color[x] == TreeEdgeColor::Blue ? 1 : 0);
    }

    std::vector<Vertex> final_order;
    for (int i = 0; i < nodes; ++i) {
        int x = node_order[i];
        std::vector<Vertex> bag = tl.bags[x];
        if (flipped[x]) std::reverse(bag.begin(), bag.end());
        final_order.insert(final_order.end(), bag.begin(), bag.end());
    }
    VertexOrder order = make_order(final_order);

    // Classify host edges.
    std::vector<int> node_of(host.n, -1), bag_pos(host.n, -1);
    for (int x = 0; x < nodes; ++x)
        for (int i = 0; i < static_cast<int>(tl.bags[x].size()); ++i) {
            node_of[tl.bags[x][i]] = x;
            bag_pos[tl.bags[x][i]] = i;
        }
    std::vector<std::vector<Edge>> intra(nodes);
    std::map<int, std::vector<Edge>> inter;  // child node -> edges over its parent edge
    for (const Edge& e : host.edges) {
        int x = node_of[e.u], y = node_of[e.v];
        if (x == y)
            intra[x].push_back(e);
        else
            inter[tl.tree.parent[x] == y ? x : y].push_back(e);
    }

    // Units: per tree edge, one per non-nesting layer; per bag, the pages of
    // an exact fixed-order split within the declared (S,Q) budget.
    struct Unit {
        PageKind kind;
        std::vector<Edge> edges;
        int leftmost;
    };
    std::vector<Unit> units;
    auto push_unit = [&](PageKind kind, std::vector<Edge> edges) {
        if (edges.empty()) return;
        int lm = order.size();
        for (const Edge& e : edges)
            lm = std::min({lm, order.pos(e.u), order.pos(e.v)});
        units.push_back({kind, std::move(edges), lm});
    };
    for (int c = 1; c < nodes; ++c) {
        auto it = inter.find(c);
        if (it == inter.end()) continue;
        int p = tl.tree.parent[c];
        std::vector<GridPoint> pts;
        for (const Edge& e : it->second) {
            Vertex pv = node_of[e.u] == p ? e.u : e.v;
            Vertex cv = pv == e.u ? e.v : e.u;
            pts.push_back({bag_pos[pv], bag_pos[cv]});
        }
        std::vector<int> layer;
        int layers = nesting_layers(pts, layer);
        std::vector<std::vector<Edge>> groups(layers);
        for (size_t i = 0; i < it->second.size(); ++i) groups[layer[i]].push_back(it->second[i]);
        for (auto& gedges : groups)
            push_unit(color[c] == TreeEdgeColor::Blue ? PageKind::Stack : PageKind::Queue,
                      std::move(gedges));
    }
    for (int x = 0; x < nodes; ++x) {
        if (intra[x].empty()) continue;
        Graph sub = bag_subgraph(host, tl.bags[x], intra[x]);
        PageBudget budget;
        budget.stacks = tl.s_of[x];
        budget.queues = tl.q_of[x];
        SolveResult sr = feasible_with_order(sub, identity_order(sub.n), budget);
        if (!sr.feasible)
            throw std::logic_error("tree_layout_to_mixed: bag split infeasible");
        for (const Page& page : sr.witness->pages) {
            std::vector<Edge> edges;
            for (const Edge& e : page.edges)
                edges.push_back(Edge(tl.bags[x][e.u], tl.bags[x][e.v]));
            push_unit(page.kind, std::move(edges));
        }
    }

    // Pack per kind into at most (lambda_s, lambda_q) pages.
    auto pack_kind = [&](PageKind kind, int cap) {
        std::vector<int> ids;
        for (int u = 0; u < static_cast<int>(units.size()); ++u)
            if (units[u].kind == kind) ids.push_back(u);
        const int count = static_cast<int>(ids.size());
        std::vector<std::vector<char>> conflict(count, std::vector<char>(count, 0));
        for (int i = 0; i < count; ++i)
            for (int j = i + 1; j < count; ++j) {
                bool bad = false;
                for (const Edge& a : units[ids[i]].edges) {
                    for (const Edge& b : units[ids[j]].edges) {
                        if (kind == PageKind::Stack ? edges_cross(order, a, b)
                                                    : edges_nest(order, a, b)) {
                            bad = true;
                            break;
                        }
                    }
                    if (bad) break;
                }
                conflict[i][j] = conflict[j][i] = bad;
            }
        std::vector<int> keys(count);
        for (int i = 0; i < count; ++i) keys[i] = units[ids[i]].leftmost;
        std::vector<Page> pages;
        for (const auto& group : pack_units(conflict, count, cap, keys)) {
            Page page;
            page.kind = kind;
            for (int i : group)
                page.edges.insert(page.edges.end(), units[ids[i]].edges.begin(),
                                  units[ids[i]].edges.end());
            std::sort(page.edges.begin(), page.edges.end());
            pages.push_back(std::move(page));
        }
        return pages;
    };

    LinearLayout out;
    out.graph = host;
    out.order = order;
    for (Page& p : pack_kind(PageKind::Stack, lambda_s)) out.pages.push_back(std::move(p));
    for (Page& p : pack_kind(PageKind::Queue, lambda_q)) out.pages.push_back(std::move(p));
    return out;
}

// --- pipelines ---------------------------------------------------------------

namespace {

struct Branch {
    SubdivisionRecord rec;
    TreeLayout tl;
};

LinearLayout sublayout(const LinearLayout& layout, PageKind kind) {
    LinearLayout out;
    std::vector<Edge> edges;
    for (const Page& p : layout.pages)
        if (p.kind == kind) edges.insert(edges.end(), p.edges.begin(), p.edges.end());
    out.graph = make_graph(layout.graph.n, edges);
    out.order = layout.order;
    for (const Page& p : layout.pages)
        if (p.kind == kind && !p.edges.empty()) out.pages.push_back(p);
    return out;
}

// Merge two branches (each rooted at a bag holding the original vertices)
// below one shared root.
Branch merge_two(const Graph& base, const VertexOrder& order, const Branch& a, const Branch& b) {
    Branch out;
    const int n = base.n;
    const int a_nodes = a.tl.tree.size();
    const int b_nodes = b.tl.tree.size();
    const int a_div = a.rec.host.n - n;
    // Node remap: shared root 0; A nodes 1..a_nodes-1 keep ids; B node i>0
    // becomes a_nodes-1+i.
    auto bnode = [&](int i) { return a_nodes - 1 + i; };

    Tree t;
    t.parent.assign(a_nodes + b_nodes - 1, -1);
    t.children.assign(a_nodes + b_nodes - 1, {});
    for (int i = 1; i < a_nodes; ++i) {
        int p = a.tl.tree.parent[i];
        t.parent[i] = p;
        t.children[p].push_back(i);
    }
    for (int i = 1; i < b_nodes; ++i) {
        int p = b.tl.tree.parent[i];
        t.parent[bnode(i)] = p == 0 ? 0 : bnode(p);
        t.children[p == 0 ? 0 : bnode(p)].push_back(bnode(i));
    }

    auto bvert = [&](Vertex v) { return v < n ? v : v + a_div; };

    out.tl.tree = t;
    out.tl.bags.assign(t.size(), {});
    out.tl.s_of.assign(t.size(), 0);
    out.tl.q_of.assign(t.size(), 0);
    out.tl.k_of.assign(t.size(), 0);
    out.tl.bags[0] = order.order;
    for (int i = 1; i < a_nodes; ++i) {
        out.tl.bags[i] = a.tl.bags[i];
        out.tl.s_of[i] = a.tl.s_of[i];
        out.tl.q_of[i] = a.tl.q_of[i];
        out.tl.k_of[i] = a.tl.k_of[i];
    }
    for (int i = 1; i < b_nodes; ++i) {
        for (Vertex v : b.tl.bags[i]) out.tl.bags[bnode(i)].push_back(bvert(v));
        out.tl.s_of[bnode(i)] = b.tl.s_of[i];
        out.tl.q_of[bnode(i)] = b.tl.q_of[i];
        out.tl.k_of[bnode(i)] = b.tl.k_of[i];
    }

    out.rec.original = base;
    std::map<Edge, int> a_index, b_index;
    for (int e = 0; e < static_cast<int>(a.rec.original.edges.size()); ++e)
        a_index[a.rec.original.edges[e]] = e;
    for (int e = 0; e < static_cast<int>(b.rec.original.edges.size()); ++e)
        b_index[b.rec.original.edges[e]] = e;
    std::vector<Edge> host_edges;
    for (const Edge& e : base.edges) {
        std::vector<Vertex> path;
        if (auto it = a_index.find(e); it != a_index.end()) {
            path = a.rec.paths[it->second];
        } else {
            for (Vertex v : b.rec.paths[b_index.at(e)]) path.push_back(bvert(v));
        }
        for (size_t i = 0; i + 1 < path.size(); ++i)
            host_edges.push_back(Edge(path[i], path[i + 1]));
        out.rec.paths.push_back(std::move(path));
    }
    out.rec.host = make_graph(n + a_div + (b.rec.host.n - n), host_edges);
    return out;
}

std::vector<int> dfs_preorder(const Tree& t) {
    std::vector<int> out;
    std::vector<int> stack = {t.root()};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        out.push_back(x);
        for (auto it = t.children[x].rbegin(); it != t.children[x].rend(); ++it) stack.push_back(*it);
    }
    return out;
}

std::vector<int> bfs_order(const Tree& t) {
    std::vector<int> out = {t.root()};
    for (size_t i = 0; i < out.size(); ++i)
        for (int c : t.children[out[i]]) out.push_back(c);
    return out;
}

void check_division_counts(const SubdivisionRecord& rec, const LinearLayout& input, int stack_divs,
                           int queue_divs) {
    std::map<Edge, PageKind> kind_of;
    for (const Page& p : input.pages)
        for (const Edge& e : p.edges) kind_of[e] = p.kind;
    for (int e = 0; e < static_cast<int>(rec.original.edges.size()); ++e) {
        int want = kind_of[rec.original.edges[e]] == PageKind::Stack ? stack_divs : queue_divs;
        if (rec.division_count(e) != want)
            throw std::logic_error("pipeline: unexpected division count");
    }
}

} // namespace

std::pair<SubdivisionRecord, LinearLayout> mixed_to_3stack_subdivision(const LinearLayout& layout) {
    layout.graph.check();
    if (!validate_layout(layout).ok())
        throw std::invalid_argument("mixed_to_3stack_subdivision: input layout invalid");
    int s = 0, q = 0;
    for (const Page& p : layout.pages)
        if (!p.edges.empty()) (p.kind == PageKind::Stack ? s : q)++;
    if (layout.graph.edges.empty()) {
        SubdivisionRecord rec;
        rec.original = layout.graph;
        rec.host = layout.graph;
        LinearLayout out;
        out.graph = layout.graph;
        out.order = layout.order;
        return {std::move(rec), std::move(out)};
    }
    const int h = ceil_log2(std::max({s, q, 1}));

    std::vector<Branch> branches;
    if (s > 0) {
        Branch bs;
        auto [rec, tl] = subdivide_into_tree_layout(sublayout(layout, PageKind::Stack),
                                                    chain_binary_tree(h));
        bs.rec = std::move(rec);
        bs.tl = std::move(tl);
        branches.push_back(std::move(bs));
    }
    if (q > 0) {
        LinearLayout lq = sublayout(layout, PageKind::Queue);
        auto [rec, tl] = subdivide_into_tree_layout(lq, chain_binary_tree(h));
        // Extra division step inside each queue leaf: replaces the leaf's
        // intra edges by paths through an appended child bag (K=2).
        Tree t = tl.tree;
        int next_id = rec.host.n;
        std::vector<int> leaf_nodes = t.leaves();
        std::map<Edge, int> eindex;
        for (int e = 0; e < static_cast<int>(rec.original.edges.size()); ++e)
            eindex[rec.original.edges[e]] = e;
        for (int leaf : leaf_nodes) {
            if (tl.q_of[leaf] == 0) continue;
            // Intra edges of the leaf are the middle links of the paths.
            std::vector<int> bag_pos(rec.host.n, -1);
            for (int i = 0; i < static_cast<int>(tl.bags[leaf].size()); ++i)
                bag_pos[tl.bags[leaf][i]] = i;
            std::vector<std::pair<std::pair<int, int>, int>> mids;  // ((xpos,ypos), edge)
            for (int e = 0; e < static_cast<int>(rec.paths.size()); ++e) {
                const auto& path = rec.paths[e];
                size_t half = path.size() / 2;
                Vertex xd = path[half - 1], yd = path[half];
                if (xd < rec.original.n || bag_pos[xd] < 0 || bag_pos[yd] < 0) continue;
                mids.push_back({{bag_pos[xd], bag_pos[yd]}, e});
            }
            std::sort(mids.begin(), mids.end());
            int child = add_node(t, leaf);
            tl.tree = t;
            tl.bags.emplace_back();
            tl.s_of.push_back(0);
            tl.q_of.push_back(0);
            tl.k_of.push_back(2);
            if (tl.coloring) tl.coloring->push_back(TreeEdgeColor::Red);
            for (auto& [pp, e] : mids) {
                Vertex d = next_id++;
                tl.bags[child].push_back(d);
                auto& path = rec.paths[e];
                path.insert(path.begin() + path.size() / 2, d);
            }
            tl.q_of[leaf] = 0;
        }
        std::vector<Edge> host_edges;
        for (const auto& path : rec.paths)
            for (size_t i = 0; i + 1 < path.size(); ++i)
                host_edges.push_back(Edge(path[i], path[i + 1]));
        rec.host = make_graph(next_id, host_edges);
        Branch bq;
        bq.rec = std::move(rec);
        bq.tl = std::move(tl);
        branches.push_back(std::move(bq));
    }

    Branch merged = branches.size() == 2
                        ? merge_two(layout.graph, layout.order, branches[0], branches[1])
                        : std::move(branches.front());
    if (branches.size() == 1) merged.rec.original = layout.graph;  // same edge set

    merged.tl.coloring = std::vector<TreeEdgeColor>(merged.tl.tree.size(), TreeEdgeColor::Blue);
    std::vector<int> node_order = dfs_preorder(merged.tl.tree);
    auto [ls, lq2] = lambda_values(merged.tl, node_order);
    if (ls > 3 || lq2 != 0) throw std::logic_error("mixed_to_3stack_subdivision: lambda bound");
    LinearLayout out = tree_layout_to_mixed(merged.rec.host, merged.tl, node_order);
    check_division_counts(merged.rec, layout, 2 * h + 2, 2 * h + 3);
    return {std::move(merged.rec), std::move(out)};
}

std::pair<SubdivisionRecord, LinearLayout> mixed_to_1s1q_subdivision(const LinearLayout& layout) {
    layout.graph.check();
    if (!validate_layout(layout).ok())
        throw std::invalid_argument("mixed_to_1s1q_subdivision: input layout invalid");
    int s = 0, q = 0;
    for (const Page& p : layout.pages)
        if (!p.edges.empty()) (p.kind == PageKind::Stack ? s : q)++;
    if (layout.graph.edges.empty()) {
        SubdivisionRecord rec;
        rec.original = layout.graph;
        rec.host = layout.graph;
        LinearLayout out;
        out.graph = layout.graph;
        out.order = layout.order;
        return {std::move(rec), std::move(out)};
    }
    const int h = ceil_log2(std::max({s, q, 1}));
    const Tree ts = subdivide_tree_edges(chain_binary_tree(h));
    const Tree tq = append_leaf_children(ts);

    std::vector<Branch> branches;
    if (s > 0) {
        auto [rec, tl] = subdivide_into_tree_layout(sublayout(layout, PageKind::Stack), ts);
        branches.push_back({std::move(rec), std::move(tl)});
    }
    if (q > 0) {
        auto [rec, tl] = subdivide_into_tree_layout(sublayout(layout, PageKind::Queue), tq);
        branches.push_back({std::move(rec), std::move(tl)});
    }
    Branch merged = branches.size() == 2
                        ? merge_two(layout.graph, layout.order, branches[0], branches[1])
                        : std::move(branches.front());
    if (branches.size() == 1) merged.rec.original = layout.graph;

    // Coloring: child edges red by default; the first child edge of every
    // two-child node is blue, as is the edge above every appended queue
    // leaf (the deepest level when q > 0).
    const Tree& t = merged.tl.tree;
    std::vector<int> depth = t.depths();
    int max_depth = 0;
    for (int d : depth) max_depth = std::max(max_depth, d);
    std::vector<TreeEdgeColor> color(t.size(), TreeEdgeColor::Red);
    for (int x = 0; x < t.size(); ++x)
        if (t.children[x].size() == 2) color[t.children[x].front()] = TreeEdgeColor::Blue;
    if (q > 0) {
        for (int x = 1; x < t.size(); ++x)
            if (t.children[x].empty() && depth[x] == 2 * h + 3) color[x] = TreeEdgeColor::Blue;
    }
    merged.tl.coloring = color;

    // Level-by-level node order: blue-parent nodes in reverse parent order,
    // then red-parent nodes in parent order.
    std::vector<int> node_order;
    std::vector<int> level = {t.root()};
    node_order.push_back(t.root());
    while (!level.empty()) {
        std::vector<int> next;
        for (auto it = level.rbegin(); it != level.rend(); ++it)
            for (int c : t.children[*it])
                if (color[c] == TreeEdgeColor::Blue) next.push_back(c);
        for (int x : level)
            for (int c : t.children[x])
                if (color[c] == TreeEdgeColor::Red) next.push_back(c);
        for (int x : next) node_order.push_back(x);
        level = std::move(next);
    }

    auto [ls, lq2] = lambda_values(merged.tl, node_order);
    if (ls > 1 || lq2 > 1) throw std::logic_error("mixed_to_1s1q_subdivision: lambda bound");
    LinearLayout out = tree_layout_to_mixed(merged.rec.host, merged.tl, node_order);
    check_division_counts(merged.rec, layout, 4 * h + 4, 4 * h + 6);
    return {std::move(merged.rec), std::move(out)};
}

std::pair<SubdivisionRecord, LinearLayout> separated_1sq_to_1s6q_subdivision(
    const LinearLayout& layout) {
    layout.graph.check();
    if (!validate_layout(layout).ok())
        throw std::invalid_argument("separated_1sq_to_1s6q_subdivision: input layout invalid");
    auto [s, q] = layout.signature();
    if (s != 1 || q < 1)
        throw std::invalid_argument("separated_1sq_to_1s6q_subdivision: signature must be (1,q)");
    if (!is_separated(layout))
        throw std::domain_error("separated_1sq_to_1s6q_subdivision: layout is not separated");
    int q_used = 0;
    for (const Page& p : layout.pages)
        if (p.kind == PageKind::Queue && !p.edges.empty()) q_used++;
    if (q_used == 0) {
        SubdivisionRecord rec;
        rec.original = layout.graph;
        rec.host = layout.graph;
        for (const Edge& e : layout.graph.edges) rec.paths.push_back({e.u, e.v});
        LinearLayout out;
        out.graph = layout.graph;
        out.order = layout.order;
        for (const Page& p : layout.pages)
            if (p.kind == PageKind::Stack) out.pages.push_back(p);
        return {std::move(rec), std::move(out)};
    }

    const int h = ceil_log2(q_used);
    LinearLayout lq = sublayout(layout, PageKind::Queue);
    lq.graph.bipartition.reset();
    auto [rec, tl] = subdivide_into_tree_layout(lq, complete_binary_tree(h));
    tl.coloring = std::vector<TreeEdgeColor>(tl.tree.size(), TreeEdgeColor::Red);
    std::vector<int> node_order = bfs_order(tl.tree);
    auto [ls, lq3] = lambda_values(tl, node_order);
    if (ls != 0 || lq3 > 3)
        throw std::logic_error("separated_1sq_to_1s6q_subdivision: lambda bound");
    LinearLayout dq = tree_layout_to_mixed(rec.host, tl, node_order);

    // Bipartition of the subdivision: division vertices alternate sides
    // along each path (even internal counts keep the graph bipartite).
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : layout.graph.bipartition->b) side[v] = 1;
    int first_side = side[layout.order.order.front()];
    std::vector<int> hside(rec.host.n, -1);
    for (int v = 0; v < layout.graph.n; ++v) hside[v] = side[v] == first_side ? 0 : 1;
    for (const auto& path : rec.paths)
        for (size_t i = 1; i + 1 < path.size(); ++i)
            hside[path[i]] = hside[path.front()] ^ (i % 2 == 1 ? 1 : 0);
    Bipartition hbp;
    for (int v = 0; v < rec.host.n; ++v) (hside[v] == 0 ? hbp.a : hbp.b).push_back(v);
    dq.graph.bipartition = hbp;

    LinearLayout sep = separate(dq);

    // Rejoin the untouched stack edges and extend the record with their
    // trivial paths, aligned with the full edge list.
    const Page* stack_page = nullptr;
    for (const Page& p : layout.pages)
        if (p.kind == PageKind::Stack) stack_page = &p;
    std::vector<Edge> host_edges = rec.host.edges;
    host_edges.insert(host_edges.end(), stack_page->edges.begin(), stack_page->edges.end());
    Graph full_host = make_graph(rec.host.n, host_edges, hbp);

    SubdivisionRecord full;
    full.original = layout.graph;
    full.host = full_host;
    std::map<Edge, int> qindex;
    for (int e = 0; e < static_cast<int>(rec.original.edges.size()); ++e)
        qindex[rec.original.edges[e]] = e;
    for (const Edge& e : layout.graph.edges) {
        auto it = qindex.find(e);
        if (it != qindex.end())
            full.paths.push_back(rec.paths[it->second]);
        else
            full.paths.push_back({e.u, e.v});
    }

    LinearLayout out;
    out.graph = full_host;
    out.order = sep.order;
    out.pages = sep.pages;
    Page sp;
    sp.kind = PageKind::Stack;
    sp.edges = stack_page->edges;
    std::sort(sp.edges.begin(), sp.edges.end());
    out.pages.push_back(std::move(sp));
    return {std::move(full), std::move(out)};
}

std::pair<Graph, MinorMap> contract_subdivision(const SubdivisionRecord& rec) {
    rec.host.check();
    rec.original.check();
    if (rec.paths.size() != rec.original.edges.size())
        throw std::invalid_argument("contract_subdivision: path count mismatch");
    std::set<Vertex> internals;
    std::set<Edge> path_edges;
    MinorMap map;
    map.branch_sets.assign(rec.original.n, {});
    for (int v = 0; v < rec.original.n; ++v) map.branch_sets[v] = {v};
    int max_divs = 0;
    for (int e = 0; e < static_cast<int>(rec.paths.size()); ++e) {
        const auto& path = rec.paths[e];
        if (path.size() < 2 || Edge(path.front(), path.back()) != rec.original.edges[e])
            throw std::invalid_argument("contract_subdivision: path endpoints mismatch");
        int k = static_cast<int>(path.size()) - 2;
        max_divs = std::max(max_divs, k);
        for (size_t i = 1; i + 1 < path.size(); ++i) {
            if (path[i] < rec.original.n || !internals.insert(path[i]).second)
                throw std::invalid_argument("contract_subdivision: paths not internally disjoint");
        }
        for (size_t i = 0; i + 1 < path.size(); ++i) {
            if (!rec.host.has_edge(path[i], path[i + 1]))
                throw std::invalid_argument("contract_subdivision: path edge missing from host");
            path_edges.insert(Edge(path[i], path[i + 1]));
        }
        // Split at the midpoint: first ceil(k/2) internals to the left end.
        int to_left = (k + 1) / 2;
        for (int i = 0; i < k; ++i)
            map.branch_sets[i < to_left ? path.front() : path.back()].push_back(path[1 + i]);
    }
    if (path_edges.size() != rec.host.edges.size())
        throw std::invalid_argument("contract_subdivision: host has extra edges");
    map.radius = (max_divs + 1) / 2;
    return {rec.original, map};
}

} // namespace linlay
