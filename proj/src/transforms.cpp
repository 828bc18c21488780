#include "linlay/transforms.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

#include "linlay/solver.hpp"

namespace linlay {

namespace {

void require_valid(const LinearLayout& layout, const char* who) {
    layout.graph.check();
    if (!validate_layout(layout).ok())
        throw std::invalid_argument(std::string(who) + ": input layout is invalid");
}

void require_pure_queue(const LinearLayout& layout, const char* who) {
    for (const Page& p : layout.pages)
        if (p.kind != PageKind::Queue)
            throw std::invalid_argument(std::string(who) + ": input must be pure-queue");
}

// Side of each vertex according to the layout's block structure: vertices of
// the block that comes first in the order get 0. Requires separated input.
std::vector<int> block_sides(const LinearLayout& layout, const char* who) {
    if (!is_separated(layout))
        throw std::domain_error(std::string(who) + ": layout is not separated");
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : layout.graph.bipartition->b) side[v] = 1;
    int first_side = side[layout.order.order.front()];
    if (first_side == 1)
        for (auto& s : side) s = 1 - s;
    return side;
}

void check_riffle_spec(const LinearLayout& layout, const RiffleSpec& spec) {
    const int n = layout.graph.n;
    if (spec.target_order.size() != n)
        throw std::invalid_argument("riffle: target order length mismatch");
    std::vector<int> part_of(n, -1);
    for (int p = 0; p < static_cast<int>(spec.parts.size()); ++p) {
        for (Vertex v : spec.parts[p]) {
            if (v < 0 || v >= n || part_of[v] != -1)
                throw std::invalid_argument("riffle: parts do not partition V");
            part_of[v] = p;
        }
    }
    for (int v = 0; v < n; ++v)
        if (part_of[v] == -1)
            throw std::invalid_argument("riffle: parts do not partition V");
    for (const auto& part : spec.parts)
        for (size_t i = 0; i + 1 < part.size(); ++i)
            for (size_t j = i + 1; j < part.size(); ++j) {
                Vertex u = part[i], v = part[j];
                bool before_in = layout.order.pos(u) < layout.order.pos(v);
                bool before_out = spec.target_order.pos(u) < spec.target_order.pos(v);
                if (before_in != before_out)
                    throw std::domain_error("riffle: target order breaks a part's relative order");
            }
}

std::vector<int> part_lookup(const RiffleSpec& spec, int n) {
    std::vector<int> part_of(n, -1);
    for (int p = 0; p < static_cast<int>(spec.parts.size()); ++p)
        for (Vertex v : spec.parts[p]) part_of[v] = p;
    return part_of;
}

LinearLayout riffle_common(const LinearLayout& layout, const RiffleSpec& spec) {
    // Split every queue by (part of left endpoint, part of right endpoint)
    // under the input order.
    const std::vector<int> part_of = part_lookup(spec, layout.graph.n);
    LinearLayout out;
    out.graph = layout.graph;
    out.order = spec.target_order;
    std::map<std::tuple<int, int, int>, std::vector<Edge>> groups;
    for (int pi = 0; pi < static_cast<int>(layout.pages.size()); ++pi) {
        for (const Edge& e : layout.pages[pi].edges) {
            Vertex left = layout.order.pos(e.u) < layout.order.pos(e.v) ? e.u : e.v;
            Vertex right = left == e.u ? e.v : e.u;
            groups[{pi, part_of[left], part_of[right]}].push_back(e);
        }
    }
    for (auto& [key, edges] : groups) {
        Page page;
        page.kind = PageKind::Queue;
        std::sort(edges.begin(), edges.end());
        page.edges = std::move(edges);
        out.pages.push_back(std::move(page));
    }
    return out;
}

} // namespace

LinearLayout riffle_split(const LinearLayout& layout, const RiffleSpec& spec) {
    require_valid(layout, "riffle_split");
    require_pure_queue(layout, "riffle_split");
    check_riffle_spec(layout, spec);
    return riffle_common(layout, spec);
}

LinearLayout riffle_split_bipartite(const LinearLayout& layout, const RiffleSpec& spec, int l) {
    require_valid(layout, "riffle_split_bipartite");
    require_pure_queue(layout, "riffle_split_bipartite");
    check_riffle_spec(layout, spec);
    if (!layout.graph.bipartition)
        throw std::domain_error("riffle_split_bipartite: graph has no bipartition");
    const int k = static_cast<int>(spec.parts.size());
    if (l < 1 || l >= k)
        throw std::invalid_argument("riffle_split_bipartite: l out of range");
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : layout.graph.bipartition->b) side[v] = 1;
    for (int p = 0; p < k; ++p)
        for (Vertex v : spec.parts[p])
            if (side[v] != (p < l ? 0 : 1))
                throw std::invalid_argument(
                    "riffle_split_bipartite: parts 1..l must cover A, the rest B");
    return riffle_common(layout, spec);
}

LinearLayout separate(const LinearLayout& layout) {
    require_valid(layout, "separate");
    require_pure_queue(layout, "separate");
    if (!layout.graph.bipartition)
        throw std::domain_error("separate: graph has no bipartition");
    std::vector<int> side(layout.graph.n, 0);
    for (Vertex v : layout.graph.bipartition->b) side[v] = 1;
    RiffleSpec spec;
    spec.parts.resize(2);
    std::vector<Vertex> target;
    for (Vertex v : layout.order.order)
        if (side[v] == 0) {
            spec.parts[0].push_back(v);
            target.push_back(v);
        } else {
            spec.parts[1].push_back(v);
        }
    for (Vertex v : layout.order.order)
        if (side[v] == 1) target.push_back(v);
    spec.target_order = make_order(std::move(target));
    return riffle_split_bipartite(layout, spec, 1);
}

// --- Theorem 5 -------------------------------------------------------------

namespace {

struct SeparatedGridView {
    std::vector<Vertex> cols, rows;        // first block, second block in order
    std::vector<int> col_of, row_of;       // vertex -> index or -1
};

SeparatedGridView grid_view(const LinearLayout& layout, const std::vector<int>& side) {
    SeparatedGridView v;
    v.col_of.assign(layout.graph.n, -1);
    v.row_of.assign(layout.graph.n, -1);
    for (Vertex x : layout.order.order) {
        if (side[x] == 0) {
            v.col_of[x] = static_cast<int>(v.cols.size());
            v.cols.push_back(x);
        } else {
            v.row_of[x] = static_cast<int>(v.rows.size());
            v.rows.push_back(x);
        }
    }
    return v;
}

GridPoint point_of(const SeparatedGridView& v, Edge e, const std::vector<int>& side) {
    Vertex a = side[e.u] == 0 ? e.u : e.v;
    Vertex b = a == e.u ? e.v : e.u;
    return {v.col_of[a], v.row_of[b]};
}

} // namespace

LinearLayout theorem5_transform(const LinearLayout& layout) {
    require_valid(layout, "theorem5_transform");
    auto [s, q] = layout.signature();
    if (s != 1 || q != 1)
        throw std::invalid_argument("theorem5_transform: signature must be (1,1)");
    const std::vector<int> side = block_sides(layout, "theorem5_transform");
    const SeparatedGridView view = grid_view(layout, side);
    const int m = static_cast<int>(view.cols.size());
    const int n2 = static_cast<int>(view.rows.size());
    if (m == 0 || n2 == 0)
        throw std::invalid_argument("theorem5_transform: empty side");

    const Page& stack_page = layout.pages[layout.pages[0].kind == PageKind::Stack ? 0 : 1];
    const Page& queue_page = layout.pages[layout.pages[0].kind == PageKind::Queue ? 0 : 1];
    std::vector<GridPoint> spts, qpts;
    for (const Edge& e : stack_page.edges) spts.push_back(point_of(view, e, side));
    for (const Edge& e : queue_page.edges) qpts.push_back(point_of(view, e, side));

    auto build = [&](int i, int r) {
        // Reverse the first i+1 columns and the first r+1 rows; the column
        // block occupies positions 0..m-1 by the block_sides convention.
        std::vector<Vertex> order = layout.order.order;
        std::reverse(order.begin(), order.begin() + i + 1);
        std::reverse(order.begin() + m, order.begin() + m + r + 1);
        LinearLayout out;
        out.graph = layout.graph;
        out.order = make_order(std::move(order));
        std::vector<Edge> q1, q2, q3, q4;
        for (size_t t = 0; t < queue_page.edges.size(); ++t)
            (qpts[t].col <= i ? q1 : q2).push_back(queue_page.edges[t]);
        for (size_t t = 0; t < stack_page.edges.size(); ++t)
            (spts[t].row <= r ? q3 : q4).push_back(stack_page.edges[t]);
        for (auto* part : {&q1, &q2, &q3, &q4}) {
            if (part->empty()) continue;
            Page page;
            page.kind = PageKind::Queue;
            std::sort(part->begin(), part->end());
            page.edges = std::move(*part);
            out.pages.push_back(std::move(page));
        }
        return out;
    };

    // A pivot (i,r) is usable when it is pairwise weakly increasing with all
    // queue points and weakly decreasing with all stack points, and the two
    // boundary conditions below hold; the prefix reversal then splits the
    // pages into four queues.
    for (int i = 0; i < m; ++i) {
        for (int r = 0; r < n2; ++r) {
            bool ok = true;
            for (const GridPoint& p : qpts)
                if (static_cast<long long>(i - p.col) * (r - p.row) < 0) { ok = false; break; }
            if (!ok) continue;
            for (const GridPoint& p : spts)
                if (static_cast<long long>(i - p.col) * (r - p.row) > 0) { ok = false; break; }
            if (!ok) continue;
            bool q_above = false, q_left = false;
            for (const GridPoint& p : qpts) {
                if (p.col == i && p.row > r) q_above = true;
                if (p.col < i) q_left = true;
            }
            if (q_above && q_left) continue;
            bool s_below = false, s_left_on_row = false;
            for (const GridPoint& p : spts) {
                if (p.col == i && p.row < r) s_below = true;
                if (p.col < i && p.row == r) s_left_on_row = true;
            }
            if (s_below && s_left_on_row) continue;
            LinearLayout out = build(i, r);
            if (validate_layout(out).ok()) return out;
        }
    }
    // Fallback: exhaustive scan with direct validation.
    for (int i = 0; i < m; ++i)
        for (int r = 0; r < n2; ++r) {
            LinearLayout out = build(i, r);
            if (validate_layout(out).ok()) return out;
        }
    throw std::logic_error("theorem5_transform: no valid prefix reversal found");
}

// --- checkerboard ----------------------------------------------------------

namespace {

int block_index(const std::vector<int>& cuts, int pos) {
    int b = 0;
    for (int c : cuts)
        if (pos >= c) b++;
    return b;
}

} // namespace

LinearLayout checkerboard_transform(const LinearLayout& layout, const CheckerboardGrid& grid) {
    require_valid(layout, "checkerboard_transform");
    const std::vector<int> side = block_sides(layout, "checkerboard_transform");
    const SeparatedGridView view = grid_view(layout, side);
    const int m = static_cast<int>(view.cols.size());
    const int n2 = static_cast<int>(view.rows.size());

    // Parity property: odd cells hold no stack points, even cells no queue
    // points.
    for (const Page& page : layout.pages) {
        for (const Edge& e : page.edges) {
            GridPoint p = point_of(view, e, side);
            int bi = block_index(grid.col_cuts, p.col);
            int bj = block_index(grid.row_cuts, p.row);
            bool odd = (bi + bj + grid.odd_offset) % 2 == 1;
            if (odd && page.kind == PageKind::Stack)
                throw std::domain_error("checkerboard: stack point in odd cell (" +
                                        std::to_string(bi) + "," + std::to_string(bj) + ")");
            if (!odd && page.kind == PageKind::Queue)
                throw std::domain_error("checkerboard: queue point in even cell (" +
                                        std::to_string(bi) + "," + std::to_string(bj) + ")");
        }
    }

    // Reverse column blocks with odd index and row blocks with index equal
    // to odd_offset mod 2: every even (stack) cell is flipped along exactly
    // one axis, every odd (queue) cell along zero or two.
    auto block_ranges = [](const std::vector<int>& cuts, int size) {
        std::vector<std::pair<int, int>> ranges;
        int lo = 0;
        for (int c : cuts) {
            ranges.push_back({lo, c});
            lo = c;
        }
        ranges.push_back({lo, size});
        return ranges;
    };
    std::vector<Vertex> order = layout.order.order;
    const int col_base = 0, row_base = m;
    auto col_ranges = block_ranges(grid.col_cuts, m);
    auto row_ranges = block_ranges(grid.row_cuts, n2);
    for (int b = 0; b < static_cast<int>(col_ranges.size()); ++b)
        if (b % 2 == 1)
            std::reverse(order.begin() + col_base + col_ranges[b].first,
                         order.begin() + col_base + col_ranges[b].second);
    for (int b = 0; b < static_cast<int>(row_ranges.size()); ++b)
        if (b % 2 == grid.odd_offset % 2)
            std::reverse(order.begin() + row_base + row_ranges[b].first,
                         order.begin() + row_base + row_ranges[b].second);

    LinearLayout out;
    out.graph = layout.graph;
    out.order = make_order(std::move(order));
    std::map<std::tuple<int, int, int>, std::vector<Edge>> groups;
    for (int pi = 0; pi < static_cast<int>(layout.pages.size()); ++pi) {
        for (const Edge& e : layout.pages[pi].edges) {
            GridPoint p = point_of(view, e, side);
            groups[{pi, block_index(grid.col_cuts, p.col), block_index(grid.row_cuts, p.row)}]
                .push_back(e);
        }
    }
    for (auto& [key, edges] : groups) {
        Page page;
        page.kind = PageKind::Queue;
        std::sort(edges.begin(), edges.end());
        page.edges = std::move(edges);
        out.pages.push_back(std::move(page));
    }
    return out;
}

CheckerboardGrid halve_diagonal_grid(const LinearLayout& layout,
                                     const std::vector<int>& col_cuts,
                                     const std::vector<int>& row_cuts) {
    require_valid(layout, "halve_diagonal_grid");
    const std::vector<int> side = block_sides(layout, "halve_diagonal_grid");
    const SeparatedGridView view = grid_view(layout, side);
    const int m = static_cast<int>(view.cols.size());
    const int n2 = static_cast<int>(view.rows.size());

    // Each coarse cell must hold a single monotone chain.
    std::map<std::pair<int, int>, std::vector<GridPoint>> cells;
    for (const Edge& e : layout.graph.edges) {
        GridPoint p = point_of(view, e, side);
        cells[{block_index(col_cuts, p.col), block_index(row_cuts, p.row)}].push_back(p);
    }
    for (const auto& [cell, pts] : cells)
        if (monotone_class(pts) == MonotoneClass::Neither)
            throw std::domain_error("halve_diagonal_grid: cell (" + std::to_string(cell.first) +
                                    "," + std::to_string(cell.second) +
                                    ") is not a single monotone diagonal");

    auto halve = [](const std::vector<int>& cuts, int size) {
        std::vector<int> bounds = cuts;
        bounds.push_back(size);
        std::vector<int> fine;
        int lo = 0;
        for (int hi : bounds) {
            if (hi - lo >= 2) fine.push_back(lo + (hi - lo + 1) / 2);
            if (hi != size) fine.push_back(hi);
            lo = hi;
        }
        return fine;
    };

    CheckerboardGrid grid;
    grid.col_cuts = halve(col_cuts, m);
    grid.row_cuts = halve(row_cuts, n2);
    // Increasing halves land in fine cells of even index sum; label those
    // odd so the parity property (odd = queue-only) holds.
    grid.odd_offset = 1;
    return grid;
}

// --- Lemma 7 ---------------------------------------------------------------

LinearLayout same_permutation_transform(const LinearLayout& layout, const QueueLayoutOracle& oracle,
                                        bool pad) {
    require_valid(layout, "same_permutation_transform");
    std::vector<int> side = block_sides(layout, "same_permutation_transform");

    LinearLayout base = layout;
    // Pad the smaller side with isolated vertices appended to its block.
    {
        int na = 0, nb = 0;
        for (int v = 0; v < base.graph.n; ++v) (side[v] == 0 ? na : nb)++;
        if (na != nb) {
            if (!pad)
                throw std::invalid_argument("same_permutation_transform: |A| != |B| (use pad)");
            int missing = std::abs(na - nb);
            int small_side = na < nb ? 0 : 1;
            Graph g2 = base.graph;
            std::vector<Vertex> order = base.order.order;
            Bipartition bp = *g2.bipartition;
            // Which bipartition list corresponds to block side 0.
            bool block0_is_a = true;
            for (Vertex v : bp.b)
                if (side[v] == 0) { block0_is_a = false; break; }
            int insert_pos = small_side == 0
                                 ? static_cast<int>(std::count(side.begin(), side.end(), 0))
                                 : static_cast<int>(order.size());
            for (int t = 0; t < missing; ++t) {
                Vertex nv = g2.n++;
                side.push_back(small_side);
                if ((small_side == 0) == block0_is_a)
                    bp.a.push_back(nv);
                else
                    bp.b.push_back(nv);
                order.insert(order.begin() + insert_pos + t, nv);
            }
            g2.bipartition = bp;
            base.graph = std::move(g2);
            base.order = make_order(std::move(order));
        }
    }

    const SeparatedGridView view = grid_view(base, side);
    const int nn = static_cast<int>(view.cols.size());

    // G' = G plus the identity matching F[t] -- S[t].
    std::vector<Edge> id_edges(nn);
    std::vector<Edge> g2_edges = base.graph.edges;
    for (int t = 0; t < nn; ++t) {
        id_edges[t] = Edge(view.cols[t], view.rows[t]);
        g2_edges.push_back(id_edges[t]);
    }
    Graph gprime = make_graph(base.graph.n, g2_edges, base.graph.bipartition);

    LinearLayout oracle_layout = oracle(gprime);
    if (!validate_layout(oracle_layout).ok())
        throw std::invalid_argument("same_permutation_transform: oracle layout invalid");
    for (const Page& p : oracle_layout.pages)
        if (p.kind != PageKind::Queue)
            throw std::invalid_argument("same_permutation_transform: oracle layout not pure-queue");
    if (!is_separated(oracle_layout))
        throw std::invalid_argument("same_permutation_transform: oracle layout not separated");
    const int f = static_cast<int>(oracle_layout.pages.size());

    // Which oracle queue holds each identity edge.
    std::vector<int> queue_of(nn, -1);
    for (int t = 0; t < nn; ++t)
        for (int p = 0; p < f; ++p)
            if (std::binary_search(oracle_layout.pages[p].edges.begin(),
                                   oracle_layout.pages[p].edges.end(), id_edges[t]))
                queue_of[t] = p;

    // Target order: second block in the oracle's internal order; first block
    // sorted by the oracle position of its identity partner. This applies
    // the same permutation to both blocks.
    std::vector<int> ts(nn);
    for (int t = 0; t < nn; ++t) ts[t] = t;
    auto opos = [&](Vertex v) { return oracle_layout.order.pos(v); };
    std::vector<int> ts_cols = ts;
    std::sort(ts_cols.begin(), ts_cols.end(),
              [&](int x, int y) { return opos(view.rows[x]) < opos(view.rows[y]); });
    std::vector<Vertex> target;
    for (int t : ts_cols) target.push_back(view.cols[t]);
    std::vector<Vertex> rows_sorted = view.rows;
    std::sort(rows_sorted.begin(), rows_sorted.end(),
              [&](Vertex x, Vertex y) { return opos(x) < opos(y); });
    for (Vertex v : rows_sorted) target.push_back(v);

    RiffleSpec spec;
    spec.parts.assign(f + 1, {});
    for (int t = 0; t < nn; ++t) spec.parts[queue_of[t]].push_back(view.cols[t]);
    spec.parts[f] = view.rows;
    // Parts must be listed in the oracle's internal order (the layout being
    // riffled is the oracle's).
    for (auto& part : spec.parts)
        std::sort(part.begin(), part.end(), [&](Vertex x, Vertex y) { return opos(x) < opos(y); });
    // Drop empty parts (some oracle queues may hold no identity edge).
    std::vector<std::vector<Vertex>> parts;
    for (int p = 0; p < f; ++p)
        if (!spec.parts[p].empty()) parts.push_back(spec.parts[p]);
    int l = static_cast<int>(parts.size());
    parts.push_back(spec.parts[f]);
    spec.parts = std::move(parts);
    spec.target_order = make_order(std::move(target));

    // The riffled graph/bipartition must match the first/second block split.
    Bipartition blocks;
    for (int v = 0; v < base.graph.n; ++v)
        (side[v] == 0 ? blocks.a : blocks.b).push_back(v);
    LinearLayout oracle_blocks = oracle_layout;
    oracle_blocks.graph.bipartition = blocks;

    LinearLayout riffled = riffle_split_bipartite(oracle_blocks, spec, l);

    // Strip the identity edges that are not real.
    std::set<Edge> real(base.graph.edges.begin(), base.graph.edges.end());
    LinearLayout out;
    out.graph = base.graph;
    out.order = riffled.order;
    for (const Page& page : riffled.pages) {
        Page np;
        np.kind = PageKind::Queue;
        for (const Edge& e : page.edges)
            if (real.count(e)) np.edges.push_back(e);
        if (!np.edges.empty()) out.pages.push_back(std::move(np));
    }
    return out;
}

// --- Lemma 8 ---------------------------------------------------------------

ShallowGraphResult build_shallow_graph_H(const LinearLayout& layout) {
    require_valid(layout, "build_shallow_graph_H");
    const std::vector<int> side = block_sides(layout, "build_shallow_graph_H");
    auto [s, q] = layout.signature();
    if (s < 1)
        throw std::domain_error("build_shallow_graph_H: no stack pages; use the input as-is");
    const SeparatedGridView view = grid_view(layout, side);
    const int m = static_cast<int>(view.cols.size());
    const int nb = static_cast<int>(view.rows.size());

    std::vector<int> stack_pages, queue_pages;
    for (int p = 0; p < static_cast<int>(layout.pages.size()); ++p)
        (layout.pages[p].kind == PageKind::Stack ? stack_pages : queue_pages).push_back(p);

    ShallowGraphResult res;
    res.map.branch_sets.assign(layout.graph.n, {});
    for (int v = 0; v < layout.graph.n; ++v) res.map.branch_sets[v] = {v};
    res.map.radius = 1;

    int next_id = layout.graph.n;
    std::vector<Edge> h_edges;
    // Queues survive untouched, as does the last stack.
    std::vector<std::vector<Edge>> h_pages;  // queue pages first, stack page last
    std::vector<Edge> stack_edges(layout.pages[stack_pages.back()].edges);
    for (int p : queue_pages) {
        h_pages.push_back(layout.pages[p].edges);
        h_edges.insert(h_edges.end(), layout.pages[p].edges.begin(),
                       layout.pages[p].edges.end());
    }

    // Per rerouted stack k: u^k_i above the A block, v^k_j after it.
    std::vector<std::vector<Vertex>> vcols_blocks;  // V^k column blocks (k ascending)
    std::vector<std::vector<Vertex>> urows_blocks;  // U^k row blocks (k ascending)
    for (size_t kk = 0; kk + 1 < stack_pages.size(); ++kk) {
        const Page& sp = layout.pages[stack_pages[kk]];
        std::vector<int> used_col(m, 0), used_row(nb, 0);
        for (const Edge& e : sp.edges) {
            GridPoint pt = point_of(view, e, side);
            used_col[pt.col] = 1;
            used_row[pt.row] = 1;
        }
        std::vector<Vertex> uk(m, -1), vk(nb, -1);
        std::vector<Vertex> ublock, vblock;
        for (int i = 0; i < m; ++i)
            if (used_col[i]) {
                uk[i] = next_id++;
                ublock.push_back(uk[i]);
                res.map.branch_sets[view.cols[i]].push_back(uk[i]);
            }
        for (int j = 0; j < nb; ++j)
            if (used_row[j]) {
                vk[j] = next_id++;
                vblock.push_back(vk[j]);
                res.map.branch_sets[view.rows[j]].push_back(vk[j]);
            }
        std::vector<Edge> connector;  // (a_i,u^k_i) and (v^k_j,b_j): one queue
        for (int i = 0; i < m; ++i)
            if (used_col[i]) connector.push_back(Edge(view.cols[i], uk[i]));
        for (int j = 0; j < nb; ++j)
            if (used_row[j]) connector.push_back(Edge(vk[j], view.rows[j]));
        for (const Edge& e : sp.edges) {
            GridPoint pt = point_of(view, e, side);
            stack_edges.push_back(Edge(uk[pt.col], vk[pt.row]));
        }
        h_edges.insert(h_edges.end(), connector.begin(), connector.end());
        h_pages.push_back(std::move(connector));
        vcols_blocks.push_back(std::move(vblock));
        urows_blocks.push_back(std::move(ublock));
    }
    h_edges.insert(h_edges.end(), stack_edges.begin(), stack_edges.end());

    // Bipartition: part 1 = A plus all V^k, part 2 = B plus all U^k.
    Bipartition bp;
    bp.a = view.cols;
    for (const auto& blk : vcols_blocks) bp.a.insert(bp.a.end(), blk.begin(), blk.end());
    bp.b = view.rows;
    for (const auto& blk : urows_blocks) bp.b.insert(bp.b.end(), blk.begin(), blk.end());
    res.h = make_graph(next_id, h_edges, bp);

    // Order: A, V^1..V^{s-1} | U^{s-1}..U^1, B.
    std::vector<Vertex> order = view.cols;
    for (const auto& blk : vcols_blocks) order.insert(order.end(), blk.begin(), blk.end());
    for (auto it = urows_blocks.rbegin(); it != urows_blocks.rend(); ++it)
        order.insert(order.end(), it->begin(), it->end());
    order.insert(order.end(), view.rows.begin(), view.rows.end());

    res.h_layout.graph = res.h;
    res.h_layout.order = make_order(std::move(order));
    for (auto& edges : h_pages) {
        Page page;
        page.kind = PageKind::Queue;
        std::sort(edges.begin(), edges.end());
        page.edges = std::move(edges);
        res.h_layout.pages.push_back(std::move(page));
    }
    {
        Page page;
        page.kind = PageKind::Stack;
        std::sort(stack_edges.begin(), stack_edges.end());
        page.edges = std::move(stack_edges);
        res.h_layout.pages.push_back(std::move(page));
    }
    return res;
}

Graph contract(const Graph& h, const MinorMap& map) {
    h.check();
    std::vector<int> owner(h.n, -1);
    for (int g = 0; g < static_cast<int>(map.branch_sets.size()); ++g) {
        for (Vertex v : map.branch_sets[g]) {
            if (v < 0 || v >= h.n || owner[v] != -1)
                throw std::invalid_argument("contract: overlapping or out-of-range branch sets");
            owner[v] = g;
        }
    }
    // Connectivity and radius of each branch set.
    std::vector<std::vector<int>> adj(h.n);
    for (const Edge& e : h.edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    for (int g = 0; g < static_cast<int>(map.branch_sets.size()); ++g) {
        const auto& bs = map.branch_sets[g];
        if (bs.empty()) throw std::invalid_argument("contract: empty branch set");
        int best_ecc = -1;
        for (Vertex root : bs) {
            std::map<Vertex, int> dist;
            dist[root] = 0;
            std::queue<Vertex> bfs;
            bfs.push(root);
            int ecc = 0;
            while (!bfs.empty()) {
                Vertex x = bfs.front();
                bfs.pop();
                for (Vertex y : adj[x]) {
                    if (owner[y] != g || dist.count(y)) continue;
                    dist[y] = dist[x] + 1;
                    ecc = std::max(ecc, dist[y]);
                    bfs.push(y);
                }
            }
            if (dist.size() != bs.size()) {
                if (root == bs.front())
                    throw std::invalid_argument("contract: disconnected branch set");
                continue;
            }
            if (best_ecc < 0 || ecc < best_ecc) best_ecc = ecc;
        }
        if (best_ecc > map.radius)
            throw std::invalid_argument("contract: branch set radius exceeds declared radius");
    }
    std::vector<Edge> edges;
    for (const Edge& e : h.edges) {
        int a = owner[e.u], b = owner[e.v];
        if (a == -1 || b == -1 || a == b) continue;  // deleted or contracted away
        edges.push_back(Edge(a, b));
    }
    return make_graph(static_cast<int>(map.branch_sets.size()), edges);
}

ContractionBoundReport check_contraction_bound(const Graph& g, const Graph& h,
                                               const MinorMap& map, int max_vertices) {
    ContractionBoundReport rep;
    rep.qn_g = queue_number(g, max_vertices);
    rep.qn_h = queue_number(h, max_vertices);
    const int r = map.radius;
    long long bound = 2 * r + 1;
    for (int i = 0; i < 2 * r + 1; ++i) bound *= 2LL * rep.qn_h;
    rep.bound = bound;
    rep.holds = rep.qn_g <= bound;
    return rep;
}

} // namespace linlay
