#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "linlay/generators.hpp"
#include "linlay/tree_layout.hpp"

using namespace linlay;

namespace {

std::map<Edge, PageKind> edge_kinds(const LinearLayout& l) {
    std::map<Edge, PageKind> m;
    for (const Page& p : l.pages)
        for (const Edge& e : p.edges) m[e] = p.kind;
    return m;
}

int nonempty(const LinearLayout& l, PageKind k) {
    int c = 0;
    for (const Page& p : l.pages)
        if (p.kind == k && !p.edges.empty()) c++;
    return c;
}

void check_subdivision_consistency(const SubdivisionRecord& rec) {
    REQUIRE(rec.paths.size() == rec.original.edges.size());
    for (size_t i = 0; i < rec.paths.size(); ++i) {
        const auto& path = rec.paths[i];
        REQUIRE(path.size() >= 2);
        CHECK(Edge(path.front(), path.back()) == rec.original.edges[i]);
        for (size_t j = 0; j + 1 < path.size(); ++j)
            CHECK(rec.host.has_edge(path[j], path[j + 1]));
    }
    auto [g, map] = contract_subdivision(rec);
    CHECK(g.edges == rec.original.edges);
    CHECK(g.n == rec.original.n);
}

} // namespace

TEST_CASE("tree builders") {
    Tree c2 = complete_binary_tree(2);
    CHECK(c2.size() == 7);
    CHECK(c2.leaves().size() == 4);
    auto d = c2.depths();
    CHECK(d[0] == 0);
    CHECK(*std::max_element(d.begin(), d.end()) == 2);

    Tree ch2 = chain_binary_tree(2);
    CHECK(ch2.size() == 8);  // extra root above the complete tree
    auto dd = ch2.depths();
    for (int leaf : ch2.leaves()) CHECK(dd[leaf] == 3);

    Tree sub = subdivide_tree_edges(c2);
    CHECK(sub.size() == 13);  // 7 nodes + 6 edges
    CHECK(sub.leaves().size() == 4);

    Tree app = append_leaf_children(c2);
    CHECK(app.size() == 11);
    CHECK(app.leaves().size() == 4);
    auto da = app.depths();
    for (int leaf : app.leaves()) CHECK(da[leaf] == 3);
}

TEST_CASE("subdivide_into_tree_layout produces simple T-layouts") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 12; ++it) {
        int q = 1 + static_cast<int>(rng() % 4);
        LinearLayout in =
            random_layout_instance(0, q, 4 + rng() % 5, 4 + rng() % 5, 0.4, false, rng());
        int pages = static_cast<int>(in.pages.size());
        Tree t = complete_binary_tree(ceil_log2(std::max(pages, 1)));
        auto [rec, tl] = subdivide_into_tree_layout(in, t);
        TreeLayoutReport rep = validate_tree_layout(rec.host, tl);
        CHECK(rep.ok());
        CHECK(rep.simple());
        check_subdivision_consistency(rec);
        // Page i lives at leaf i: every edge of page i receives 2*depth(leaf)
        // division vertices (one per path node below the root, up and down).
        auto depths = t.depths();
        auto leaves = t.leaves();
        std::map<Edge, int> page_of;
        for (size_t p = 0; p < in.pages.size(); ++p)
            for (const Edge& e : in.pages[p].edges) page_of[e] = static_cast<int>(p);
        for (size_t i = 0; i < rec.original.edges.size(); ++i) {
            int leaf = leaves[page_of[rec.original.edges[i]]];
            CHECK(rec.division_count(static_cast<int>(i)) == 2 * depths[leaf]);
        }
    }
}

TEST_CASE("validate_tree_layout rejects corrupted layouts") {
    LinearLayout in = random_layout_instance(0, 2, 5, 5, 0.4, false, 3);
    Tree t = complete_binary_tree(1);
    auto [rec, tl] = subdivide_into_tree_layout(in, t);
    REQUIRE(validate_tree_layout(rec.host, tl).ok());

    int from = -1, to = -1;
    for (int x = 0; x < tl.tree.size(); ++x)
        if (!tl.bags[x].empty()) {
            if (from < 0)
                from = x;
            else if (to < 0)
                to = x;
        }
    REQUIRE(from >= 0);
    REQUIRE(to >= 0);

    TreeLayout bad = tl;
    // Same vertex in two bags: not a partition any more.
    bad.bags[to].push_back(bad.bags[from].back());
    CHECK_FALSE(validate_tree_layout(rec.host, bad).ok());

    TreeLayout bad2 = tl;
    // Drop a vertex entirely.
    bad2.bags[from].pop_back();
    CHECK_FALSE(validate_tree_layout(rec.host, bad2).ok());
}

TEST_CASE("subdivide_once_separated: q+1 queues, original order kept") {
    std::mt19937_64 rng(47);
    for (int it = 0; it < 12; ++it) {
        int q = 1 + static_cast<int>(rng() % 4);
        LinearLayout in =
            random_layout_instance(0, q, 4 + rng() % 5, 4 + rng() % 5, 0.4, false, rng());
        int qn = static_cast<int>(in.pages.size());
        auto [rec, out] = subdivide_once_separated(in);
        CHECK(validate_layout(out).ok());
        CHECK(is_separated(out));
        CHECK(nonempty(out, PageKind::Stack) == 0);
        CHECK(nonempty(out, PageKind::Queue) <= qn + 1);
        for (size_t i = 0; i < rec.paths.size(); ++i)
            CHECK(rec.division_count(static_cast<int>(i)) == 1);
        check_subdivision_consistency(rec);
        // Original vertices keep their relative order.
        std::vector<Vertex> originals;
        for (Vertex v : out.order.order)
            if (v < in.graph.n) originals.push_back(v);
        CHECK(originals == in.order.order);
    }
}

TEST_CASE("3-stack subdivision pipeline") {
    std::mt19937_64 rng(53);
    const std::pair<int, int> shapes[] = {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {2, 0}, {0, 2}};
    for (auto [s, q] : shapes) {
        for (int it = 0; it < 4; ++it) {
            LinearLayout in =
                random_layout_instance(s, q, 4 + rng() % 4, 4 + rng() % 4, 0.4, false, rng());
            auto [s1, q1] = in.signature();
            auto [rec, out] = mixed_to_3stack_subdivision(in);
            CAPTURE(s1);
            CAPTURE(q1);
            CHECK(validate_layout(out).ok());
            CHECK(nonempty(out, PageKind::Queue) == 0);
            CHECK(nonempty(out, PageKind::Stack) <= 3);
            check_subdivision_consistency(rec);
            int h = ceil_log2(std::max(std::max(s1, q1), 1));
            auto kinds = edge_kinds(in);
            for (size_t i = 0; i < rec.original.edges.size(); ++i) {
                int want = kinds[rec.original.edges[i]] == PageKind::Stack ? 2 * h + 2
                                                                           : 2 * h + 3;
                CHECK(rec.division_count(static_cast<int>(i)) == want);
            }
        }
    }
}

TEST_CASE("1-stack 1-queue subdivision pipeline") {
    std::mt19937_64 rng(59);
    const std::pair<int, int> shapes[] = {{1, 1}, {2, 1}, {1, 2}, {2, 2}, {3, 2}};
    for (auto [s, q] : shapes) {
        for (int it = 0; it < 4; ++it) {
            LinearLayout in =
                random_layout_instance(s, q, 4 + rng() % 4, 4 + rng() % 4, 0.4, false, rng());
            auto [s1, q1] = in.signature();
            auto [rec, out] = mixed_to_1s1q_subdivision(in);
            CHECK(validate_layout(out).ok());
            CHECK(nonempty(out, PageKind::Stack) <= 1);
            CHECK(nonempty(out, PageKind::Queue) <= 1);
            check_subdivision_consistency(rec);
            int h = ceil_log2(std::max(std::max(s1, q1), 1));
            auto kinds = edge_kinds(in);
            for (size_t i = 0; i < rec.original.edges.size(); ++i) {
                int want = kinds[rec.original.edges[i]] == PageKind::Stack ? 4 * h + 4
                                                                           : 4 * h + 6;
                CHECK(rec.division_count(static_cast<int>(i)) == want);
            }
        }
    }
}

TEST_CASE("separated (1,q) -> (1,<=6) subdivision pipeline") {
    std::mt19937_64 rng(61);
    for (int q = 1; q <= 6; ++q) {
        for (int it = 0; it < 3; ++it) {
            LinearLayout in =
                random_layout_instance(1, q, 5 + rng() % 6, 5 + rng() % 6, 0.35, true, rng());
            auto [s1, q1] = in.signature();
            if (s1 != 1) continue;
            auto [rec, out] = separated_1sq_to_1s6q_subdivision(in);
            CHECK(validate_layout(out).ok());
            CHECK(is_separated(out));
            CHECK(nonempty(out, PageKind::Stack) <= 1);
            CHECK(nonempty(out, PageKind::Queue) <= 6);
            check_subdivision_consistency(rec);
            auto kinds = edge_kinds(in);
            int divs = 2 * ceil_log2(std::max(q1, 1));
            for (size_t i = 0; i < rec.original.edges.size(); ++i) {
                int want = kinds[rec.original.edges[i]] == PageKind::Stack ? 0 : divs;
                CHECK(rec.division_count(static_cast<int>(i)) == want);
            }
        }
    }
}

TEST_CASE("contract_subdivision radius matches the longest path") {
    LinearLayout in = random_layout_instance(1, 2, 5, 5, 0.4, false, 71);
    auto [rec, out] = mixed_to_3stack_subdivision(in);
    (void)out;
    int max_divs = 0;
    for (size_t i = 0; i < rec.paths.size(); ++i)
        max_divs = std::max(max_divs, rec.division_count(static_cast<int>(i)));
    auto [g, map] = contract_subdivision(rec);
    CHECK(map.radius == (max_divs + 1) / 2);
    CHECK(map.branch_sets.size() == static_cast<size_t>(g.n));
    // Branch sets partition the host vertices.
    std::vector<int> owner(rec.host.n, -1);
    for (size_t v = 0; v < map.branch_sets.size(); ++v)
        for (Vertex x : map.branch_sets[v]) {
            CHECK(owner[x] == -1);
            owner[x] = static_cast<int>(v);
        }
    for (int x = 0; x < rec.host.n; ++x) CHECK(owner[x] != -1);
}
