#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linlay/generators.hpp"
#include "linlay/json_io.hpp"
#include "linlay/render.hpp"
#include "linlay/tree_layout.hpp"

using namespace linlay;

TEST_CASE("graph JSON round trip") {
    Graph g = complete_bipartite(2, 3);
    Graph back = graph_from_json(graph_to_json(g));
    CHECK(back.n == g.n);
    CHECK(back.edges == g.edges);
    REQUIRE(back.bipartition.has_value());
    CHECK(back.bipartition->a == g.bipartition->a);
    CHECK(back.bipartition->b == g.bipartition->b);

    Graph plain = complete_graph(4);
    Graph back2 = graph_from_json(graph_to_json(plain));
    CHECK(back2.edges == plain.edges);
    CHECK_FALSE(back2.bipartition.has_value());
}

TEST_CASE("layout JSON round trip, with and without an explicit graph") {
    LinearLayout l = random_layout_instance(1, 2, 5, 5, 0.4, true, 11);
    nlohmann::json j = layout_to_json(l);
    LinearLayout back = layout_from_json(j, l.graph);
    CHECK(back.order.order == l.order.order);
    REQUIRE(back.pages.size() == l.pages.size());
    for (size_t i = 0; i < l.pages.size(); ++i) {
        CHECK(back.pages[i].kind == l.pages[i].kind);
        CHECK(back.pages[i].edges == l.pages[i].edges);
    }
    CHECK(validate_layout(back).ok());

    // Without a graph the union of pages is used.
    LinearLayout recon = layout_from_json(j);
    CHECK(recon.graph.n == l.graph.n);
    CHECK(recon.graph.edges == l.graph.edges);
    CHECK(validate_layout(recon).ok());

    // Serialization is stable.
    CHECK(json_to_string(layout_to_json(back)) == json_to_string(j));
}

TEST_CASE("subdivision record JSON round trip") {
    LinearLayout in = random_layout_instance(1, 1, 5, 5, 0.4, false, 13);
    auto [rec, out] = mixed_to_3stack_subdivision(in);
    (void)out;
    SubdivisionRecord back = record_from_json(record_to_json(rec));
    CHECK(back.host.n == rec.host.n);
    CHECK(back.host.edges == rec.host.edges);
    CHECK(back.original.n == rec.original.n);
    CHECK(back.original.edges == rec.original.edges);
    CHECK(back.paths == rec.paths);
}

TEST_CASE("tree layout JSON round trip") {
    LinearLayout in = random_layout_instance(0, 3, 5, 5, 0.4, false, 17);
    Tree t = complete_binary_tree(2);
    auto [rec, tl] = subdivide_into_tree_layout(in, t);
    TreeLayout back = tree_layout_from_json(tree_layout_to_json(tl));
    CHECK(back.tree.parent == tl.tree.parent);
    CHECK(back.bags == tl.bags);
    CHECK(back.s_of == tl.s_of);
    CHECK(back.q_of == tl.q_of);
    CHECK(back.k_of == tl.k_of);
    CHECK(back.coloring.has_value() == tl.coloring.has_value());
    if (tl.coloring) CHECK(*back.coloring == *tl.coloring);
    CHECK(validate_tree_layout(rec.host, back).ok());
}

TEST_CASE("validation report JSON") {
    LinearLayout bad;
    bad.graph = make_graph(4, {Edge(0, 2), Edge(1, 3)});
    bad.order = identity_order(4);
    bad.pages = {Page{PageKind::Stack, {Edge(0, 2), Edge(1, 3)}}};
    nlohmann::json j = report_to_json(validate_layout(bad));
    CHECK(j["ok"] == false);
    CHECK(j["pair_violation_count"] == 1);
    REQUIRE(j["pair_violations"].size() == 1);
    CHECK(j["pair_violations"][0]["kind"] == "cross");

    LinearLayout good = random_layout_instance(1, 1, 4, 4, 0.4, false, 19);
    nlohmann::json jg = report_to_json(validate_layout(good));
    CHECK(jg["ok"] == true);
}

TEST_CASE("SVG rendering is deterministic and validates input") {
    LinearLayout l = random_layout_instance(1, 1, 5, 5, 0.4, true, 23);
    RenderSpec spec;
    std::string a = render_svg(l, spec);
    std::string b = render_svg(l, spec);
    CHECK(a == b);
    CHECK(a.find("<svg") != std::string::npos);

    spec.style = RenderStyle::GridMatrix;
    std::string g1 = render_svg(l, spec);
    CHECK(g1 == render_svg(l, spec));
    CHECK(g1 != a);

    // Grid style requires a separated layout.
    LinearLayout ns = random_layout_instance(1, 1, 4, 4, 0.4, false, 29);
    CHECK_THROWS_AS(render_svg(ns, spec), std::domain_error);

    // Invalid layouts are rejected unless forced.
    LinearLayout bad = l;
    for (Page& p : bad.pages)
        p.kind = p.kind == PageKind::Stack ? PageKind::Queue : PageKind::Stack;
    if (!validate_layout(bad).ok()) {
        RenderSpec arc;
        CHECK_THROWS_AS(render_svg(bad, arc), std::invalid_argument);
        arc.force = true;
        std::string forced = render_svg(bad, arc);
        CHECK(forced.find("<svg") != std::string::npos);
    }
}
