#include "linlay/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

namespace linlay {

using nlohmann::json;

namespace {

json edges_to_json(const std::vector<Edge>& edges) {
    json arr = json::array();
    for (const Edge& e : edges) arr.push_back({e.u, e.v});
    return arr;
}

std::vector<Edge> edges_from_json(const json& arr) {
    std::vector<Edge> out;
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2)
            throw std::invalid_argument("edge entries must be [u, v] pairs");
        out.push_back(Edge(item[0].get<int>(), item[1].get<int>()));
    }
    return out;
}

} // namespace

json graph_to_json(const Graph& g) {
    json j;
    j["n"] = g.n;
    j["edges"] = edges_to_json(g.edges);
    if (g.bipartition) {
        j["bipartition"] = {{"A", g.bipartition->a}, {"B", g.bipartition->b}};
    }
    return j;
}

Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw std::invalid_argument("graph JSON needs \"n\" and \"edges\"");
    std::vector<Edge> edges = edges_from_json(j.at("edges"));
    std::map<Edge, int> seen;
    for (const Edge& e : edges)
        if (++seen[e] > 1) throw std::invalid_argument("graph JSON has duplicate edges");
    std::optional<Bipartition> bp;
    if (j.contains("bipartition") && !j.at("bipartition").is_null()) {
        const json& b = j.at("bipartition");
        Bipartition parts;
        parts.a = b.at("A").get<std::vector<Vertex>>();
        parts.b = b.at("B").get<std::vector<Vertex>>();
        bp = std::move(parts);
    }
    Graph g = make_graph(j.at("n").get<int>(), edges, bp);
    g.check();
    return g;
}

json layout_to_json(const LinearLayout& layout) {
    json j;
    j["order"] = layout.order.order;
    json pages = json::array();
    for (const Page& p : layout.pages) {
        json page;
        page["kind"] = p.kind == PageKind::Stack ? "stack" : "queue";
        page["edges"] = edges_to_json(p.edges);
        pages.push_back(std::move(page));
    }
    j["pages"] = pages;
    if (layout.graph.bipartition) {
        j["bipartition"] = {{"A", layout.graph.bipartition->a},
                            {"B", layout.graph.bipartition->b}};
    }
    return j;
}

LinearLayout layout_from_json(const json& j, const std::optional<Graph>& graph) {
    if (!j.is_object() || !j.contains("order") || !j.contains("pages"))
        throw std::invalid_argument("layout JSON needs \"order\" and \"pages\"");
    LinearLayout layout;
    layout.order = make_order(j.at("order").get<std::vector<Vertex>>());
    for (const auto& pj : j.at("pages")) {
        Page p;
        std::string kind = pj.at("kind").get<std::string>();
        if (kind == "stack")
            p.kind = PageKind::Stack;
        else if (kind == "queue")
            p.kind = PageKind::Queue;
        else
            throw std::invalid_argument("page kind must be \"stack\" or \"queue\"");
        p.edges = edges_from_json(pj.at("edges"));
        layout.pages.push_back(std::move(p));
    }
    if (graph) {
        layout.graph = *graph;
    } else {
        std::vector<Edge> edges;
        for (const Page& p : layout.pages) edges.insert(edges.end(), p.edges.begin(), p.edges.end());
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        std::optional<Bipartition> bp;
        if (j.contains("bipartition") && !j.at("bipartition").is_null()) {
            Bipartition parts;
            parts.a = j.at("bipartition").at("A").get<std::vector<Vertex>>();
            parts.b = j.at("bipartition").at("B").get<std::vector<Vertex>>();
            bp = std::move(parts);
        }
        layout.graph = make_graph(static_cast<int>(layout.order.order.size()), edges, bp);
    }
    return layout;
}

json record_to_json(const SubdivisionRecord& rec) {
    json j;
    j["n"] = rec.original.n;
    j["host_n"] = rec.host.n;
    json paths = json::object();
    for (size_t i = 0; i < rec.paths.size(); ++i)
        paths[edge_key(rec.original.edges[i])] = rec.paths[i];
    j["paths"] = paths;
    if (rec.original.bipartition)
        j["bipartition"] = {{"A", rec.original.bipartition->a},
                            {"B", rec.original.bipartition->b}};
    if (rec.host.bipartition)
        j["host_bipartition"] = {{"A", rec.host.bipartition->a},
                                 {"B", rec.host.bipartition->b}};
    return j;
}

SubdivisionRecord record_from_json(const json& j) {
    if (!j.is_object() || !j.contains("paths"))
        throw std::invalid_argument("record JSON needs \"paths\"");
    std::vector<std::pair<Edge, std::vector<Vertex>>> items;
    int max_id = -1;
    for (const auto& [key, value] : j.at("paths").items()) {
        std::vector<Vertex> path = value.get<std::vector<Vertex>>();
        if (path.size() < 2) throw std::invalid_argument("record path too short");
        auto comma = key.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("record path key malformed");
        Edge e(std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1)));
        if (Edge(path.front(), path.back()) != e)
            throw std::invalid_argument("record path endpoints disagree with key");
        for (Vertex v : path) max_id = std::max(max_id, v);
        items.emplace_back(e, std::move(path));
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    SubdivisionRecord rec;
    std::vector<Edge> orig_edges, host_edges;
    for (auto& [e, path] : items) {
        orig_edges.push_back(e);
        for (size_t i = 0; i + 1 < path.size(); ++i) host_edges.push_back(Edge(path[i], path[i + 1]));
        rec.paths.push_back(std::move(path));
    }
    int n = j.contains("n") ? j.at("n").get<int>() : max_id + 1;
    int host_n = j.contains("host_n") ? j.at("host_n").get<int>() : max_id + 1;
    std::optional<Bipartition> bp, hbp;
    auto read_bp = [&](const char* key) -> std::optional<Bipartition> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        Bipartition parts;
        parts.a = j.at(key).at("A").get<std::vector<Vertex>>();
        parts.b = j.at(key).at("B").get<std::vector<Vertex>>();
        return parts;
    };
    rec.original = make_graph(n, orig_edges, read_bp("bipartition"));
    rec.host = make_graph(host_n, host_edges, read_bp("host_bipartition"));
    return rec;
}

json tree_layout_to_json(const TreeLayout& tl) {
    json j;
    j["parent"] = tl.tree.parent;
    j["bags"] = tl.bags;
    j["s"] = tl.s_of;
    j["q"] = tl.q_of;
    j["k"] = tl.k_of;
    if (tl.coloring) {
        json colors = json::array();
        for (TreeEdgeColor c : *tl.coloring)
            colors.push_back(c == TreeEdgeColor::Blue ? "blue" : "red");
        j["coloring"] = colors;
    }
    return j;
}

TreeLayout tree_layout_from_json(const json& j) {
    TreeLayout tl;
    tl.tree.parent = j.at("parent").get<std::vector<int>>();
    tl.tree.children.assign(tl.tree.parent.size(), {});
    for (int v = 0; v < static_cast<int>(tl.tree.parent.size()); ++v) {
        int p = tl.tree.parent[v];
        if (p == -1) {
            if (v != 0) throw std::invalid_argument("tree layout JSON: root must be node 0");
        } else if (p < 0 || p >= v) {
            throw std::invalid_argument("tree layout JSON: parents must precede children");
        } else {
            tl.tree.children[p].push_back(v);
        }
    }
    tl.bags = j.at("bags").get<std::vector<std::vector<Vertex>>>();
    tl.s_of = j.at("s").get<std::vector<int>>();
    tl.q_of = j.at("q").get<std::vector<int>>();
    tl.k_of = j.at("k").get<std::vector<int>>();
    if (j.contains("coloring") && !j.at("coloring").is_null()) {
        std::vector<TreeEdgeColor> colors;
        for (const auto& c : j.at("coloring"))
            colors.push_back(c.get<std::string>() == "blue" ? TreeEdgeColor::Blue
                                                            : TreeEdgeColor::Red);
        tl.coloring = std::move(colors);
    }
    return tl;
}

json report_to_json(const ValidationReport& report) {
    constexpr size_t kCap = 100;
    json j;
    j["ok"] = report.ok();
    json pv = json::array();
    for (size_t i = 0; i < report.pair_violations.size() && i < kCap; ++i) {
        const PairViolation& v = report.pair_violations[i];
        json item;
        item["page"] = v.page;
        item["kind"] = v.kind == PairDefect::Cross ? "cross" : "nest";
        item["first"] = {v.e1.u, v.e1.v};
        item["second"] = {v.e2.u, v.e2.v};
        pv.push_back(std::move(item));
    }
    j["pair_violations"] = pv;
    j["pair_violation_count"] = report.pair_violations.size();
    j["missing"] = edges_to_json(report.missing);
    j["duplicated"] = edges_to_json(report.duplicated);
    j["unknown"] = edges_to_json(report.unknown);
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << json_to_string(j);
}

std::string json_to_string(const json& j) {
    return j.dump(2) + "\n";
}

} // namespace linlay
