#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <fstream>
#include <string>

#include "linlay/core.hpp"
#include "linlay/generators.hpp"
#include "linlay/json_io.hpp"
#include "linlay/render.hpp"
#include "linlay/solver.hpp"
#include "linlay/transforms.hpp"
#include "linlay/tree_layout.hpp"

namespace {

using namespace linlay;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitUsage = 2;

LinearLayout load_layout(const std::string& layout_path, const std::string& graph_path) {
    std::optional<Graph> g;
    if (!graph_path.empty()) g = graph_from_json(read_json_file(graph_path));
    LinearLayout layout = layout_from_json(read_json_file(layout_path), g);
    layout.graph.check();
    return layout;
}

QueueLayoutOracle exact_oracle(int max_vertices) {
    return [max_vertices](const Graph& g) -> LinearLayout {
        for (int q = 1;; ++q) {
            PageBudget budget;
            budget.queues = q;
            budget.separated = true;
            SolveResult res = feasible(g, budget, max_vertices);
            if (res.feasible) return *res.witness;
        }
    };
}

// --- generate ---------------------------------------------------------------

struct GenerateArgs {
    std::string family;
    std::string out, layout_out, extra_out;
    int m = 3, n = 3, k = 2;
    int rows = 2, cols = 2;
    std::string pattern;
    int stacks = 1, queues = 1, na = 6, nb = 6;
    double density = 0.4;
    bool separated = false;
    std::uint64_t seed = 1;
};

int run_generate(const GenerateArgs& a) {
    Graph g;
    std::optional<LinearLayout> layout;
    json extra;
    if (a.family == "k6") {
        g = complete_graph(6);
    } else if (a.family == "kmn") {
        g = complete_bipartite(a.m, a.n);
    } else if (a.family == "challenge") {
        ChallengeInstance inst = challenge_graph(a.k);
        g = inst.graph;
        layout = inst.mixed_layout;
        extra = layout_to_json(challenge_queue_layout(a.k));
    } else if (a.family == "diag-grid") {
        std::vector<std::vector<bool>> pattern;
        if (a.pattern.empty()) {
            for (int i = 0; i < a.rows; ++i) {
                std::vector<bool> row;
                for (int j = 0; j < a.cols; ++j) row.push_back((i + j) % 2 == 0);
                pattern.push_back(row);
            }
        } else {
            std::vector<bool> row;
            for (char c : a.pattern) {
                if (c == ';') {
                    pattern.push_back(row);
                    row.clear();
                } else if (c == '+') {
                    row.push_back(true);
                } else if (c == '-') {
                    row.push_back(false);
                } else {
                    throw std::invalid_argument("pattern characters must be +, - or ;");
                }
            }
            if (!row.empty()) pattern.push_back(row);
        }
        DiagonalGridInstance inst = diagonal_grid_instance(pattern, a.seed);
        g = inst.graph;
        layout = inst.layout;
        extra["col_cuts"] = inst.col_cuts;
        extra["row_cuts"] = inst.row_cuts;
    } else if (a.family == "random") {
        LinearLayout inst = random_layout_instance(a.stacks, a.queues, a.na, a.nb, a.density,
                                                   a.separated, a.seed);
        g = inst.graph;
        layout = inst;
    } else {
        throw CLI::ValidationError("--family", "unknown family " + a.family);
    }
    write_json_file(a.out, graph_to_json(g));
    if (!a.layout_out.empty()) {
        if (!layout) throw std::invalid_argument("family " + a.family + " has no bundled layout");
        write_json_file(a.layout_out, layout_to_json(*layout));
    }
    if (!a.extra_out.empty()) {
        if (extra.is_null()) throw std::invalid_argument("family " + a.family + " has no extra output");
        write_json_file(a.extra_out, extra);
    }
    return kExitOk;
}

// --- solve -------------------------------------------------------------------

struct SolveArgs {
    std::string graph, witness, minimize;
    int stacks = -1, queues = -1;
    bool separated = false;
    int max_vertices = -1;
    bool json_out = false;
};

int run_solve(const SolveArgs& a) {
    Graph g = graph_from_json(read_json_file(a.graph));
    if (!a.minimize.empty()) {
        int value = 0;
        if (a.minimize == "sn")
            value = stack_number(g, a.max_vertices);
        else if (a.minimize == "qn")
            value = queue_number(g, a.max_vertices);
        else if (a.minimize == "mn")
            value = mixed_number(g, a.max_vertices);
        else if (a.minimize == "sqn")
            value = separated_queue_number(g, a.max_vertices);
        else if (a.minimize == "smn")
            value = separated_mixed_number(g, a.max_vertices);
        else
            throw CLI::ValidationError("--minimize", "unknown objective " + a.minimize);
        if (a.json_out) {
            json j;
            j["objective"] = a.minimize;
            j["value"] = value;
            std::cout << json_to_string(j);
        } else {
            std::cout << value << "\n";
        }
        if (!a.witness.empty()) {
            // Re-solve at the optimum for a witness.
            PageBudget budget;
            budget.separated = (a.minimize == "sqn" || a.minimize == "smn");
            SolveResult res;
            if (a.minimize == "sn") {
                budget.stacks = value;
                res = feasible(g, budget, a.max_vertices);
            } else if (a.minimize == "qn" || a.minimize == "sqn") {
                budget.queues = value;
                res = feasible(g, budget, a.max_vertices);
            } else {
                for (int s = 0; s <= value && !res.feasible; ++s) {
                    budget.stacks = s;
                    budget.queues = value - s;
                    res = feasible(g, budget, a.max_vertices);
                }
            }
            write_json_file(a.witness, layout_to_json(*res.witness));
        }
        return kExitOk;
    }
    if (a.stacks < 0 && a.queues < 0)
        throw CLI::ValidationError("solve", "need --minimize or a --stacks/--queues budget");
    PageBudget budget;
    budget.stacks = std::max(a.stacks, 0);
    budget.queues = std::max(a.queues, 0);
    budget.separated = a.separated;
    SolveResult res = feasible(g, budget, a.max_vertices);
    if (a.json_out) {
        json j;
        j["feasible"] = res.feasible;
        j["nodes_explored"] = res.nodes_explored;
        std::cout << json_to_string(j);
    } else {
        std::cout << (res.feasible ? "feasible" : "infeasible") << "\n";
    }
    if (res.feasible && !a.witness.empty())
        write_json_file(a.witness, layout_to_json(*res.witness));
    return res.feasible ? kExitOk : kExitInvalid;
}

// --- transform ----------------------------------------------------------------

struct TransformArgs {
    std::string op, layout, graph, spec, out, oracle;
    bool pad = false;
    int max_vertices = -1;
};

RiffleSpec riffle_spec_from_json(const json& j) {
    RiffleSpec spec;
    spec.parts = j.at("parts").get<std::vector<std::vector<Vertex>>>();
    spec.target_order = make_order(j.at("target_order").get<std::vector<Vertex>>());
    return spec;
}

int run_transform(const TransformArgs& a) {
    LinearLayout layout = load_layout(a.layout, a.graph);
    json out;
    if (a.op == "riffle") {
        if (a.spec.empty()) throw CLI::ValidationError("--spec", "riffle needs a spec file");
        json sj = read_json_file(a.spec);
        RiffleSpec spec = riffle_spec_from_json(sj);
        LinearLayout result = sj.contains("l") && !sj.at("l").is_null()
                                  ? riffle_split_bipartite(layout, spec, sj.at("l").get<int>())
                                  : riffle_split(layout, spec);
        out = layout_to_json(result);
    } else if (a.op == "separate") {
        out = layout_to_json(separate(layout));
    } else if (a.op == "thm5") {
        out = layout_to_json(theorem5_transform(layout));
    } else if (a.op == "checkerboard") {
        if (a.spec.empty()) throw CLI::ValidationError("--spec", "checkerboard needs a spec file");
        json sj = read_json_file(a.spec);
        CheckerboardGrid grid;
        if (sj.value("halve", false)) {
            grid = halve_diagonal_grid(layout, sj.at("col_cuts").get<std::vector<int>>(),
                                       sj.at("row_cuts").get<std::vector<int>>());
        } else {
            grid.col_cuts = sj.at("col_cuts").get<std::vector<int>>();
            grid.row_cuts = sj.at("row_cuts").get<std::vector<int>>();
            grid.odd_offset = sj.value("odd_offset", 0);
        }
        out = layout_to_json(checkerboard_transform(layout, grid));
    } else if (a.op == "same-perm") {
        if (a.oracle != "exact")
            throw CLI::ValidationError("--oracle", "same-perm supports --oracle exact only");
        out = layout_to_json(
            same_permutation_transform(layout, exact_oracle(a.max_vertices), a.pad));
    } else if (a.op == "build-h") {
        ShallowGraphResult res = build_shallow_graph_H(layout);
        out["h"] = graph_to_json(res.h);
        out["layout"] = layout_to_json(res.h_layout);
        out["branch_sets"] = res.map.branch_sets;
        out["radius"] = res.map.radius;
    } else {
        throw CLI::ValidationError("--op", "unknown op " + a.op);
    }
    write_json_file(a.out, out);
    return kExitOk;
}

// --- subdivide -----------------------------------------------------------------

struct SubdivideArgs {
    std::string pipeline, layout, graph, out_layout, out_record;
};

int run_subdivide(const SubdivideArgs& a) {
    LinearLayout layout = load_layout(a.layout, a.graph);
    std::pair<SubdivisionRecord, LinearLayout> result;
    if (a.pipeline == "3stack")
        result = mixed_to_3stack_subdivision(layout);
    else if (a.pipeline == "1s1q")
        result = mixed_to_1s1q_subdivision(layout);
    else if (a.pipeline == "sep-1s6q")
        result = separated_1sq_to_1s6q_subdivision(layout);
    else
        throw CLI::ValidationError("--pipeline", "unknown pipeline " + a.pipeline);
    write_json_file(a.out_layout, layout_to_json(result.second));
    if (!a.out_record.empty()) write_json_file(a.out_record, record_to_json(result.first));
    return kExitOk;
}

// --- validate / render -----------------------------------------------------------

int run_validate(const std::string& layout_path, const std::string& graph_path, bool json_out) {
    LinearLayout layout = load_layout(layout_path, graph_path);
    ValidationReport report = validate_layout(layout);
    if (json_out) {
        std::cout << json_to_string(report_to_json(report));
    } else if (report.ok()) {
        std::cout << "valid\n";
    } else {
        std::cout << "invalid: " << report.pair_violations.size() << " pair violation(s), "
                  << report.missing.size() << " missing, " << report.duplicated.size()
                  << " duplicated, " << report.unknown.size() << " unknown\n";
    }
    return report.ok() ? kExitOk : kExitInvalid;
}

struct RenderArgs {
    std::string layout, graph, out, style = "arc";
    double unit = 36.0;
    bool force = false;
};

int run_render(const RenderArgs& a) {
    LinearLayout layout = load_layout(a.layout, a.graph);
    RenderSpec spec;
    if (a.style == "arc")
        spec.style = RenderStyle::ArcDiagram;
    else if (a.style == "grid")
        spec.style = RenderStyle::GridMatrix;
    else
        throw CLI::ValidationError("--style", "style must be arc or grid");
    spec.unit = a.unit;
    spec.force = a.force;
    std::string svg = render_svg(layout, spec);
    if (a.out.empty()) {
        std::cout << svg;
    } else {
        std::ofstream f(a.out);
        if (!f) throw std::runtime_error("cannot write " + a.out);
        f << svg;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear graph layouts: exact solving, transforms, subdivisions"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cgen = app.add_subcommand("generate", "emit a graph family instance");
    cgen->add_option("--family", gen.family, "k6|kmn|challenge|diag-grid|random")->required();
    cgen->add_option("--out", gen.out, "graph JSON output")->required();
    cgen->add_option("--layout-out", gen.layout_out, "bundled layout JSON output");
    cgen->add_option("--extra-out", gen.extra_out,
                     "family-specific extras (challenge: 4-queue layout; diag-grid: cuts)");
    cgen->add_option("--m", gen.m, "K_{m,n}: m");
    cgen->add_option("--n", gen.n, "K_{m,n}: n");
    cgen->add_option("--k", gen.k, "challenge: n = 2^k");
    cgen->add_option("--rows", gen.rows, "diag-grid: cell rows");
    cgen->add_option("--cols", gen.cols, "diag-grid: cell columns");
    cgen->add_option("--pattern", gen.pattern, "diag-grid: rows of +/- separated by ;");
    cgen->add_option("--stacks", gen.stacks, "random: stack pages");
    cgen->add_option("--queues", gen.queues, "random: queue pages");
    cgen->add_option("--na", gen.na, "random: |A|");
    cgen->add_option("--nb", gen.nb, "random: |B|");
    cgen->add_option("--density", gen.density, "random: edge density");
    cgen->add_flag("--separated", gen.separated, "random: separated order");
    cgen->add_option("--seed", gen.seed, "random seed");

    SolveArgs sol;
    CLI::App* csol = app.add_subcommand("solve", "exact feasibility / minimization");
    csol->add_option("--graph", sol.graph, "graph JSON input")->required();
    csol->add_option("--stacks", sol.stacks, "stack budget");
    csol->add_option("--queues", sol.queues, "queue budget");
    csol->add_flag("--separated", sol.separated, "restrict to separated layouts");
    csol->add_option("--minimize", sol.minimize, "sn|qn|mn|sqn|smn");
    csol->add_option("--max-vertices", sol.max_vertices, "solver size guard override");
    csol->add_option("--witness", sol.witness, "layout JSON output");
    csol->add_flag("--json", sol.json_out, "JSON report to stdout");

    TransformArgs tr;
    CLI::App* ctr = app.add_subcommand("transform", "layout transformations");
    ctr->add_option("--op", tr.op, "riffle|separate|thm5|checkerboard|same-perm|build-h")
        ->required();
    ctr->add_option("--layout", tr.layout, "layout JSON input")->required();
    ctr->add_option("--graph", tr.graph, "graph JSON for the layout");
    ctr->add_option("--spec", tr.spec, "op-specific spec JSON");
    ctr->add_option("--out", tr.out, "output JSON")->required();
    ctr->add_option("--oracle", tr.oracle, "same-perm: oracle backend (exact)");
    ctr->add_flag("--pad", tr.pad, "same-perm: pad unequal sides");
    ctr->add_option("--max-vertices", tr.max_vertices, "solver size guard override");

    SubdivideArgs sub;
    CLI::App* csub = app.add_subcommand("subdivide", "subdivision pipelines");
    csub->add_option("--pipeline", sub.pipeline, "3stack|1s1q|sep-1s6q")->required();
    csub->add_option("--layout", sub.layout, "layout JSON input")->required();
    csub->add_option("--graph", sub.graph, "graph JSON for the layout");
    csub->add_option("--out-layout", sub.out_layout, "subdivision layout output")->required();
    csub->add_option("--out-record", sub.out_record, "subdivision record output");

    std::string val_layout, val_graph;
    bool val_json = false;
    CLI::App* cval = app.add_subcommand("validate", "validate a layout");
    cval->add_option("--layout", val_layout, "layout JSON input")->required();
    cval->add_option("--graph", val_graph, "graph JSON for the layout");
    cval->add_flag("--json", val_json, "JSON report to stdout");

    RenderArgs ren;
    CLI::App* cren = app.add_subcommand("render", "render a layout as SVG");
    cren->add_option("--layout", ren.layout, "layout JSON input")->required();
    cren->add_option("--graph", ren.graph, "graph JSON for the layout");
    cren->add_option("--out", ren.out, "SVG output (stdout when omitted)");
    cren->add_option("--style", ren.style, "arc|grid");
    cren->add_option("--unit", ren.unit, "spacing unit");
    cren->add_flag("--force", ren.force, "render invalid layouts, highlighting defects");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cgen->parsed()) return run_generate(gen);
        if (csol->parsed()) return run_solve(sol);
        if (ctr->parsed()) return run_transform(tr);
        if (csub->parsed()) return run_subdivide(sub);
        if (cval->parsed()) return run_validate(val_layout, val_graph, val_json);
        if (cren->parsed()) return run_render(ren);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
