// Acceptance gate: runs all twelve primary criteria and prints one PASS/FAIL
// line per criterion. argv[1] must be the path to the linlay CLI binary
// (used by the determinism criterion).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "linlay/generators.hpp"
#include "linlay/solver.hpp"
#include "linlay/transforms.hpp"
#include "linlay/tree_layout.hpp"
#include "support/naive.hpp"

using namespace linlay;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("%s  criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", idx, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) g_failures++;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int nonempty(const LinearLayout& l, PageKind k) {
    int c = 0;
    for (const Page& p : l.pages)
        if (p.kind == k && !p.edges.empty()) c++;
    return c;
}

bool subdivision_contracts_back(const SubdivisionRecord& rec) {
    auto [g, map] = contract_subdivision(rec);
    return g.n == rec.original.n && g.edges == rec.original.edges;
}

std::map<Edge, PageKind> edge_kinds(const LinearLayout& l) {
    std::map<Edge, PageKind> m;
    for (const Page& p : l.pages)
        for (const Edge& e : p.edges) m[e] = p.kind;
    return m;
}

// ---------------------------------------------------------------------------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    Graph k6 = complete_graph(6);
    bool ok = stack_number(k6) == 3 && queue_number(k6) == 3 && mixed_number(k6) == 2;
    PageBudget b;
    b.stacks = 1;
    b.queues = 1;
    ok = ok && feasible(k6, b).feasible;
    b = PageBudget{};
    b.stacks = 2;
    ok = ok && !feasible(k6, b).feasible;
    b = PageBudget{};
    b.queues = 2;
    ok = ok && !feasible(k6, b).feasible;
    double t = seconds_since(t0);
    ok = ok && t < 60.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", t);
    report(1, "K6 numbers sn=3 qn=3 mn=2", ok, buf);
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    Graph k33 = complete_bipartite(3, 3);
    PageBudget b;
    b.separated = true;
    b.stacks = 1;
    b.queues = 1;
    bool ok = feasible(k33, b).feasible;
    b.stacks = 0;
    b.queues = 2;
    ok = ok && !feasible(k33, b).feasible;
    b.stacks = 2;
    b.queues = 0;
    ok = ok && !feasible(k33, b).feasible;
    ok = ok && separated_queue_number(k33) == 3;
    double t = seconds_since(t0);
    ok = ok && t < 30.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.1fs", t);
    report(2, "K33 separated facts, sqn=3", ok, buf);
}

void criterion3() {
    std::vector<Graph> corpus = naive::corpus();
    bool ok = corpus.size() == 200;
    const std::pair<int, int> budgets[] = {{1, 0}, {0, 1}, {1, 1}, {2, 0}, {0, 2}};
    int mismatches = 0;
    for (const Graph& g : corpus) {
        for (auto [s, q] : budgets) {
            PageBudget b;
            b.stacks = s;
            b.queues = q;
            bool pruned = feasible(g, b).feasible;
            bool brute = naive::feasible(g, s, q, false);
            if (pruned != brute) mismatches++;
        }
    }
    ok = ok && mismatches == 0;
    report(3, "solver matches naive enumerator on 200-graph corpus", ok,
           mismatches ? std::to_string(mismatches) + " mismatches" : "1000 decisions agree");
}

void criterion4() {
    std::mt19937_64 rng(4001);
    int bad = 0;
    for (int it = 0; it < 200; ++it) {
        int na = 3 + static_cast<int>(rng() % 28);  // |A|,|B| <= 30
        int nb = 3 + static_cast<int>(rng() % 28);
        LinearLayout in = random_layout_instance(1, 1, na, nb, 0.25, true, rng());
        LinearLayout out = theorem5_transform(in);
        auto [s, q] = out.signature();
        if (!validate_layout(out).ok() || !is_separated(out) || s != 0 || q > 4 ||
            out.graph.edges != in.graph.edges)
            bad++;
    }
    report(4, "theorem5_transform: 200 instances -> <=4 queues", bad == 0,
           bad ? std::to_string(bad) + " failures" : "0 failures");
}

void criterion5() {
    std::mt19937_64 rng(5001);
    int bad = 0;
    for (int it = 0; it < 200; ++it) {
        int q = 1 + static_cast<int>(rng() % 3);
        LinearLayout in =
            random_layout_instance(0, q, 4 + rng() % 8, 4 + rng() % 8, 0.35, false, rng());
        int qn = static_cast<int>(in.pages.size());
        int k = 2 + static_cast<int>(rng() % 3);  // k <= 4

        // Generic riffle: random parts, random order-preserving interleave.
        RiffleSpec spec;
        spec.parts.assign(k, {});
        for (Vertex v : in.order.order) spec.parts[rng() % k].push_back(v);
        std::vector<size_t> next(k, 0);
        std::vector<Vertex> target;
        while (target.size() < in.order.order.size()) {
            int p = static_cast<int>(rng() % k);
            if (next[p] < spec.parts[p].size()) target.push_back(spec.parts[p][next[p]++]);
        }
        spec.target_order = make_order(target);
        LinearLayout out = riffle_split(in, spec);
        auto [s1, q1] = out.signature();
        if (!validate_layout(out).ok() || s1 != 0 || q1 > k * k * qn ||
            out.order.order != target)
            bad++;

        // Bipartite variant: A-parts before B-parts.
        int l = 1 + static_cast<int>(rng() % 2);
        int r = 1 + static_cast<int>(rng() % 2);
        RiffleSpec bspec;
        bspec.parts.assign(l + r, {});
        std::vector<int> side(in.graph.n, 0);
        for (Vertex v : in.graph.bipartition->b) side[v] = 1;
        int ai = 0, bi = 0;
        for (Vertex v : in.order.order) {
            if (side[v] == 0)
                bspec.parts[ai++ % l].push_back(v);
            else
                bspec.parts[l + (bi++ % r)].push_back(v);
        }
        std::vector<size_t> bnext(l + r, 0);
        std::vector<Vertex> btarget;
        while (btarget.size() < in.order.order.size()) {
            int p = static_cast<int>(rng() % (l + r));
            if (bnext[p] < bspec.parts[p].size()) btarget.push_back(bspec.parts[p][bnext[p]++]);
        }
        bspec.target_order = make_order(btarget);
        LinearLayout bout = riffle_split_bipartite(in, bspec, l);
        auto [s2, q2] = bout.signature();
        if (!validate_layout(bout).ok() || s2 != 0 || q2 > 2 * l * r * qn) bad++;
    }
    report(5, "riffle bounds: 200 instances, generic and bipartite", bad == 0,
           bad ? std::to_string(bad) + " failures" : "0 failures");
}

void criterion6() {
    std::mt19937_64 rng(6001);
    int bad = 0;
    for (int s = 1; s <= 4; ++s)
        for (int q = 1; q <= 4; ++q)
            for (int it = 0; it < 20; ++it) {
                LinearLayout in = random_layout_instance(s, q, 4 + rng() % 5, 4 + rng() % 5,
                                                         0.4, false, rng());
                auto [rec, out] = mixed_to_3stack_subdivision(in);
                bool ok = validate_layout(out).ok() &&
                          nonempty(out, PageKind::Queue) == 0 &&
                          nonempty(out, PageKind::Stack) <= 3 &&
                          subdivision_contracts_back(rec);
                int h = ceil_log2(std::max(s, q));
                auto kinds = edge_kinds(in);
                for (size_t i = 0; ok && i < rec.original.edges.size(); ++i) {
                    int want = kinds[rec.original.edges[i]] == PageKind::Stack ? 2 * h + 2
                                                                               : 2 * h + 3;
                    if (rec.division_count(static_cast<int>(i)) != want) ok = false;
                }
                if (!ok) bad++;
            }
    report(6, "3-stack subdivision sweep (s,q) in {1..4}^2 x20", bad == 0,
           bad ? std::to_string(bad) + " failures" : "0 failures");
}

void criterion7() {
    std::mt19937_64 rng(7001);
    int bad = 0;
    for (int s = 1; s <= 4; ++s)
        for (int q = 1; q <= 4; ++q)
            for (int it = 0; it < 20; ++it) {
                LinearLayout in = random_layout_instance(s, q, 4 + rng() % 5, 4 + rng() % 5,
                                                         0.4, false, rng());
                auto [rec, out] = mixed_to_1s1q_subdivision(in);
                bool ok = validate_layout(out).ok() &&
                          nonempty(out, PageKind::Stack) <= 1 &&
                          nonempty(out, PageKind::Queue) <= 1 &&
                          subdivision_contracts_back(rec);
                int h = ceil_log2(std::max(s, q));
                auto kinds = edge_kinds(in);
                for (size_t i = 0; ok && i < rec.original.edges.size(); ++i) {
                    int want = kinds[rec.original.edges[i]] == PageKind::Stack ? 4 * h + 4
                                                                               : 4 * h + 6;
                    if (rec.division_count(static_cast<int>(i)) != want) ok = false;
                }
                if (!ok) bad++;
            }
    report(7, "1-stack 1-queue subdivision sweep (s,q) in {1..4}^2 x20", bad == 0,
           bad ? std::to_string(bad) + " failures" : "0 failures");
}

void criterion8() {
    std::mt19937_64 rng(8001);
    int bad = 0;
    for (int q = 1; q <= 8; ++q)
        for (int it = 0; it < 20; ++it) {
            LinearLayout in = random_layout_instance(1, q, 6 + rng() % 6, 6 + rng() % 6,
                                                     0.35, true, rng());
            auto [rec, out] = separated_1sq_to_1s6q_subdivision(in);
            bool ok = validate_layout(out).ok() && is_separated(out) &&
                      nonempty(out, PageKind::Stack) <= 1 &&
                      nonempty(out, PageKind::Queue) <= 6 &&
                      subdivision_contracts_back(rec);
            int divs = 2 * ceil_log2(q);
            auto kinds = edge_kinds(in);
            for (size_t i = 0; ok && i < rec.original.edges.size(); ++i) {
                int want = kinds[rec.original.edges[i]] == PageKind::Stack ? 0 : divs;
                if (rec.division_count(static_cast<int>(i)) != want) ok = false;
            }
            if (!ok) bad++;
        }
    report(8, "separated (1,q)->(1,<=6) sweep q in {1..8} x20", bad == 0,
           bad ? std::to_string(bad) + " failures" : "0 failures");
}

void criterion9() {
    std::mt19937_64 rng(9001);
    int bad = 0, bound_checks = 0;
    for (int s = 1; s <= 3; ++s)
        for (int q = 1; q <= 3; ++q)
            for (int it = 0; it < 20; ++it) {
                // Keep H small on the instances whose G has <= 8 vertices so
                // the exact queue numbers in the bound check stay cheap.
                int lo = s >= 3 ? 5 : 3;
                int na = lo + static_cast<int>(rng() % 2);
                int nb = lo + static_cast<int>(rng() % 2);
                LinearLayout in = random_layout_instance(s, q, na, nb, 0.4, true, rng());
                auto [s1, q1] = in.signature();
                ShallowGraphResult res = build_shallow_graph_H(in);
                auto [hs, hq] = res.h_layout.signature();
                bool ok = validate_layout(res.h_layout).ok() && is_separated(res.h_layout) &&
                          hs == 1 && hq <= s1 + q1 - 1 && res.map.radius == 1;
                Graph back = contract(res.h, res.map);
                ok = ok && back.n == in.graph.n && back.edges == in.graph.edges;
                if (ok && in.graph.n <= 8) {
                    ContractionBoundReport rep =
                        check_contraction_bound(in.graph, res.h, res.map, 40);
                    long long expect = 24LL * rep.qn_h * rep.qn_h * rep.qn_h;
                    ok = rep.holds && rep.bound == expect;
                    bound_checks++;
                }
                if (!ok) bad++;
            }
    report(9, "shallow-minor H sweep (s,q) in {1..3}^2 x20", bad == 0,
           bad ? std::to_string(bad) + " failures"
               : std::to_string(bound_checks) + " bound checks passed");
}

void criterion10() {
    bool ok = true;
    for (int k = 1; k <= 6 && ok; ++k) {
        ChallengeInstance inst = challenge_graph(k);
        auto [s, q] = inst.mixed_layout.signature();
        ok = validate_layout(inst.mixed_layout).ok() && is_separated(inst.mixed_layout) &&
             s == 1 && q == 2;
        LinearLayout ql = challenge_queue_layout(k);
        auto [s2, q2] = ql.signature();
        ok = ok && validate_layout(ql).ok() && is_separated(ql) && s2 == 0 && q2 <= 4 &&
             ql.graph.edges == inst.graph.edges;
    }
    // G_16 (k=4): 3 classes of edges before deduplication: n red + n brown +
    // n blue = 48 for n = 16.
    ChallengeInstance g16 = challenge_graph(4);
    int pre_dedup = 16 + 16 + 16;
    ok = ok && pre_dedup == 48 && g16.graph.edges.size() <= 48;
    report(10, "challenge family k in {1..6}, 4-queue layouts", ok);
}

void criterion11() {
    std::mt19937_64 rng(11001);
    int bad = 0;
    for (int it = 0; it < 100; ++it) {
        int q = 1 + static_cast<int>(rng() % 4);
        LinearLayout in =
            random_layout_instance(0, q, 4 + rng() % 8, 4 + rng() % 8, 0.35, false, rng());
        int qn = static_cast<int>(in.pages.size());
        LinearLayout out = separate(in);
        auto [s, q2] = out.signature();
        bool ok = validate_layout(out).ok() && is_separated(out) && s == 0 && q2 <= 2 * qn;
        std::vector<int> side(in.graph.n, 0);
        for (Vertex v : in.graph.bipartition->b) side[v] = 1;
        for (int sd = 0; sd < 2 && ok; ++sd) {
            std::vector<Vertex> before, after;
            for (Vertex v : in.order.order)
                if (side[v] == sd) before.push_back(v);
            for (Vertex v : out.order.order)
                if (side[v] == sd) after.push_back(v);
            ok = before == after;
        }
        if (!ok) bad++;
    }
    report(11, "separate(): 100 instances -> separated <=2q", bad == 0,
           bad ? std::to_string(bad) + " failures" : "0 failures");
}

// --- criterion 12: CLI determinism -----------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool run_cli(const std::string& cli, const std::string& args, const fs::path& stdout_file) {
    std::string cmd = cli + " " + args + " > " + stdout_file.string() + " 2>&1";
    return std::system(cmd.c_str()) == 0;
}

void criterion12(const std::string& cli) {
    fs::path dir = fs::temp_directory_path() / "linlay_acceptance";
    std::error_code ec;
    fs::remove_all(dir, ec);
    fs::create_directories(dir);
    bool ok = true;
    std::string detail;

    struct Step {
        std::string name;
        std::string args;  // with {run} placeholder for the per-run directory
        std::vector<std::string> outputs;
    };
    std::vector<Step> steps = {
        {"generate-challenge",
         "generate --family challenge --k 3 --out {run}/cg.json --layout-out {run}/cl.json "
         "--extra-out {run}/cq.json",
         {"cg.json", "cl.json", "cq.json"}},
        {"generate-random",
         "generate --family random --stacks 1 --queues 2 --na 6 --nb 6 --density 0.4 "
         "--separated --seed 42 --out {run}/rg.json --layout-out {run}/rl.json",
         {"rg.json", "rl.json"}},
        {"generate-k6", "generate --family k6 --out {run}/k6.json", {"k6.json"}},
        {"solve-k6",
         "solve --graph {run}/k6.json --minimize mn --witness {run}/w.json --json",
         {"w.json"}},
        {"generate-random-queues",
         "generate --family random --stacks 0 --queues 2 --na 6 --nb 6 --density 0.4 "
         "--seed 7 --out {run}/qg.json --layout-out {run}/ql.json",
         {"qg.json", "ql.json"}},
        {"transform-separate",
         "transform --op separate --layout {run}/ql.json --graph {run}/qg.json "
         "--out {run}/sep.json",
         {"sep.json"}},
        {"render-grid",
         "render --layout {run}/rl.json --graph {run}/rg.json --out {run}/r.svg --style grid",
         {"r.svg"}},
        {"validate",
         "validate --layout {run}/rl.json --graph {run}/rg.json --json",
         {}},
    };

    for (int run = 0; run < 2 && ok; ++run) {
        fs::path rdir = dir / ("run" + std::to_string(run));
        fs::create_directories(rdir);
        for (const Step& st : steps) {
            std::string args = st.args;
            std::string::size_type pos;
            while ((pos = args.find("{run}")) != std::string::npos)
                args.replace(pos, 5, rdir.string());
            if (!run_cli(cli, args, rdir / (st.name + ".stdout"))) {
                ok = false;
                detail = st.name + " exited nonzero";
                break;
            }
        }
    }
    if (ok) {
        for (const Step& st : steps) {
            std::vector<std::string> files = st.outputs;
            files.push_back(st.name + ".stdout");
            for (const std::string& f : files) {
                if (slurp(dir / "run0" / f) != slurp(dir / "run1" / f)) {
                    ok = false;
                    detail = f + " differs between runs";
                }
                if (f != st.name + ".stdout" && slurp(dir / "run0" / f).empty()) {
                    ok = false;
                    detail = f + " is empty";
                }
            }
        }
    }
    report(12, "CLI byte-determinism across consecutive runs", ok, detail);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: %s <path-to-linlay-cli>\n", argv[0]);
        return 2;
    }
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    criterion12(argv[1]);
    if (g_failures == 0)
        std::printf("ALL 12 CRITERIA PASSED\n");
    else
        std::printf("%d CRITERIA FAILED\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
