#include "linlay/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace linlay {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kPaletteSize = 8;

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", x);
    return buf;
}

std::string arc_diagram(const LinearLayout& layout, const RenderSpec& spec,
                        const std::map<Edge, bool>& violating) {
    const int n = layout.order.size();
    const double u = spec.unit;
    const double width = (n + 1) * u;
    const double band = 0.6 * u * std::max(1, n / 2);
    const double y0 = band + u;
    const double height = 2 * (band + u);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    svg << "<line x1=\"" << num(u * 0.5) << "\" y1=\"" << num(y0) << "\" x2=\""
        << num(width - u * 0.5) << "\" y2=\"" << num(y0)
        << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    for (int p = 0; p < static_cast<int>(layout.pages.size()); ++p) {
        const Page& page = layout.pages[p];
        const char* color = kPalette[p % kPaletteSize];
        for (const Edge& e : page.edges) {
            double x1 = u * (layout.order.pos(e.u) + 1);
            double x2 = u * (layout.order.pos(e.v) + 1);
            if (x1 > x2) std::swap(x1, x2);
            double r = (x2 - x1) / 2.0;
            int sweep = page.kind == PageKind::Stack ? 1 : 0;  // stacks above
            bool bad = violating.count(e) && violating.at(e);
            svg << "<path d=\"M " << num(x1) << " " << num(y0) << " A " << num(r) << " "
                << num(r) << " 0 0 " << sweep << " " << num(x2) << " " << num(y0)
                << "\" fill=\"none\" stroke=\"" << (bad ? "#ff0000" : color)
                << "\" stroke-width=\"" << (bad ? "2.5" : "1.5") << "\""
                << (bad ? " stroke-dasharray=\"4 2\"" : "") << "/>\n";
        }
    }
    for (int i = 0; i < n; ++i) {
        double x = u * (i + 1);
        svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y0)
            << "\" r=\"3\" fill=\"#000000\"/>\n";
        svg << "<text x=\"" << num(x) << "\" y=\"" << num(y0 + 14)
            << "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"monospace\">"
            << layout.order.order[i] << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string grid_matrix(const LinearLayout& layout, const RenderSpec& spec,
                        const std::map<Edge, bool>& violating) {
    GridRepresentation grid = to_grid(layout);
    const double u = spec.unit;
    const int cols = static_cast<int>(grid.cols.size());
    const int rows = static_cast<int>(grid.rows.size());
    const double width = (cols + 2) * u;
    const double height = (rows + 2) * u;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
    for (int c = 0; c <= cols; ++c)
        svg << "<line x1=\"" << num(u * (c + 1)) << "\" y1=\"" << num(u) << "\" x2=\""
            << num(u * (c + 1)) << "\" y2=\"" << num(u * (rows + 1))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    for (int r = 0; r <= rows; ++r)
        svg << "<line x1=\"" << num(u) << "\" y1=\"" << num(u * (r + 1)) << "\" x2=\""
            << num(u * (cols + 1)) << "\" y2=\"" << num(u * (r + 1))
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";

    std::map<Vertex, int> col_of, row_of;
    for (int c = 0; c < cols; ++c) col_of[grid.cols[c]] = c;
    for (int r = 0; r < rows; ++r) row_of[grid.rows[r]] = r;
    for (int p = 0; p < static_cast<int>(layout.pages.size()); ++p) {
        const char* color = kPalette[p % kPaletteSize];
        for (const Edge& e : layout.pages[p].edges) {
            Vertex a = col_of.count(e.u) ? e.u : e.v;
            Vertex b = a == e.u ? e.v : e.u;
            double x = u * (col_of.at(a) + 1.5);
            double y = u * (row_of.at(b) + 1.5);
            bool bad = violating.count(e) && violating.at(e);
            svg << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\""
                << num(u * 0.18) << "\" fill=\"" << (bad ? "#ff0000" : color) << "\"/>\n";
        }
    }
    for (int c = 0; c < cols; ++c)
        svg << "<text x=\"" << num(u * (c + 1.5)) << "\" y=\"" << num(u * 0.8)
            << "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"monospace\">"
            << grid.cols[c] << "</text>\n";
    for (int r = 0; r < rows; ++r)
        svg << "<text x=\"" << num(u * 0.6) << "\" y=\"" << num(u * (r + 1.6))
            << "\" font-size=\"10\" text-anchor=\"middle\" font-family=\"monospace\">"
            << grid.rows[r] << "</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

} // namespace

std::string render_svg(const LinearLayout& layout, const RenderSpec& spec) {
    ValidationReport report = validate_layout(layout);
    if (!report.ok() && !spec.force)
        throw std::invalid_argument("render_svg: layout invalid (use force to render anyway)");
    std::map<Edge, bool> violating;
    for (const PairViolation& v : report.pair_violations) {
        violating[v.e1] = true;
        violating[v.e2] = true;
    }
    for (const Edge& e : report.unknown) violating[e] = true;
    for (const Edge& e : report.duplicated) violating[e] = true;

    if (spec.style == RenderStyle::GridMatrix) {
        if (!is_separated(layout))
            throw std::domain_error("render_svg: grid-matrix needs a separated layout");
        return grid_matrix(layout, spec, violating);
    }
    return arc_diagram(layout, spec, violating);
}

} // namespace linlay
