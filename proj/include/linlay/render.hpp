#pragma once

#include <string>

#include "linlay/core.hpp"

namespace linlay {

enum class RenderStyle { ArcDiagram, GridMatrix };

struct RenderSpec {
    RenderStyle style = RenderStyle::ArcDiagram;
    double unit = 36.0;  // spacing between vertices / grid cells
    bool force = false;  // render invalid layouts, highlighting violations
};

// Deterministic SVG document; throws std::domain_error when grid-matrix is
// requested for a non-separated layout, or std::invalid_argument when the
// layout is invalid and force is not set.
std::string render_svg(const LinearLayout& layout, const RenderSpec& spec);

} // namespace linlay
