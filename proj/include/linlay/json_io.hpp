#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "linlay/core.hpp"
#include "linlay/tree_layout.hpp"

namespace linlay {

nlohmann::json graph_to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

nlohmann::json layout_to_json(const LinearLayout& layout);
// Layout JSON carries only order and pages; the graph is taken from the
// optional argument or reconstructed (n = |order|, edges = union of pages).
LinearLayout layout_from_json(const nlohmann::json& j, const std::optional<Graph>& graph = {});

nlohmann::json record_to_json(const SubdivisionRecord& rec);
SubdivisionRecord record_from_json(const nlohmann::json& j);

nlohmann::json tree_layout_to_json(const TreeLayout& tl);
TreeLayout tree_layout_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const ValidationReport& report);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);
std::string json_to_string(const nlohmann::json& j);

} // namespace linlay
