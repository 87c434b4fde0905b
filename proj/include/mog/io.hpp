#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mog/graph.hpp"

namespace mog {

enum class GraphFormat { edge_list, graph_json };

GraphFormat parse_graph_format(std::string_view name);
// .json -> graph_json, anything else -> edge_list.
GraphFormat guess_graph_format(const std::filesystem::path& path);

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Edge-list: `<u> <v> [weight]` per line, `#` comments, blank lines skipped.
// A line with a single token declares an (isolated) node.
// graph-json: {"nodes":[{"id":..}],"edges":[{"source":..,"target":..,"weight":..}]}.
WeightedGraph parse_graph(std::string_view input, GraphFormat format);
WeightedGraph parse_graph(std::istream& input, GraphFormat format);

// Positions are read from optional "x"/"y" node fields of graph-json; all
// nodes must carry them for a result to be returned.
std::optional<std::vector<Point2>> parse_graph_positions(std::string_view graph_json);

std::string serialize_graph(const WeightedGraph& g, GraphFormat format,
                            const std::vector<Point2>* positions = nullptr);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

WeightedGraph load_graph(const std::filesystem::path& path,
                         std::optional<GraphFormat> format = std::nullopt);

}  // namespace mog
