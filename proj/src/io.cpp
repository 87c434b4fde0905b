#include "mog/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mog/error.hpp"

namespace mog {

using nlohmann::json;

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edge-list" || name == "edgelist" || name == "edges") return GraphFormat::edge_list;
  if (name == "graph-json" || name == "json") return GraphFormat::graph_json;
  throw Error(ErrorKind::parameter, "unknown graph format '" + std::string(name) + "'");
}

GraphFormat guess_graph_format(const std::filesystem::path& path) {
  return path.extension() == ".json" ? GraphFormat::graph_json : GraphFormat::edge_list;
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_weight(std::string_view token, std::size_t line) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  if (!token.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorKind::parse, "invalid weight '" + std::string(token) + "'", line);
  }
  return value;
}

WeightedGraph parse_edge_list(std::string_view input) {
  GraphBuilder b;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t end = input.find('\n', pos);
    if (end == std::string_view::npos) end = input.size();
    std::string_view line = input.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    switch (tokens.size()) {
      case 1:
        b.add_node(tokens[0]);
        break;
      case 2:
        b.add_edge(tokens[0], tokens[1], 1.0, line_no);
        break;
      case 3:
        b.add_edge(tokens[0], tokens[1], parse_weight(tokens[2], line_no), line_no);
        break;
      default:
        throw Error(ErrorKind::parse,
                    "expected '<u> <v> [weight]', got " + std::to_string(tokens.size()) +
                        " fields",
                    line_no);
    }
    if (end == input.size()) break;
  }
  return std::move(b).build();
}

std::string node_id(const json& value, const char* what) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw Error(ErrorKind::parse, std::string(what) + " must be a string or integer");
}

json parse_json_document(std::string_view input) {
  try {
    return json::parse(input);
  } catch (const json::parse_error& e) {
    // byte offset -> line number
    const std::size_t offset = std::min<std::size_t>(e.byte, input.size());
    const std::size_t line =
        1 + static_cast<std::size_t>(std::count(input.begin(), input.begin() + offset, '\n'));
    throw Error(ErrorKind::parse, e.what(), line);
  }
}

WeightedGraph parse_graph_json(std::string_view input) {
  const json doc = parse_json_document(input);
  if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array()) {
    throw Error(ErrorKind::parse, "graph-json requires a \"nodes\" array");
  }
  GraphBuilder b;
  for (const auto& node : doc["nodes"]) {
    if (!node.is_object() || !node.contains("id")) {
      throw Error(ErrorKind::parse, "every node needs an \"id\"");
    }
    const std::string id = node_id(node["id"], "node id");
    const std::size_t before = b.node_count();
    b.add_node(id);
    if (b.node_count() == before) {
      throw Error(ErrorKind::validation, "duplicate node id '" + id + "'");
    }
  }
  const json edges = doc.value("edges", json::array());
  if (!edges.is_array()) throw Error(ErrorKind::parse, "\"edges\" must be an array");
  std::size_t k = 0;
  std::unordered_map<std::string, NodeIndex> ids;
  for (const auto& node : doc["nodes"]) {
    ids.emplace(node_id(node["id"], "node id"), static_cast<NodeIndex>(ids.size()));
  }
  for (const auto& edge : edges) {
    ++k;
    if (!edge.is_object() || !edge.contains("source") || !edge.contains("target")) {
      throw Error(ErrorKind::parse, "edge " + std::to_string(k) + " needs source and target");
    }
    const std::string s = node_id(edge["source"], "edge source");
    const std::string t = node_id(edge["target"], "edge target");
    auto is = ids.find(s);
    auto it = ids.find(t);
    if (is == ids.end() || it == ids.end()) {
      throw Error(ErrorKind::validation, "edge " + std::to_string(k) + " references unknown node '" +
                                             (is == ids.end() ? s : t) + "'");
    }
    double w = 1.0;
    if (edge.contains("weight")) {
      if (!edge["weight"].is_number()) {
        throw Error(ErrorKind::parse, "edge " + std::to_string(k) + " weight must be a number");
      }
      w = edge["weight"].get<double>();
    }
    try {
      b.add_edge(is->second, it->second, w);
    } catch (const Error& e) {
      throw Error(e.kind(), "edge " + std::to_string(k) + ": " + e.detail());
    }
  }
  return std::move(b).build();
}

std::string format_double(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  // Prefer the shortest representation that round-trips.
  for (int precision = 1; precision < 17; ++precision) {
    char shorter[32];
    std::snprintf(shorter, sizeof shorter, "%.*g", precision, x);
    if (std::strtod(shorter, nullptr) == x) return shorter;
  }
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string serialize_edge_list(const WeightedGraph& g) {
  std::ostringstream out;
  // Node declaration lines are only needed when first-appearance order in the
  // edge list would not reproduce the index order (or nodes are isolated).
  bool declare = false;
  NodeIndex next = 0;
  std::vector<char> seen(g.node_count(), 0);
  for (const auto& e : g.edges()) {
    for (NodeIndex v : {e.u, e.v}) {
      if (!seen[v]) {
        seen[v] = 1;
        if (v != next) declare = true;
        ++next;
      }
    }
  }
  if (next != g.node_count()) declare = true;
  if (declare) {
    for (const auto& label : g.labels()) out << label << '\n';
  }
  for (const auto& e : g.edges()) {
    out << g.label(e.u) << ' ' << g.label(e.v) << ' ' << format_double(e.weight) << '\n';
  }
  return out.str();
}

std::string serialize_graph_json(const WeightedGraph& g, const std::vector<Point2>* positions) {
  json nodes = json::array();
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    json node = {{"id", g.label(v)}};
    if (positions) {
      node["x"] = (*positions)[v].x;
      node["y"] = (*positions)[v].y;
    }
    nodes.push_back(std::move(node));
  }
  json edges = json::array();
  for (const auto& e : g.edges()) {
    edges.push_back({{"source", g.label(e.u)}, {"target", g.label(e.v)}, {"weight", e.weight}});
  }
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}}.dump() + "\n";
}

}  // namespace

WeightedGraph parse_graph(std::string_view input, GraphFormat format) {
  return format == GraphFormat::edge_list ? parse_edge_list(input) : parse_graph_json(input);
}

WeightedGraph parse_graph(std::istream& input, GraphFormat format) {
  std::ostringstream buffer;
  buffer << input.rdbuf();
  return parse_graph(buffer.str(), format);
}

std::optional<std::vector<Point2>> parse_graph_positions(std::string_view graph_json) {
  const json doc = parse_json_document(graph_json);
  std::vector<Point2> out;
  for (const auto& node : doc.at("nodes")) {
    if (!node.contains("x") || !node.contains("y")) return std::nullopt;
    out.push_back({node["x"].get<double>(), node["y"].get<double>()});
  }
  return out;
}

std::string serialize_graph(const WeightedGraph& g, GraphFormat format,
                            const std::vector<Point2>* positions) {
  if (positions && positions->size() != g.node_count()) {
    throw Error(ErrorKind::parameter, "position count does not match node count");
  }
  return format == GraphFormat::edge_list ? serialize_edge_list(g)
                                          : serialize_graph_json(g, positions);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::lookup, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::lookup, "cannot write '" + path.string() + "'");
  out << contents;
}

WeightedGraph load_graph(const std::filesystem::path& path, std::optional<GraphFormat> format) {
  return parse_graph(read_file(path), format.value_or(guess_graph_format(path)));
}

}  // namespace mog
