#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mog/node_set.hpp"

namespace mog {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Edge {
  NodeIndex u;
  NodeIndex v;
  double weight;
};

struct Neighbor {
  NodeIndex node;
  double weight;
};

// Undirected graph with strictly positive edge weights, stored as CSR.
// Immutable once built; share freely across threads.
class WeightedGraph {
 public:
  WeightedGraph() = default;

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string& label(NodeIndex v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  // Throws Error{lookup} for unknown labels.
  NodeIndex index_of(std::string_view label) const;
  bool has_node(std::string_view label) const;

  // Edges in insertion order, each reported once.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Neighbor> neighbors(NodeIndex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeIndex v) const { return offsets_[v + 1] - offsets_[v]; }
  double weighted_degree(NodeIndex v) const;

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b);

 private:
  friend class GraphBuilder;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

// Accumulates nodes and edges, enforcing the graph invariants as they arrive.
// Node indices follow first-appearance order.
class GraphBuilder {
 public:
  NodeIndex add_node(std::string_view label);

  // Throws Error{validation} for non-positive or non-finite weight, self-loop,
  // or duplicate unordered pair. `line` is attached to the error when given.
  void add_edge(std::string_view u, std::string_view v, double weight = 1.0,
                std::optional<std::size_t> line = std::nullopt);
  void add_edge(NodeIndex u, NodeIndex v, double weight = 1.0,
                std::optional<std::size_t> line = std::nullopt);

  std::size_t node_count() const noexcept { return labels_.size(); }

  WeightedGraph build() &&;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<Edge> edges_;
  std::unordered_map<std::uint64_t, std::size_t> pairs_;
};

// Components of the subgraph induced by `restrict` (or of the whole graph),
// each sorted, ordered by smallest member.
std::vector<NodeSet> connected_components(const WeightedGraph& g);
std::vector<NodeSet> connected_components(const WeightedGraph& g, const NodeSet& restrict);

bool is_connected(const WeightedGraph& g);

// Dijkstra from `source`; unreachable nodes get kUnreachable.
std::vector<double> sssp(const WeightedGraph& g, NodeIndex source);
std::vector<double> sssp(const WeightedGraph& g, std::string_view source);

// Largest component; ties go to the one holding the smallest index.
NodeSet largest_component(const WeightedGraph& g);

// Subgraph induced by `nodes`, labels kept, indices renumbered in the order of
// `nodes` (ascending original index).
WeightedGraph induced_subgraph(const WeightedGraph& g, const NodeSet& nodes);

// Applies `perm` (new index of old node i is perm[i]) by rebuilding the graph
// with nodes declared in permuted order. Edge insertion order follows the
// permuted endpoints.
WeightedGraph permute_nodes(const WeightedGraph& g, std::span<const NodeIndex> perm);

}  // namespace mog
