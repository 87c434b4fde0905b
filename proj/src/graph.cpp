#include "mog/graph.hpp"

#include <cmath>
#include <functional>
#include <queue>

#include "mog/error.hpp"

namespace mog {

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeIndex> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet::from_sorted(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeIndex> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet::from_sorted(std::move(out));
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  std::vector<NodeIndex> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return NodeSet::from_sorted(std::move(out));
}

NodeIndex WeightedGraph::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) {
    throw Error(ErrorKind::lookup, "unknown node '" + std::string(label) + "'");
  }
  return it->second;
}

bool WeightedGraph::has_node(std::string_view label) const {
  return index_.count(std::string(label)) != 0;
}

double WeightedGraph::weighted_degree(NodeIndex v) const {
  double total = 0.0;
  for (const auto& n : neighbors(v)) total += n.weight;
  return total;
}

bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
  if (a.labels_ != b.labels_ || a.edges_.size() != b.edges_.size()) return false;
  for (std::size_t i = 0; i < a.edges_.size(); ++i) {
    const auto& x = a.edges_[i];
    const auto& y = b.edges_[i];
    if (x.u != y.u || x.v != y.v || x.weight != y.weight) return false;
  }
  return true;
}

NodeIndex GraphBuilder::add_node(std::string_view label) {
  std::string key(label);
  auto [it, inserted] = index_.try_emplace(key, static_cast<NodeIndex>(labels_.size()));
  if (inserted) labels_.push_back(std::move(key));
  return it->second;
}

void GraphBuilder::add_edge(std::string_view u, std::string_view v, double weight,
                            std::optional<std::size_t> line) {
  if (u == v) {
    throw Error(ErrorKind::validation, "self-loop on node '" + std::string(u) + "'", line);
  }
  const NodeIndex a = add_node(u);
  const NodeIndex b = add_node(v);
  add_edge(a, b, weight, line);
}

void GraphBuilder::add_edge(NodeIndex u, NodeIndex v, double weight,
                            std::optional<std::size_t> line) {
  if (u >= labels_.size() || v >= labels_.size()) {
    throw Error(ErrorKind::lookup, "edge endpoint out of range", line);
  }
  if (u == v) {
    throw Error(ErrorKind::validation, "self-loop on node '" + labels_[u] + "'", line);
  }
  if (!std::isfinite(weight) || weight <= 0.0) {
    throw Error(ErrorKind::validation,
                "non-positive weight " + std::to_string(weight) + " on edge (" + labels_[u] +
                    ", " + labels_[v] + ")",
                line);
  }
  const std::uint64_t lo = std::min(u, v);
  const std::uint64_t hi = std::max(u, v);
  if (!pairs_.emplace((lo << 32) | hi, edges_.size()).second) {
    throw Error(ErrorKind::validation,
                "duplicate edge (" + labels_[u] + ", " + labels_[v] + ")", line);
  }
  edges_.push_back({u, v, weight});
}

WeightedGraph GraphBuilder::build() && {
  WeightedGraph g;
  const std::size_t n = labels_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& e : edges_) {
    g.adjacency_[cursor[e.u]++] = {e.v, e.weight};
    g.adjacency_[cursor[e.v]++] = {e.u, e.weight};
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::sort(g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
  g.labels_ = std::move(labels_);
  g.index_ = std::move(index_);
  g.edges_ = std::move(edges_);
  return g;
}

namespace {

// BFS labelling restricted to nodes with in_set[v] set. Components come out
// ordered by smallest member because seeds are scanned in index order.
std::vector<NodeSet> components_masked(const WeightedGraph& g, const std::vector<char>& in_set,
                                       std::span<const NodeIndex> seeds) {
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeSet> out;
  std::vector<NodeIndex> queue;
  for (NodeIndex s : seeds) {
    if (seen[s]) continue;
    seen[s] = 1;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (const auto& n : g.neighbors(queue[head])) {
        if (in_set[n.node] && !seen[n.node]) {
          seen[n.node] = 1;
          queue.push_back(n.node);
        }
      }
    }
    out.emplace_back(std::move(queue));
    queue = {};
  }
  return out;
}

}  // namespace

std::vector<NodeSet> connected_components(const WeightedGraph& g) {
  std::vector<char> all(g.node_count(), 1);
  std::vector<NodeIndex> seeds(g.node_count());
  for (NodeIndex i = 0; i < seeds.size(); ++i) seeds[i] = i;
  return components_masked(g, all, seeds);
}

std::vector<NodeSet> connected_components(const WeightedGraph& g, const NodeSet& restrict) {
  std::vector<char> mask(g.node_count(), 0);
  for (NodeIndex v : restrict) {
    if (v >= g.node_count()) throw Error(ErrorKind::lookup, "node index out of range");
    mask[v] = 1;
  }
  return components_masked(g, mask, restrict.view());
}

bool is_connected(const WeightedGraph& g) {
  return g.node_count() <= 1 || connected_components(g).size() == 1;
}

std::vector<double> sssp(const WeightedGraph& g, NodeIndex source) {
  if (source >= g.node_count()) throw Error(ErrorKind::lookup, "source index out of range");
  std::vector<double> dist(g.node_count(), kUnreachable);
  using Item = std::pair<double, NodeIndex>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = 0.0;
  heap.push({0.0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for (const auto& n : g.neighbors(u)) {
      const double nd = d + n.weight;
      if (nd < dist[n.node]) {
        dist[n.node] = nd;
        heap.push({nd, n.node});
      }
    }
  }
  return dist;
}

std::vector<double> sssp(const WeightedGraph& g, std::string_view source) {
  return sssp(g, g.index_of(source));
}

NodeSet largest_component(const WeightedGraph& g) {
  auto comps = connected_components(g);
  if (comps.empty()) return {};
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    if (comps[i].size() > comps[best].size()) best = i;
  }
  return std::move(comps[best]);
}

WeightedGraph induced_subgraph(const WeightedGraph& g, const NodeSet& nodes) {
  GraphBuilder b;
  for (NodeIndex v : nodes) b.add_node(g.label(v));
  std::vector<NodeIndex> remap(g.node_count(), NodeIndex(-1));
  NodeIndex next = 0;
  for (NodeIndex v : nodes) remap[v] = next++;
  for (const auto& e : g.edges()) {
    if (remap[e.u] != NodeIndex(-1) && remap[e.v] != NodeIndex(-1)) {
      b.add_edge(remap[e.u], remap[e.v], e.weight);
    }
  }
  return std::move(b).build();
}

WeightedGraph permute_nodes(const WeightedGraph& g, std::span<const NodeIndex> perm) {
  const std::size_t n = g.node_count();
  std::vector<NodeIndex> inverse(n);
  for (NodeIndex i = 0; i < n; ++i) inverse[perm[i]] = i;
  GraphBuilder b;
  for (NodeIndex j = 0; j < n; ++j) b.add_node(g.label(inverse[j]));
  for (const auto& e : g.edges()) b.add_edge(perm[e.u], perm[e.v], e.weight);
  return std::move(b).build();
}

}  // namespace mog
