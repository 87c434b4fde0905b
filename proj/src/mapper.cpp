#include "mog/mapper.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "mog/error.hpp"

namespace mog {

const MogNode* MogSummary::find_node(int id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return &n;
  }
  return nullptr;
}

std::vector<MogNode> pullback(const WeightedGraph& g, const LensField& field, const Cover& cover,
                              kernels::Exec exec) {
  if (field.normalized.size() != g.node_count()) {
    throw Error(ErrorKind::validation, "lens field does not match the graph");
  }
  const Assignment assignment = assign_nodes(cover, field.normalized);
  const auto components =
      exec == kernels::Exec::serial
          ? kernels::preimage_components_serial(g, assignment.preimages)
          : kernels::preimage_components_parallel(g, assignment.preimages);
  std::vector<MogNode> nodes;
  int next = 0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    for (const auto& comp : components[i]) {
      MogNode node;
      node.id = next++;
      node.interval_id = cover.intervals()[i].id;
      double total = 0.0;
      for (NodeIndex v : comp) total += field.normalized[v];
      node.mean_lens = total / static_cast<double>(comp.size());
      node.members = comp;
      nodes.push_back(std::move(node));
    }
  }
  return nodes;
}

MogSummary nerve(std::vector<MogNode> nodes) {
  NodeIndex extent = 0;
  for (const auto& n : nodes) {
    if (!n.members.empty()) extent = std::max<NodeIndex>(extent, n.members.indices().back() + 1);
  }
  // Inverted index: graph node -> positions of the MOG nodes holding it.
  std::vector<std::vector<std::size_t>> holders(extent);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeIndex v : nodes[i].members) holders[v].push_back(i);
  }
  struct Shared {
    std::size_t a, b;
    NodeIndex v;
  };
  std::vector<Shared> shared;
  for (NodeIndex v = 0; v < extent; ++v) {
    const auto& h = holders[v];
    for (std::size_t a = 0; a < h.size(); ++a) {
      for (std::size_t b = a + 1; b < h.size(); ++b) shared.push_back({h[a], h[b], v});
    }
  }
  // Stable so members stay in ascending graph-node order within a pair.
  std::stable_sort(shared.begin(), shared.end(), [](const Shared& x, const Shared& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  MogSummary s;
  for (std::size_t i = 0; i < shared.size();) {
    std::size_t j = i;
    std::vector<NodeIndex> members;
    while (j < shared.size() && shared[j].a == shared[i].a && shared[j].b == shared[i].b) {
      members.push_back(shared[j++].v);
    }
    const MogNode& x = nodes[shared[i].a];
    const MogNode& y = nodes[shared[i].b];
    if (x.interval_id == y.interval_id) {
      throw std::logic_error("components of one preimage intersect");
    }
    MogEdge e;
    e.source = std::min(x.id, y.id);
    e.target = std::max(x.id, y.id);
    e.intersection = NodeSet::from_sorted(std::move(members));
    s.edges.push_back(std::move(e));
    i = j;
  }
  std::sort(s.edges.begin(), s.edges.end(), [](const MogEdge& a, const MogEdge& b) {
    return std::pair(a.source, a.target) < std::pair(b.source, b.target);
  });
  s.nodes = std::move(nodes);
  return s;
}

MogSummary filter_summary(const MogSummary& s, std::size_t min_size, bool largest_only) {
  MogSummary out;
  out.meta = s.meta;
  out.filter = {min_size, largest_only};
  std::map<int, std::size_t> keep;
  for (const auto& n : s.nodes) {
    if (n.size() >= min_size) keep.emplace(n.id, keep.size());
  }
  std::vector<const MogEdge*> edges;
  for (const auto& e : s.edges) {
    if (keep.count(e.source) && keep.count(e.target)) edges.push_back(&e);
  }
  if (largest_only && !keep.empty()) {
    // Union-find over surviving node positions.
    std::vector<std::size_t> parent(keep.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&parent](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto* e : edges) {
      const auto a = find(keep[e->source]);
      const auto b = find(keep[e->target]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::size_t> sizes;
    for (const auto& [id, pos] : keep) ++sizes[find(pos)];
    // Roots are the smallest position in each component, and positions are
    // ordered like ids, so the first maximum wins ties by smallest id.
    std::size_t best_root = 0;
    std::size_t best_size = 0;
    for (const auto& [root, size] : sizes) {
      if (size > best_size) {
        best_size = size;
        best_root = root;
      }
    }
    for (auto it = keep.begin(); it != keep.end();) {
      it = find(it->second) == best_root ? std::next(it) : keep.erase(it);
    }
    std::erase_if(edges, [&](const MogEdge* e) { return !keep.count(e->source); });
  }
  for (const auto& n : s.nodes) {
    if (keep.count(n.id)) out.nodes.push_back(n);
  }
  for (const auto* e : edges) out.edges.push_back(*e);
  return out;
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_stage(name);
  }
}

}  // namespace

MogSummary compute_mog(const WeightedGraph& g, const LensField& field, const Cover& cover,
                       FilterState filter) {
  std::vector<MogNode> nodes = stage("pullback", [&] { return pullback(g, field, cover); });
  MogSummary s = stage("nerve", [&] { return nerve(std::move(nodes)); });
  s.meta.lens = field.kind;
  s.meta.lens_params = field.params;
  s.meta.cover = cover;
  s.meta.graph_nodes = g.node_count();
  s.meta.graph_edges = g.edge_count();
  s.meta.uncovered = assign_nodes(cover, field.normalized).uncovered;
  if (filter.min_size > 0 || filter.largest_only) {
    s = stage("filter", [&] { return filter_summary(s, filter.min_size, filter.largest_only); });
  }
  return s;
}

MogResult compute_mog(const WeightedGraph& g, const MogSpec& spec) {
  MogResult result;
  if (requires_connectivity(spec.lens) && g.node_count() > 1 && !is_connected(g)) {
    result.restricted_graph = induced_subgraph(g, largest_component(g));
  }
  const WeightedGraph& target = result.graph(g);
  result.lens = stage("lens", [&] { return compute_lens(target, spec.lens, spec.lens_params); });
  result.summary = compute_mog(target, result.lens, spec.cover, spec.filter);
  result.summary.meta.graph_nodes = g.node_count();
  result.summary.meta.graph_edges = g.edge_count();
  result.summary.meta.restricted_to_largest_component = result.restricted_graph.has_value();
  return result;
}

WeightedGraph summary_graph(const MogSummary& s) {
  GraphBuilder b;
  for (const auto& n : s.nodes) b.add_node(std::to_string(n.id));
  for (const auto& e : s.edges) {
    b.add_edge(std::to_string(e.source), std::to_string(e.target),
               static_cast<double>(e.weight()));
  }
  return std::move(b).build();
}

}  // namespace mog
