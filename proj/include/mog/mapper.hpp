#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mog/cover.hpp"
#include "mog/graph.hpp"
#include "mog/kernels.hpp"
#include "mog/lens.hpp"

namespace mog {

// A connected component C_u of the subgraph induced by one preimage.
struct MogNode {
  int id = 0;
  int interval_id = 0;
  NodeSet members;
  double mean_lens = 0.0;  // mean normalized lens over members

  std::size_t size() const noexcept { return members.size(); }
};

// Non-empty intersection C_u ∩ C_v; source < target.
struct MogEdge {
  int source = 0;
  int target = 0;
  NodeSet intersection;

  std::size_t weight() const noexcept { return intersection.size(); }
};

struct FilterState {
  std::size_t min_size = 0;
  bool largest_only = false;
};

struct SummaryMeta {
  LensKind lens = LensKind::agd;
  LensParams lens_params;
  Cover cover;
  std::size_t graph_nodes = 0;  // of the input graph, before any restriction
  std::size_t graph_edges = 0;
  bool restricted_to_largest_component = false;
  NodeSet uncovered;            // nodes in no preimage (manual covers with gaps)
};

// 1-skeleton of the nerve of the pullback cover. Node members index the
// graph the lens was computed on (the largest component when restricted).
struct MogSummary {
  std::vector<MogNode> nodes;
  std::vector<MogEdge> edges;
  FilterState filter;
  SummaryMeta meta;

  const MogNode* find_node(int id) const;
};

// Components of each interval's preimage; ids follow interval order, then
// smallest member.
std::vector<MogNode> pullback(const WeightedGraph& g, const LensField& field, const Cover& cover,
                              kernels::Exec exec = kernels::Exec::parallel);

// One edge per pair of nodes with intersecting members, sorted by
// (source, target). Throws std::logic_error if two nodes from the same
// interval intersect.
MogSummary nerve(std::vector<MogNode> nodes);

// Drops nodes smaller than min_size (and their edges), then optionally keeps
// only the largest connected component of the summary (ties: smallest id).
MogSummary filter_summary(const MogSummary& s, std::size_t min_size, bool largest_only);

struct MogSpec {
  LensKind lens = LensKind::laplacian_l2;
  LensParams lens_params;
  Cover cover = uniform_cover(5, 0.1);
  FilterState filter;
};

struct MogResult {
  // Present when the lens required connectivity and the input was
  // disconnected; summary members then index this graph.
  std::optional<WeightedGraph> restricted_graph;
  LensField lens;
  MogSummary summary;

  const WeightedGraph& graph(const WeightedGraph& input) const {
    return restricted_graph ? *restricted_graph : input;
  }
};

// lens -> pullback -> nerve -> filter. Errors are rethrown tagged with the
// failing stage ("lens", "cover", "pullback", "nerve", "filter").
MogResult compute_mog(const WeightedGraph& g, const MogSpec& spec);

// Same pipeline with a precomputed lens on `g`.
MogSummary compute_mog(const WeightedGraph& g, const LensField& field, const Cover& cover,
                       FilterState filter = {});

// Summary as a weighted graph: labels are node ids, weights |C_u ∩ C_v|.
WeightedGraph summary_graph(const MogSummary& s);

}  // namespace mog
