#pragma once

#include <span>
#include <vector>

#include "mog/graph.hpp"

// Data-parallel inner loops. Every kernel has an OpenMP version (used by the
// library) and a plain serial reference kept for equivalence tests and the
// benchmark target. Per-node outputs are computed with a fixed summation
// order, so both versions agree bit-for-bit on per-node values.
namespace mog::kernels {

enum class Exec { serial, parallel };

// Number of OpenMP threads used by parallel kernels (1 without OpenMP).
int thread_count();
void set_thread_count(int threads);

// Reduction applied to each Dijkstra distance row.
struct DistanceReduction {
  enum class Op { mean, gaussian } op = Op::mean;
  double delta = 1.0;  // gaussian bandwidth: sum_u exp(-d^2 / delta)
};

// out[s] = reduce(d(s, .)). Rows with unreachable nodes yield +inf (mean)
// or simply omit those terms (gaussian); callers reject disconnected graphs.
std::vector<double> distance_reduce_serial(const WeightedGraph& g, DistanceReduction r);
std::vector<double> distance_reduce_parallel(const WeightedGraph& g, DistanceReduction r);
std::vector<double> distance_reduce(const WeightedGraph& g, DistanceReduction r, Exec exec);

// One undirected PageRank sweep:
//   next[v] = (1-d)/n + d * sum_{u in N(v)} prev[u] * inv_degree[u]
// Returns the L1 change ||next - prev||_1.
double pagerank_sweep_serial(const WeightedGraph& g, std::span<const double> inv_degree,
                             std::span<const double> prev, std::span<double> next, double damping);
double pagerank_sweep_parallel(const WeightedGraph& g, std::span<const double> inv_degree,
                               std::span<const double> prev, std::span<double> next,
                               double damping);

// y = L x with (L x)(v) = sum_{u in N(v)} w_uv (x_v - x_u).
void laplacian_apply_serial(const WeightedGraph& g, std::span<const double> x, std::span<double> y);
void laplacian_apply_parallel(const WeightedGraph& g, std::span<const double> x,
                              std::span<double> y);

// Connected components of the subgraph induced by each preimage, one list per
// preimage, each list ordered by smallest member.
std::vector<std::vector<NodeSet>> preimage_components_serial(const WeightedGraph& g,
                                                             std::span<const NodeSet> preimages);
std::vector<std::vector<NodeSet>> preimage_components_parallel(const WeightedGraph& g,
                                                               std::span<const NodeSet> preimages);

}  // namespace mog::kernels
