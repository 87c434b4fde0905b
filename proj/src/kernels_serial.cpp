#include <cmath>
#include <functional>
#include <queue>

#include "mog/kernels.hpp"

namespace mog::kernels {

std::vector<double> distance_reduce_serial(const WeightedGraph& g, DistanceReduction r) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n, 0.0);
  for (NodeIndex s = 0; s < n; ++s) {
    const std::vector<double> dist = sssp(g, s);
    double acc = 0.0;
    for (double d : dist) {
      if (r.op == DistanceReduction::Op::mean) {
        acc += d;
      } else if (d != kUnreachable) {
        acc += std::exp(-(d * d) / r.delta);
      }
    }
    out[s] = r.op == DistanceReduction::Op::mean ? acc / static_cast<double>(n) : acc;
  }
  return out;
}

double pagerank_sweep_serial(const WeightedGraph& g, std::span<const double> inv_degree,
                             std::span<const double> prev, std::span<double> next,
                             double damping) {
  const std::size_t n = g.node_count();
  const double teleport = (1.0 - damping) / static_cast<double>(n);
  double change = 0.0;
  for (NodeIndex v = 0; v < n; ++v) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(v)) acc += prev[nb.node] * inv_degree[nb.node];
    next[v] = teleport + damping * acc;
    change += std::abs(next[v] - prev[v]);
  }
  return change;
}

void laplacian_apply_serial(const WeightedGraph& g, std::span<const double> x,
                            std::span<double> y) {
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(v)) acc += nb.weight * (x[v] - x[nb.node]);
    y[v] = acc;
  }
}

std::vector<std::vector<NodeSet>> preimage_components_serial(const WeightedGraph& g,
                                                             std::span<const NodeSet> preimages) {
  std::vector<std::vector<NodeSet>> out;
  out.reserve(preimages.size());
  for (const auto& pre : preimages) out.push_back(connected_components(g, pre));
  return out;
}

}  // namespace mog::kernels
