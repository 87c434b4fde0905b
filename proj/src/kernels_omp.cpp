#include <cmath>
#include <functional>
#include <queue>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mog/kernels.hpp"

namespace mog::kernels {

namespace {

// Reusable Dijkstra state, one per thread.
class DijkstraWorkspace {
 public:
  explicit DijkstraWorkspace(std::size_t n) : dist_(n, kUnreachable) {}

  const std::vector<double>& run(const WeightedGraph& g, NodeIndex source) {
    std::fill(dist_.begin(), dist_.end(), kUnreachable);
    heap_.clear();
    dist_[source] = 0.0;
    push({0.0, source});
    while (!heap_.empty()) {
      std::pop_heap(heap_.begin(), heap_.end(), std::greater<>{});
      const auto [d, u] = heap_.back();
      heap_.pop_back();
      if (d > dist_[u]) continue;
      for (const auto& nb : g.neighbors(u)) {
        const double nd = d + nb.weight;
        if (nd < dist_[nb.node]) {
          dist_[nb.node] = nd;
          push({nd, nb.node});
        }
      }
    }
    return dist_;
  }

 private:
  using Item = std::pair<double, NodeIndex>;
  void push(Item item) {
    heap_.push_back(item);
    std::push_heap(heap_.begin(), heap_.end(), std::greater<>{});
  }

  std::vector<double> dist_;
  std::vector<Item> heap_;
};

constexpr std::size_t kSumBlock = 4096;

}  // namespace

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::vector<double> distance_reduce_parallel(const WeightedGraph& g, DistanceReduction r) {
  const auto n = static_cast<std::ptrdiff_t>(g.node_count());
  std::vector<double> out(g.node_count(), 0.0);
#pragma omp parallel
  {
    DijkstraWorkspace ws(g.node_count());
#pragma omp for schedule(dynamic, 16)
    for (std::ptrdiff_t s = 0; s < n; ++s) {
      const auto& dist = ws.run(g, static_cast<NodeIndex>(s));
      double acc = 0.0;
      if (r.op == DistanceReduction::Op::mean) {
        for (double d : dist) acc += d;
        acc /= static_cast<double>(n);
      } else {
        for (double d : dist) {
          if (d != kUnreachable) acc += std::exp(-(d * d) / r.delta);
        }
      }
      out[static_cast<std::size_t>(s)] = acc;
    }
  }
  return out;
}

std::vector<double> distance_reduce(const WeightedGraph& g, DistanceReduction r, Exec exec) {
  return exec == Exec::serial ? distance_reduce_serial(g, r) : distance_reduce_parallel(g, r);
}

double pagerank_sweep_parallel(const WeightedGraph& g, std::span<const double> inv_degree,
                               std::span<const double> prev, std::span<double> next,
                               double damping) {
  const std::size_t n = g.node_count();
  const double teleport = (1.0 - damping) / static_cast<double>(n);
  const std::size_t blocks = (n + kSumBlock - 1) / kSumBlock;
  // Block partial sums keep the residual independent of the thread count.
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kSumBlock;
    const std::size_t hi = std::min(n, lo + kSumBlock);
    double change = 0.0;
    for (std::size_t v = lo; v < hi; ++v) {
      double acc = 0.0;
      for (const auto& nb : g.neighbors(static_cast<NodeIndex>(v))) {
        acc += prev[nb.node] * inv_degree[nb.node];
      }
      next[v] = teleport + damping * acc;
      change += std::abs(next[v] - prev[v]);
    }
    partial[static_cast<std::size_t>(b)] = change;
  }
  double change = 0.0;
  for (double p : partial) change += p;
  return change;
}

void laplacian_apply_parallel(const WeightedGraph& g, std::span<const double> x,
                              std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(g.node_count());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t v = 0; v < n; ++v) {
    double acc = 0.0;
    for (const auto& nb : g.neighbors(static_cast<NodeIndex>(v))) {
      acc += nb.weight * (x[static_cast<std::size_t>(v)] - x[nb.node]);
    }
    y[static_cast<std::size_t>(v)] = acc;
  }
}

std::vector<std::vector<NodeSet>> preimage_components_parallel(
    const WeightedGraph& g, std::span<const NodeSet> preimages) {
  std::vector<std::vector<NodeSet>> out(preimages.size());
  const auto count = static_cast<std::ptrdiff_t>(preimages.size());
#pragma omp parallel
  {
    std::vector<char> mask(g.node_count(), 0);
    std::vector<char> seen(g.node_count(), 0);
    std::vector<NodeIndex> queue;
#pragma omp for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const NodeSet& pre = preimages[static_cast<std::size_t>(i)];
      for (NodeIndex v : pre) mask[v] = 1;
      auto& comps = out[static_cast<std::size_t>(i)];
      for (NodeIndex s : pre) {
        if (seen[s]) continue;
        seen[s] = 1;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
          for (const auto& nb : g.neighbors(queue[head])) {
            if (mask[nb.node] && !seen[nb.node]) {
              seen[nb.node] = 1;
              queue.push_back(nb.node);
            }
          }
        }
        std::sort(queue.begin(), queue.end());
        comps.push_back(NodeSet::from_sorted(queue));
      }
      for (NodeIndex v : pre) {
        mask[v] = 0;
        seen[v] = 0;
      }
    }
  }
  return out;
}

}  // namespace mog::kernels
