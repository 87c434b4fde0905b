#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>

#include "mog/generators.hpp"
#include "mog/graph.hpp"
#include "mog/io.hpp"

namespace fixtures {

inline mog::WeightedGraph edges(const std::string& text) {
  return mog::parse_graph(text, mog::GraphFormat::edge_list);
}

inline mog::WeightedGraph gen(mog::GeneratorKind kind, std::map<std::string, double> params,
                              std::uint64_t seed = 0) {
  return mog::generate({kind, std::move(params), seed});
}

// Connected random graph: a random spanning tree plus extra random edges,
// random positive weights when `weighted`.
inline mog::WeightedGraph random_connected(std::size_t n, std::size_t extra, std::uint64_t seed,
                                           bool weighted = false) {
  std::mt19937_64 rng(seed);
  mog::GraphBuilder b;
  for (std::size_t i = 0; i < n; ++i) b.add_node("v" + std::to_string(i));
  std::set<std::pair<std::size_t, std::size_t>> used;
  auto weight = [&] {
    return weighted ? 0.25 + static_cast<double>(rng() % 1000) / 250.0 : 1.0;
  };
  for (std::size_t i = 1; i < n; ++i) {
    const std::size_t j = rng() % i;
    used.insert({j, i});
    b.add_edge(static_cast<mog::NodeIndex>(j), static_cast<mog::NodeIndex>(i), weight());
  }
  for (std::size_t k = 0; k < extra && n > 2; ++k) {
    std::size_t a = rng() % n, c = rng() % n;
    if (a == c) continue;
    if (a > c) std::swap(a, c);
    if (!used.insert({a, c}).second) continue;
    b.add_edge(static_cast<mog::NodeIndex>(a), static_cast<mog::NodeIndex>(c), weight());
  }
  return std::move(b).build();
}

}  // namespace fixtures
