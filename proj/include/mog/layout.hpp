#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mog/graph.hpp"
#include "mog/io.hpp"

namespace mog {

struct LayoutParams {
  std::uint64_t seed = 1;
  std::size_t iterations = 200;
  double theta = 0.5;                // Barnes-Hut opening criterion, in (0, 1]
  double area = 0.0;                 // 0 -> |V|, so the ideal length is 1
  double initial_temperature = 0.0;  // 0 -> sqrt(area) / 10
  bool barnes_hut = true;            // false -> exact O(n^2) repulsion
};

struct LayoutResult {
  std::vector<Point2> positions;
  std::uint64_t seed = 0;
  std::size_t iterations = 0;
};

// k = sqrt(area / n).
double ideal_length(std::size_t node_count, double area);

// Seeded uniform positions in [-side/2, side/2]^2.
std::vector<Point2> initial_positions(std::size_t n, std::uint64_t seed, double side);

// Fruchterman-Reingold repulsion k^2/d between all pairs.
std::vector<Point2> repulsive_forces_exact(std::span<const Point2> pos, double k);
// Same, with far cells replaced by their centre of mass (quadtree rebuilt per
// call).
std::vector<Point2> repulsive_forces_barnes_hut(std::span<const Point2> pos, double k,
                                                double theta);
// Attraction w * d^2 / k along each edge.
std::vector<Point2> attractive_forces(const WeightedGraph& g, std::span<const Point2> pos,
                                      double k);

// Potential whose negative gradient is the FR force field:
//   sum_edges w d^3 / (3k) - sum_pairs k^2 ln d.
double layout_energy(const WeightedGraph& g, std::span<const Point2> pos, double k);

// Runs `iterations` FR steps with linear cooling to zero, then centres the
// result on the origin. Deterministic for fixed inputs; single-threaded.
LayoutResult layout_fr(const WeightedGraph& g, const LayoutParams& params = {});

}  // namespace mog
