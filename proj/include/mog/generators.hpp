#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "mog/graph.hpp"

namespace mog {

enum class GeneratorKind {
  path,
  cycle,
  grid,
  balanced_tree,
  connected_caveman,
  torus_mesh,
  lollipop,
  barbell,
  random_geometric,
  complete_bipartite,
};

GeneratorKind parse_generator_kind(std::string_view name);
const char* to_string(GeneratorKind kind) noexcept;

// Parameters by name. Recognized keys per kind:
//   path, cycle:          n
//   grid, torus_mesh:     rows, cols          (torus default 16x16)
//   balanced_tree:        branching, height
//   connected_caveman:    cliques, size
//   lollipop:             clique, path
//   barbell:              clique, path        (path may be 0: bridge edge)
//   random_geometric:     n, radius           (uses seed)
//   complete_bipartite:   left, right
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::path;
  std::map<std::string, double> params;
  std::uint64_t seed = 0;
};

// Parses "key=value,key=value".
std::map<std::string, double> parse_generator_params(std::string_view text);

// Fills in defaults for omitted keys and rejects unknown ones.
GeneratorSpec complete_spec(GeneratorSpec spec);

// Unit-weight graph labelled "0".."n-1". Throws Error{spec} on invalid
// parameters.
WeightedGraph generate(const GeneratorSpec& spec);

// Deterministic per-seed points for random_geometric: x then y per node from a
// std::mt19937_64 stream, each double built from the top 53 bits.
std::vector<std::pair<double, double>> random_geometric_points(std::size_t n, std::uint64_t seed);

}  // namespace mog
