#include <doctest.h>

#include <cmath>

#include "mog/error.hpp"
#include "mog/generators.hpp"
#include "mog/io.hpp"
#include "support/fixtures.hpp"

using namespace mog;
using fixtures::gen;

TEST_CASE("balanced tree (9,5) matches the published size") {
  const auto g = gen(GeneratorKind::balanced_tree, {{"branching", 9}, {"height", 5}});
  CHECK(g.node_count() == 66430);
  CHECK(g.edge_count() == 66429);
  CHECK(is_connected(g));
}

TEST_CASE("balanced tree node count formula") {
  for (int b = 1; b <= 4; ++b) {
    for (int h = 0; h <= 5; ++h) {
      const auto g = gen(GeneratorKind::balanced_tree, {{"branching", b}, {"height", h}});
      const std::size_t expected =
          b == 1 ? static_cast<std::size_t>(h + 1)
                 : static_cast<std::size_t>((std::pow(b, h + 1) - 1) / (b - 1));
      CHECK(g.node_count() == expected);
      CHECK(g.edge_count() == expected - 1);
    }
  }
}

TEST_CASE("cycle") {
  const auto g = gen(GeneratorKind::cycle, {{"n", 4}});
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 4);
  for (NodeIndex v = 0; v < 4; ++v) CHECK(g.degree(v) == 2);
}

TEST_CASE("grid edge count by enumeration") {
  // Oracle: count horizontally and vertically adjacent lattice pairs.
  for (std::size_t k = 2; k <= 6; ++k) {
    std::size_t lattice_pairs = 0;
    for (std::size_t a = 0; a < k * k; ++a) {
      for (std::size_t b = a + 1; b < k * k; ++b) {
        const auto ra = a / k, ca = a % k, rb = b / k, cb = b % k;
        const auto manhattan = (ra > rb ? ra - rb : rb - ra) + (ca > cb ? ca - cb : cb - ca);
        if (manhattan == 1) ++lattice_pairs;
      }
    }
    const auto g = gen(GeneratorKind::grid, {{"rows", double(k)}, {"cols", double(k)}});
    CHECK(g.node_count() == k * k);
    CHECK(g.edge_count() == lattice_pairs);
  }
  CHECK(gen(GeneratorKind::grid, {{"rows", 4}, {"cols", 4}}).edge_count() == 24);
}

TEST_CASE("torus mesh is 4-regular and connected") {
  for (auto [r, c] : {std::pair{16, 16}, std::pair{3, 5}, std::pair{4, 7}}) {
    const auto g = gen(GeneratorKind::torus_mesh, {{"rows", r}, {"cols", c}});
    CHECK(is_connected(g));
    CHECK(g.edge_count() == 2 * g.node_count());
    for (NodeIndex v = 0; v < g.node_count(); ++v) CHECK(g.degree(v) == 4);
  }
  CHECK(gen(GeneratorKind::torus_mesh, {}).node_count() == 256);
}

TEST_CASE("connected caveman") {
  for (auto [k, m] : {std::pair{2, 3}, std::pair{5, 4}, std::pair{6, 5}}) {
    const auto g = gen(GeneratorKind::connected_caveman, {{"cliques", k}, {"size", m}});
    CHECK(g.node_count() == std::size_t(k * m));
    CHECK(is_connected(g));
    CHECK(g.edge_count() == std::size_t(k * m * (m - 1) / 2));
  }
}

TEST_CASE("lollipop, barbell, complete bipartite") {
  const auto l = gen(GeneratorKind::lollipop, {{"clique", 5}, {"path", 3}});
  CHECK(l.node_count() == 8);
  CHECK(l.edge_count() == 10 + 3);
  const auto b = gen(GeneratorKind::barbell, {{"clique", 10}, {"path", 0}});
  CHECK(b.node_count() == 20);
  CHECK(b.edge_count() == 45 + 45 + 1);
  CHECK(is_connected(b));
  const auto s = gen(GeneratorKind::complete_bipartite, {{"left", 1}, {"right", 3}});
  CHECK(s.edge_count() == 3);
  CHECK(s.degree(0) == 3);
}

TEST_CASE("random geometric edge count near the analytic expectation") {
  // Oracle: for uniform points in the unit square, P(dist <= r) =
  // pi r^2 - 8 r^3 / 3 + r^4 / 2 (r <= 1), so E|E| = C(n,2) * P.
  const double r = 0.2;
  const double p = M_PI * r * r - 8.0 * r * r * r / 3.0 + r * r * r * r / 2.0;
  const double expected = 1000.0 * 999.0 / 2.0 * p;
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const auto g = gen(GeneratorKind::random_geometric, {{"n", 1000}, {"radius", r}}, seed);
    CHECK(g.node_count() == 1000);
    CHECK(std::abs(static_cast<double>(g.edge_count()) - expected) < 0.03 * expected);
    // Same order of magnitude as the published instance (53,741 edges).
    CHECK(std::abs(static_cast<double>(g.edge_count()) - 53741.0) < 0.05 * 53741.0);
  }
}

TEST_CASE("random geometric matches brute-force pair scan") {
  const auto pts = random_geometric_points(300, 9);
  std::size_t brute = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
      if (dx * dx + dy * dy <= 0.1 * 0.1) ++brute;
    }
  }
  CHECK(gen(GeneratorKind::random_geometric, {{"n", 300}, {"radius", 0.1}}, 9).edge_count() == brute);
}

TEST_CASE("same spec and seed give byte-identical output") {
  const GeneratorSpec spec{GeneratorKind::random_geometric, {{"n", 500}, {"radius", 0.1}}, 42};
  CHECK(serialize_graph(generate(spec), GraphFormat::graph_json) ==
        serialize_graph(generate(spec), GraphFormat::graph_json));
  auto other = spec;
  other.seed = 43;
  CHECK(serialize_graph(generate(spec), GraphFormat::graph_json) !=
        serialize_graph(generate(other), GraphFormat::graph_json));
}

TEST_CASE("invalid specs") {
  CHECK_THROWS_AS(gen(GeneratorKind::cycle, {{"n", 2}}), Error);
  CHECK_THROWS_AS(gen(GeneratorKind::path, {{"n", 0}}), Error);
  CHECK_THROWS_AS(gen(GeneratorKind::path, {{"n", 2.5}}), Error);
  CHECK_THROWS_AS(gen(GeneratorKind::grid, {{"depth", 3}}), Error);
  CHECK_THROWS_AS(gen(GeneratorKind::random_geometric, {{"radius", -1}}), Error);
  CHECK_THROWS_AS(parse_generator_kind("hypercube"), Error);
  CHECK_THROWS_AS(parse_generator_params("n"), Error);
  CHECK(parse_generator_params("rows=4,cols=5") == std::map<std::string, double>{{"cols", 5}, {"rows", 4}});
}
