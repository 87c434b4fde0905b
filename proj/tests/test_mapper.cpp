#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "mog/error.hpp"
#include "mog/generators.hpp"
#include "mog/mapper.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace mog;
using fixtures::edges;
using fixtures::gen;

namespace {

LensField lens_from(std::vector<double> normalized) {
  LensField f;
  f.kind = LensKind::index;
  f.raw = normalized;
  f.normalized = std::move(normalized);
  return f;
}

MogNode node(int id, int interval, NodeSet members) {
  return MogNode{id, interval, std::move(members), 0.0};
}

std::set<std::string> labels_of(const WeightedGraph& g, const NodeSet& s) {
  std::set<std::string> out;
  for (auto v : s) out.insert(g.label(v));
  return out;
}

std::size_t summary_components(const MogSummary& s) {
  return connected_components(summary_graph(s)).size();
}

}  // namespace

TEST_CASE("pullback on P4") {
  const auto p4 = edges("a b\nb c\nc d");
  const auto f = lens_from({0, 1.0 / 3, 2.0 / 3, 1});
  SUBCASE("eps=0.1") {
    const auto nodes = pullback(p4, f, uniform_cover(2, 0.1));
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].members == NodeSet{0, 1});
    CHECK(nodes[1].members == NodeSet{2, 3});
    CHECK(nodes[0].mean_lens == doctest::Approx(1.0 / 6));
    CHECK(nerve(nodes).edges.empty());
  }
  SUBCASE("eps=0.2") {
    const auto nodes = pullback(p4, f, uniform_cover(2, 0.2));
    REQUIRE(nodes.size() == 2);
    CHECK(nodes[0].members == NodeSet{0, 1, 2});
    CHECK(nodes[1].members == NodeSet{1, 2, 3});
    const auto s = nerve(nodes);
    REQUIRE(s.edges.size() == 1);
    CHECK(s.edges[0].intersection == NodeSet{1, 2});
    CHECK(s.edges[0].weight() == 2);
  }
}

TEST_CASE("pullback splits disconnected preimages") {
  const auto g = edges("a b\nb c\nc a\nx y\ny z\nz x");
  const auto nodes = pullback(g, lens_from(std::vector<double>(6, 0.5)), uniform_cover(1, 0.0));
  REQUIRE(nodes.size() == 2);
  CHECK(nodes[0].id == 0);
  CHECK(nodes[1].id == 1);
  CHECK(nodes[0].members == NodeSet{0, 1, 2});
  CHECK(nodes[1].members == NodeSet{3, 4, 5});
}

TEST_CASE("nerve examples") {
  SUBCASE("disjoint") {
    CHECK(nerve({node(0, 0, {0, 1}), node(1, 1, {2, 3})}).edges.empty());
  }
  SUBCASE("three pairwise-overlapping nodes give a triangle") {
    const auto s = nerve({node(0, 0, {0, 1, 2}), node(1, 1, {1, 2, 3}), node(2, 2, {2, 3, 4})});
    REQUIRE(s.edges.size() == 3);
    CHECK(s.edges[0].source == 0);
    CHECK(s.edges[0].target == 1);
    CHECK(s.edges[1].target == 2);
    CHECK(s.edges[2].source == 1);
    CHECK(s.edges[1].intersection == NodeSet{2});
  }
  SUBCASE("same-interval intersection is an invariant violation") {
    CHECK_THROWS_AS(nerve({node(0, 0, {0, 1}), node(1, 0, {1, 2})}), std::logic_error);
  }
}

TEST_CASE("filter examples") {
  auto s = nerve({node(0, 0, {0, 1, 2, 3, 4}), node(1, 1, {9})});
  SUBCASE("min size") {
    const auto f = filter_summary(s, 2, false);
    REQUIRE(f.nodes.size() == 1);
    CHECK(f.nodes[0].id == 0);
    CHECK(f.filter.min_size == 2);
  }
  SUBCASE("identity") {
    const auto f = filter_summary(s, 0, false);
    CHECK(f.nodes.size() == 2);
  }
  SUBCASE("largest component") {
    auto t = nerve({node(0, 0, {0, 1}), node(1, 1, {1, 2}), node(2, 2, {2, 3}), node(3, 0, {10, 11}),
                    node(4, 1, {11, 12})});
    REQUIRE(summary_components(t) == 2);
    const auto f = filter_summary(t, 0, true);
    REQUIRE(f.nodes.size() == 3);
    CHECK(f.nodes[2].id == 2);
    CHECK(f.edges.size() == 2);
    CHECK(f.filter.largest_only);
  }
  SUBCASE("tie goes to the component holding the smallest id") {
    auto t = nerve({node(0, 0, {5, 6}), node(1, 1, {6, 7}), node(2, 0, {0, 1}), node(3, 1, {1, 2})});
    const auto f = filter_summary(t, 0, true);
    REQUIRE(f.nodes.size() == 2);
    CHECK(f.nodes[0].id == 0);
  }
  SUBCASE("everything filtered is legal") {
    CHECK(filter_summary(s, 100, true).nodes.empty());
  }
}

TEST_CASE("compute_mog with a single interval") {
  const std::vector<WeightedGraph> graphs{gen(GeneratorKind::grid, {}),
                                          gen(GeneratorKind::lollipop, {}),
                                          fixtures::random_connected(50, 40, 2, true)};
  for (const auto& g : graphs) {
    for (auto kind : {LensKind::agd, LensKind::density, LensKind::laplacian_l2,
                      LensKind::laplacian_l3, LensKind::pagerank_log}) {
      MogSpec spec;
      spec.lens = kind;
      spec.cover = uniform_cover(1, 0.0);
      const auto r = compute_mog(g, spec);
      REQUIRE(r.summary.nodes.size() == 1);
      CHECK(r.summary.nodes[0].size() == g.node_count());
      CHECK(r.summary.edges.empty());
    }
  }
}

TEST_CASE("torus summary keeps a cycle") {
  const auto g = gen(GeneratorKind::torus_mesh, {{"rows", 16}, {"cols", 16}});
  MogSpec spec;
  spec.lens = LensKind::laplacian_l2;
  spec.cover = uniform_cover(3, 0.3);
  const auto s = compute_mog(g, spec).summary;
  const auto cycle_rank = static_cast<long>(s.edges.size()) - static_cast<long>(s.nodes.size()) +
                          static_cast<long>(summary_components(s));
  CHECK(cycle_rank >= 1);
}

TEST_CASE("barbell splits along the Fiedler sign") {
  const auto g = gen(GeneratorKind::barbell, {{"clique", 10}, {"path", 0}});
  MogSpec spec;
  spec.lens = LensKind::laplacian_l2;
  spec.cover = uniform_cover(2, 0.01);
  const auto r = compute_mog(g, spec);
  REQUIRE(r.summary.nodes.size() == 2);
  const auto& l2 = r.lens.raw;
  std::vector<NodeIndex> pos, neg;
  for (NodeIndex v = 0; v < g.node_count(); ++v) (l2[v] > 0 ? pos : neg).push_back(v);
  const std::set<std::vector<NodeIndex>> sign_partition{pos, neg};
  const std::set<std::vector<NodeIndex>> got{r.summary.nodes[0].members.indices(),
                                             r.summary.nodes[1].members.indices()};
  CHECK(got == sign_partition);
  CHECK(set_intersection(r.summary.nodes[0].members, r.summary.nodes[1].members).empty());
}

TEST_CASE("disconnected input is restricted for connectivity lenses") {
  const auto g = edges("a b\nb c\nc a\nc d\nx y");
  MogSpec spec;
  spec.lens = LensKind::agd;
  spec.cover = uniform_cover(2, 0.1);
  const auto r = compute_mog(g, spec);
  REQUIRE(r.restricted_graph);
  CHECK(r.restricted_graph->node_count() == 4);
  CHECK(r.summary.meta.restricted_to_largest_component);
  CHECK(r.summary.meta.graph_nodes == 6);
  CHECK(r.summary.meta.graph_edges == 5);

  spec.lens = LensKind::index;
  const auto q = compute_mog(g, spec);
  CHECK_FALSE(q.restricted_graph);
}

TEST_CASE("stage errors are tagged") {
  const auto g = edges("a b\nc");
  MogSpec spec;
  spec.lens = LensKind::pagerank_log;
  try {
    compute_mog(g, spec);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.stage() == "lens");
  }
}

TEST_CASE("pipeline matches the naive reference") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 10 + rng() % 190;
    WeightedGraph g = fixtures::random_connected(n, rng() % (2 * n), rng(), true);
    if (trial % 3 == 0) {
      // Drop a random subset of nodes so the graph and its preimages fragment.
      std::vector<NodeIndex> keep;
      for (NodeIndex v = 0; v < g.node_count(); ++v)
        if (rng() % 4) keep.push_back(v);
      g = induced_subgraph(g, NodeSet(keep));
    }
    std::vector<double> f(g.node_count());
    std::uniform_real_distribution<double> u(0, 1);
    for (auto& x : f) x = u(rng);
    Cover cover = uniform_cover(1 + static_cast<int>(rng() % 8), 0.3 * u(rng));
    if (trial % 4 == 1) {
      // Manual edits can make any pair of intervals overlap.
      cover = modify_interval(cover, 0, 0.2, 0.95).cover;
    }
    const auto field = lens_from(f);
    const auto s = compute_mog(g, field, cover);

    std::vector<std::set<std::string>> pre(cover.size());
    for (std::size_t i = 0; i < cover.size(); ++i) {
      const auto& iv = cover.intervals()[i];
      for (NodeIndex v = 0; v < g.node_count(); ++v) {
        const double x = f[v];
        const bool open = iv.lo < x && x < iv.hi;
        const bool closed = iv.lo <= x && x <= iv.hi;
        if (open || ((x == 0.0 || x == 1.0) && closed)) pre[i].insert(g.label(v));
      }
    }
    const auto ref = oracle::naive_mapper(g, pre);
    REQUIRE(s.nodes.size() == ref.nodes.size());
    std::set<std::pair<int, std::set<std::string>>> got_nodes, ref_nodes;
    for (const auto& m : s.nodes) got_nodes.insert({m.interval_id, labels_of(g, m.members)});
    for (const auto& m : ref.nodes) ref_nodes.insert({cover.intervals()[m.interval].id, m.members});
    CHECK(got_nodes == ref_nodes);

    std::set<std::set<std::string>> got_edges, ref_edges;
    for (const auto& e : s.edges) {
      const auto* a = s.find_node(e.source);
      const auto* b = s.find_node(e.target);
      CHECK(e.source < e.target);
      CHECK(e.weight() == set_intersection(a->members, b->members).size());
      CHECK(e.weight() >= 1);
      got_edges.insert(labels_of(g, e.intersection));
    }
    for (const auto& e : ref.edges) ref_edges.insert(e.intersection);
    CHECK(s.edges.size() == ref.edges.size());
    CHECK(got_edges == ref_edges);
  }
}

TEST_CASE("union of members equals the assigned nodes") {
  const auto g = fixtures::random_connected(120, 80, 4);
  const auto field = compute_lens(g, LensKind::agd);
  for (int n : {1, 3, 7, 15}) {
    const auto cover = uniform_cover(n, 0.05);
    const auto nodes = pullback(g, field, cover);
    NodeSet all;
    for (const auto& m : nodes) all = set_union(all, m.members);
    NodeSet assigned;
    for (const auto& p : assign_nodes(cover, field.normalized).preimages) assigned = set_union(assigned, p);
    CHECK(all == assigned);
    CHECK(all.size() == g.node_count());
  }
}

TEST_CASE("summaries are permutation-equivariant") {
  const auto g = fixtures::random_connected(90, 60, 12, true);
  std::vector<NodeIndex> perm(g.node_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  const auto h = permute_nodes(g, perm);
  for (auto kind : {LensKind::agd, LensKind::density, LensKind::pagerank_log}) {
    MogSpec spec;
    spec.lens = kind;
    spec.cover = uniform_cover(6, 0.08);
    const auto a = compute_mog(g, spec).summary;
    const auto b = compute_mog(h, spec).summary;
    auto sizes = [](const MogSummary& s) {
      std::multiset<std::size_t> out;
      for (const auto& m : s.nodes) out.insert(m.size());
      return out;
    };
    auto weights = [](const MogSummary& s) {
      std::multiset<std::size_t> out;
      for (const auto& e : s.edges) out.insert(e.weight());
      return out;
    };
    CHECK(sizes(a) == sizes(b));
    CHECK(weights(a) == weights(b));
    // Members map through the permutation node for node.
    std::set<std::set<std::string>> la, lb;
    for (const auto& m : a.nodes) la.insert(labels_of(g, m.members));
    for (const auto& m : b.nodes) lb.insert(labels_of(h, m.members));
    CHECK(la == lb);
  }
}

TEST_CASE("summary graph") {
  const auto s = nerve({node(0, 0, {0, 1, 2}), node(1, 1, {1, 2, 3})});
  const auto sg = summary_graph(s);
  CHECK(sg.node_count() == 2);
  REQUIRE(sg.edge_count() == 1);
  CHECK(sg.edges()[0].weight == 2.0);
  CHECK(sg.label(1) == "1");
}
