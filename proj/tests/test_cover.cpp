#include <doctest.h>

#include <random>

#include "mog/cover.hpp"
#include "mog/error.hpp"

using namespace mog;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::spec;
}

}  // namespace

TEST_CASE("uniform cover examples") {
  const auto one = uniform_cover(1, 0.0);
  REQUIRE(one.size() == 1);
  CHECK(one.intervals()[0] == Interval{0, 0.0, 1.0});

  const auto two = uniform_cover(2, 0.1);
  REQUIRE(two.size() == 2);
  CHECK(two.intervals()[0].lo == doctest::Approx(-0.1));
  CHECK(two.intervals()[0].hi == doctest::Approx(0.6));
  CHECK(two.intervals()[1].lo == doctest::Approx(0.4));
  CHECK(two.intervals()[1].hi == doctest::Approx(1.1));

  const auto four = uniform_cover(4, 0.1);
  const double expected[4][2] = {{-0.1, 0.35}, {0.15, 0.6}, {0.4, 0.85}, {0.65, 1.1}};
  for (int i = 0; i < 4; ++i) {
    CHECK(four.intervals()[i].id == i);
    CHECK(four.intervals()[i].lo == doctest::Approx(expected[i][0]).epsilon(1e-15));
    CHECK(four.intervals()[i].hi == doctest::Approx(expected[i][1]).epsilon(1e-15));
  }
  CHECK(four.provenance() == CoverProvenance::uniform);
  CHECK(four.resolution() == 4);
  CHECK(four.overlap() == 0.1);
}

TEST_CASE("uniform cover parameter errors") {
  CHECK(kind_of([] { uniform_cover(0, 0.1); }) == ErrorKind::parameter);
  CHECK(kind_of([] { uniform_cover(3, -0.01); }) == ErrorKind::parameter);
  CHECK(kind_of([] { uniform_cover(3, 1.0); }) == ErrorKind::parameter);
  CHECK_NOTHROW(uniform_cover(3, 0.4));
}

TEST_CASE("uniform cover lengths and overlaps") {
  for (int n : {1, 2, 3, 5, 10, 37}) {
    for (double eps : {0.0, 0.01, 0.1, 0.4}) {
      const auto c = uniform_cover(n, eps);
      REQUIRE(c.size() == std::size_t(n));
      for (int i = 0; i < n; ++i) {
        const auto& iv = c.intervals()[i];
        CHECK(iv.hi - iv.lo == doctest::Approx(1.0 / n + 2 * eps).epsilon(1e-12));
        if (i + 1 < n) {
          CHECK(iv.hi - c.intervals()[i + 1].lo == doctest::Approx(2 * eps).epsilon(1e-12));
          CHECK(iv.midpoint() < c.intervals()[i + 1].midpoint());
        }
      }
      CHECK(coverage(c).total());
    }
  }
}

TEST_CASE("modify interval examples") {
  const auto base = uniform_cover(2, 0.1);
  SUBCASE("shift") {
    const auto e = modify_interval(base, 1, 0.5, 1.2);
    CHECK(e.cover.find(1) == Interval{1, 0.5, 1.2});
    CHECK(e.cover.find(0) == base.find(0));
    CHECK(e.cover.provenance() == CoverProvenance::manual);
  }
  SUBCASE("shrink keeps overlap") {
    const auto e = modify_interval(base, 0, 0.0, 0.5);
    CHECK(e.coverage.total());
    CHECK(e.cover.find(1) == base.find(1));
  }
  SUBCASE("shrink opens a gap") {
    const auto e = modify_interval(base, 0, 0.0, 0.3);
    REQUIRE(e.coverage.gaps.size() == 1);
    CHECK(e.coverage.gaps[0].first == doctest::Approx(0.3));
    CHECK(e.coverage.gaps[0].second == doctest::Approx(0.4));
  }
  SUBCASE("errors") {
    CHECK(kind_of([&] { modify_interval(base, 9, 0.0, 0.3); }) == ErrorKind::lookup);
    CHECK(kind_of([&] { modify_interval(base, 0, 0.3, 0.3); }) == ErrorKind::validation);
    CHECK(kind_of([&] { modify_interval(base, 0, 0.5, 0.2); }) == ErrorKind::validation);
  }
  SUBCASE("reordering keeps ids") {
    const auto e = modify_interval(base, 0, 0.8, 1.3);
    CHECK(e.cover.intervals()[0].id == 1);
    CHECK(e.cover.intervals()[1].id == 0);
  }
}

TEST_CASE("coverage gaps at the ends of the range") {
  const Cover c({{0, 0.2, 0.5}, {1, 0.4, 0.9}}, CoverProvenance::manual);
  const auto cov = coverage(c);
  REQUIRE(cov.gaps.size() == 2);
  CHECK(cov.gaps[0] == std::pair(0.0, 0.2));
  CHECK(cov.gaps[1] == std::pair(0.9, 1.0));
}

TEST_CASE("assign nodes examples") {
  const std::vector<double> f{0, 1.0 / 3, 2.0 / 3, 1};
  SUBCASE("n=2 eps=0.1") {
    const auto a = assign_nodes(uniform_cover(2, 0.1), f);
    CHECK(a.preimages[0] == NodeSet{0, 1});
    CHECK(a.preimages[1] == NodeSet{2, 3});
    CHECK(a.uncovered.empty());
  }
  SUBCASE("n=2 eps=0.2") {
    const auto a = assign_nodes(uniform_cover(2, 0.2), f);
    CHECK(a.preimages[0] == NodeSet{0, 1, 2});
    CHECK(a.preimages[1] == NodeSet{1, 2, 3});
  }
  SUBCASE("single interval (0,1) with the endpoint rule") {
    const auto a = assign_nodes(uniform_cover(1, 0.0), f);
    CHECK(a.preimages[0] == NodeSet{0, 1, 2, 3});
  }
  SUBCASE("interior breakpoint with zero overlap") {
    const auto a = assign_nodes(uniform_cover(2, 0.0), std::vector<double>{0, 0.5, 1});
    CHECK(a.preimages[0] == NodeSet{0, 1});
    CHECK(a.preimages[1] == NodeSet{1, 2});
  }
  SUBCASE("values in a gap are reported") {
    const auto e = modify_interval(uniform_cover(2, 0.1), 0, 0.0, 0.3);
    const auto a = assign_nodes(e.cover, std::vector<double>{0.1, 0.35, 0.9});
    CHECK(a.uncovered == NodeSet{1});
    CHECK(a.preimages[0] == NodeSet{0});
    CHECK(a.preimages[1] == NodeSet{2});
  }
}

TEST_CASE("every node is covered by a uniform cover") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  for (int n = 1; n <= 12; ++n) {
    for (double eps : {0.0, 0.02, 0.25}) {
      std::vector<double> f(300);
      for (auto& x : f) x = u(rng);
      f[0] = 0;
      f[1] = 1;
      // Exact breakpoints are the awkward case when eps is zero.
      for (int i = 0; i <= n && i + 2 < 300; ++i) f[i + 2] = static_cast<double>(i) / n;
      const auto a = assign_nodes(uniform_cover(n, eps), f);
      CHECK(a.uncovered.empty());
      NodeSet all;
      for (const auto& p : a.preimages) all = set_union(all, p);
      CHECK(all.size() == f.size());
    }
  }
}

TEST_CASE("enlarging an interval never removes a node") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 1);
  std::vector<double> f(400);
  for (auto& x : f) x = u(rng);
  f[0] = 0;
  f[1] = 1;
  for (int trial = 0; trial < 100; ++trial) {
    const auto base = uniform_cover(1 + static_cast<int>(rng() % 6), 0.05 * (rng() % 4));
    const int id = static_cast<int>(rng() % base.size());
    const auto& iv = base.find(id);
    const auto grown = modify_interval(base, id, iv.lo - 0.1 * u(rng), iv.hi + 0.1 * u(rng)).cover;
    const auto before = assign_nodes(base, f);
    const auto after = assign_nodes(grown, f);
    auto slot = [](const Cover& c, int want) {
      for (std::size_t i = 0; i < c.size(); ++i)
        if (c.intervals()[i].id == want) return i;
      return c.size();
    };
    const auto& p0 = before.preimages[slot(base, id)];
    const auto& p1 = after.preimages[slot(grown, id)];
    CHECK(set_difference(p0, p1).empty());
  }
}

TEST_CASE("cover construction validation") {
  CHECK(kind_of([] { Cover({{0, 0.5, 0.5}}, CoverProvenance::manual); }) == ErrorKind::validation);
  CHECK(kind_of([] { Cover({{0, 0.1, 0.5}, {0, 0.2, 0.6}}, CoverProvenance::manual); }) ==
        ErrorKind::validation);
  CHECK(kind_of([] { Cover({{0, NAN, 0.5}}, CoverProvenance::manual); }) == ErrorKind::validation);
  const Cover c({{4, 0.5, 0.9}, {2, 0.0, 0.3}, {3, 0.0, 0.3}}, CoverProvenance::manual);
  CHECK(c.intervals()[0].id == 2);
  CHECK(c.intervals()[1].id == 3);
  CHECK(c.intervals()[2].id == 4);
}
