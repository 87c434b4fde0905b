#include "mog/generators.hpp"

#include <cmath>
#include <random>
#include <set>

#include "mog/error.hpp"

namespace mog {

namespace {

struct KindInfo {
  GeneratorKind kind;
  const char* name;
  std::map<std::string, double> defaults;
};

const std::vector<KindInfo>& kinds() {
  static const std::vector<KindInfo> table = {
      {GeneratorKind::path, "path", {{"n", 10}}},
      {GeneratorKind::cycle, "cycle", {{"n", 10}}},
      {GeneratorKind::grid, "grid", {{"rows", 4}, {"cols", 4}}},
      {GeneratorKind::balanced_tree, "balanced_tree", {{"branching", 2}, {"height", 3}}},
      {GeneratorKind::connected_caveman, "connected_caveman", {{"cliques", 6}, {"size", 5}}},
      {GeneratorKind::torus_mesh, "torus_mesh", {{"rows", 16}, {"cols", 16}}},
      {GeneratorKind::lollipop, "lollipop", {{"clique", 10}, {"path", 10}}},
      {GeneratorKind::barbell, "barbell", {{"clique", 10}, {"path", 0}}},
      {GeneratorKind::random_geometric, "random_geometric", {{"n", 1000}, {"radius", 0.2}}},
      {GeneratorKind::complete_bipartite, "complete_bipartite", {{"left", 3}, {"right", 3}}},
  };
  return table;
}

const KindInfo& info(GeneratorKind kind) {
  for (const auto& k : kinds()) {
    if (k.kind == kind) return k;
  }
  throw Error(ErrorKind::spec, "unknown generator kind");
}

std::size_t count_param(const GeneratorSpec& spec, const std::string& key, std::size_t min) {
  const double value = spec.params.at(key);
  if (!(value >= static_cast<double>(min)) || value != std::floor(value) || value > 1e9) {
    throw Error(ErrorKind::spec, std::string(to_string(spec.kind)) + ": '" + key +
                                     "' must be an integer >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(value);
}

class Labelled {
 public:
  explicit Labelled(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) builder_.add_node(std::to_string(i));
  }
  void edge(std::size_t u, std::size_t v) {
    builder_.add_edge(static_cast<NodeIndex>(u), static_cast<NodeIndex>(v));
  }
  WeightedGraph build() && { return std::move(builder_).build(); }

 private:
  GraphBuilder builder_;
};

void add_clique(Labelled& g, std::size_t first, std::size_t size) {
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i + 1; j < size; ++j) g.edge(first + i, first + j);
  }
}

WeightedGraph make_grid(std::size_t rows, std::size_t cols, bool wrap) {
  Labelled g(rows * cols);
  auto id = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) g.edge(id(r, c), id(r, c + 1));
      else if (wrap) g.edge(id(r, c), id(r, 0));
      if (r + 1 < rows) g.edge(id(r, c), id(r + 1, c));
      else if (wrap) g.edge(id(r, c), id(0, c));
    }
  }
  return std::move(g).build();
}

WeightedGraph make_random_geometric(std::size_t n, double radius, std::uint64_t seed) {
  const auto points = random_geometric_points(n, seed);
  Labelled g(n);
  // Bucket into cells of side >= radius; only neighbouring cells can hold
  // points within range. Edges are emitted in (u, v>u) lexicographic order.
  const std::size_t cells = std::max<std::size_t>(
      1, std::min<std::size_t>(static_cast<std::size_t>(1.0 / radius), 4096));
  auto cell_of = [cells](double x) {
    return std::min(cells - 1, static_cast<std::size_t>(x * static_cast<double>(cells)));
  };
  std::vector<std::vector<std::size_t>> bucket(cells * cells);
  for (std::size_t i = 0; i < n; ++i) {
    bucket[cell_of(points[i].first) * cells + cell_of(points[i].second)].push_back(i);
  }
  const double r2 = radius * radius;
  std::vector<std::size_t> near;
  for (std::size_t u = 0; u < n; ++u) {
    near.clear();
    const std::size_t cx = cell_of(points[u].first);
    const std::size_t cy = cell_of(points[u].second);
    for (std::size_t x = cx == 0 ? 0 : cx - 1; x <= std::min(cells - 1, cx + 1); ++x) {
      for (std::size_t y = cy == 0 ? 0 : cy - 1; y <= std::min(cells - 1, cy + 1); ++y) {
        for (std::size_t v : bucket[x * cells + y]) {
          if (v <= u) continue;
          const double dx = points[u].first - points[v].first;
          const double dy = points[u].second - points[v].second;
          if (dx * dx + dy * dy <= r2) near.push_back(v);
        }
      }
    }
    std::sort(near.begin(), near.end());
    for (std::size_t v : near) g.edge(u, v);
  }
  return std::move(g).build();
}

}  // namespace

GeneratorKind parse_generator_kind(std::string_view name) {
  for (const auto& k : kinds()) {
    if (name == k.name) return k.kind;
  }
  throw Error(ErrorKind::spec, "unknown generator kind '" + std::string(name) + "'");
}

const char* to_string(GeneratorKind kind) noexcept {
  for (const auto& k : kinds()) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::map<std::string, double> parse_generator_params(std::string_view text) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw Error(ErrorKind::spec, "expected key=value, got '" + std::string(item) + "'");
    }
    const std::string value(item.substr(eq + 1));
    char* tail = nullptr;
    const double parsed = std::strtod(value.c_str(), &tail);
    if (value.empty() || *tail != '\0') {
      throw Error(ErrorKind::spec, "invalid number '" + value + "'");
    }
    out[std::string(item.substr(0, eq))] = parsed;
  }
  return out;
}

GeneratorSpec complete_spec(GeneratorSpec spec) {
  const auto& defaults = info(spec.kind).defaults;
  for (const auto& [key, value] : spec.params) {
    if (!defaults.count(key)) {
      throw Error(ErrorKind::spec, std::string(to_string(spec.kind)) + ": unknown parameter '" +
                                       key + "'");
    }
  }
  for (const auto& [key, value] : defaults) spec.params.try_emplace(key, value);
  return spec;
}

std::vector<std::pair<double, double>> random_geometric_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<std::pair<double, double>> points(n);
  for (auto& p : points) {
    p.first = unit();
    p.second = unit();
  }
  return points;
}

WeightedGraph generate(const GeneratorSpec& raw) {
  const GeneratorSpec spec = complete_spec(raw);
  switch (spec.kind) {
    case GeneratorKind::path: {
      const auto n = count_param(spec, "n", 1);
      Labelled g(n);
      for (std::size_t i = 0; i + 1 < n; ++i) g.edge(i, i + 1);
      return std::move(g).build();
    }
    case GeneratorKind::cycle: {
      const auto n = count_param(spec, "n", 3);
      Labelled g(n);
      for (std::size_t i = 0; i < n; ++i) g.edge(i, (i + 1) % n);
      return std::move(g).build();
    }
    case GeneratorKind::grid:
      return make_grid(count_param(spec, "rows", 1), count_param(spec, "cols", 1), false);
    case GeneratorKind::torus_mesh:
      // Below 3 the wraparound edge would duplicate an existing one.
      return make_grid(count_param(spec, "rows", 3), count_param(spec, "cols", 3), true);
    case GeneratorKind::balanced_tree: {
      const auto b = count_param(spec, "branching", 1);
      const auto h = count_param(spec, "height", 0);
      std::size_t n = 1;
      std::size_t level = 1;
      for (std::size_t i = 0; i < h; ++i) {
        level *= b;
        n += level;
        if (n > 50'000'000) throw Error(ErrorKind::spec, "balanced_tree too large");
      }
      Labelled g(n);
      // Breadth-first numbering: children of i are b*i+1 .. b*i+b.
      for (std::size_t child = 1; child < n; ++child) g.edge((child - 1) / b, child);
      return std::move(g).build();
    }
    case GeneratorKind::connected_caveman: {
      const auto k = count_param(spec, "cliques", 2);
      const auto m = count_param(spec, "size", 3);
      Labelled g(k * m);
      // Cliques of size m; in each clique the edge (first, first+1) is
      // rewired to the first node of the next clique, ring-fashion.
      for (std::size_t c = 0; c < k; ++c) {
        const std::size_t first = c * m;
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = i + 1; j < m; ++j) {
            if (i == 0 && j == 1) continue;
            g.edge(first + i, first + j);
          }
        }
        g.edge(first, ((c + 1) % k) * m + 1);
      }
      return std::move(g).build();
    }
    case GeneratorKind::lollipop: {
      const auto m = count_param(spec, "clique", 2);
      const auto p = count_param(spec, "path", 0);
      Labelled g(m + p);
      add_clique(g, 0, m);
      for (std::size_t i = 0; i < p; ++i) g.edge(m - 1 + i, m + i);
      return std::move(g).build();
    }
    case GeneratorKind::barbell: {
      const auto m = count_param(spec, "clique", 2);
      const auto p = count_param(spec, "path", 0);
      Labelled g(2 * m + p);
      add_clique(g, 0, m);
      for (std::size_t i = 0; i <= p; ++i) g.edge(m - 1 + i, m + i);
      add_clique(g, m + p, m);
      return std::move(g).build();
    }
    case GeneratorKind::random_geometric: {
      const auto n = count_param(spec, "n", 1);
      const double radius = spec.params.at("radius");
      if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw Error(ErrorKind::spec, "random_geometric: radius must be > 0");
      }
      return make_random_geometric(n, radius, spec.seed);
    }
    case GeneratorKind::complete_bipartite: {
      const auto a = count_param(spec, "left", 1);
      const auto b = count_param(spec, "right", 1);
      Labelled g(a + b);
      for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = 0; j < b; ++j) g.edge(i, a + j);
      }
      return std::move(g).build();
    }
  }
  throw Error(ErrorKind::spec, "unhandled generator kind");
}

}  // namespace mog
