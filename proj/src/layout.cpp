#include "mog/layout.hpp"

#include <array>
#include <cmath>
#include <random>

#include "mog/error.hpp"

namespace mog {

namespace {

constexpr double kMinDistance = 1e-9;

// Separation vector for coincident points, fixed per (i, j).
Point2 nudge(std::size_t i, std::size_t j) {
  const double angle = 2.399963229728653 * static_cast<double>(i * 31 + j);
  return {kMinDistance * std::cos(angle), kMinDistance * std::sin(angle)};
}

void add_repulsion(Point2& f, double dx, double dy, double k2, double weight, std::size_t i,
                   std::size_t j) {
  double d2 = dx * dx + dy * dy;
  if (d2 < kMinDistance * kMinDistance) {
    const Point2 n = nudge(i, j);
    dx = n.x;
    dy = n.y;
    d2 = kMinDistance * kMinDistance;
  }
  const double s = weight * k2 / d2;
  f.x += dx * s;
  f.y += dy * s;
}

class QuadTree {
 public:
  explicit QuadTree(std::span<const Point2> pos) : pos_(pos) {
    double minx = pos[0].x, maxx = pos[0].x, miny = pos[0].y, maxy = pos[0].y;
    for (const auto& p : pos) {
      minx = std::min(minx, p.x);
      maxx = std::max(maxx, p.x);
      miny = std::min(miny, p.y);
      maxy = std::max(maxy, p.y);
    }
    const double side = std::max({maxx - minx, maxy - miny, 1e-12}) * (1.0 + 1e-9);
    cells_.emplace_back(minx, miny, side);
    for (std::uint32_t i = 0; i < pos.size(); ++i) insert(0, i, 0);
    summarize(0);
  }

  Point2 force_on(std::size_t i, double k2, double theta) const {
    Point2 f;
    accumulate(0, i, k2, theta, f);
    return f;
  }

 private:
  static constexpr int kMaxDepth = 48;

  struct Cell {
    Cell(double x, double y, double s) : x0(x), y0(y), side(s) {}
    double x0, y0, side;
    double cx = 0.0, cy = 0.0;
    double mass = 0.0;
    std::array<std::int32_t, 4> child{-1, -1, -1, -1};
    std::vector<std::uint32_t> bodies;  // leaf contents
    bool leaf = true;
  };

  int quadrant(const Cell& c, const Point2& p) const {
    const double h = c.side / 2;
    return (p.x >= c.x0 + h ? 1 : 0) + (p.y >= c.y0 + h ? 2 : 0);
  }

  void insert(std::size_t cell, std::uint32_t body, int depth) {
    if (cells_[cell].leaf) {
      if (cells_[cell].bodies.empty() || depth >= kMaxDepth) {
        cells_[cell].bodies.push_back(body);
        return;
      }
      // Split, pushing existing bodies down.
      std::vector<std::uint32_t> existing = std::move(cells_[cell].bodies);
      cells_[cell].bodies.clear();
      cells_[cell].leaf = false;
      for (auto b : existing) insert_child(cell, b, depth);
    }
    insert_child(cell, body, depth);
  }

  void insert_child(std::size_t cell, std::uint32_t body, int depth) {
    const int q = quadrant(cells_[cell], pos_[body]);
    if (cells_[cell].child[q] < 0) {
      const Cell& c = cells_[cell];
      const double h = c.side / 2;
      Cell child(c.x0 + ((q & 1) ? h : 0.0), c.y0 + ((q & 2) ? h : 0.0), h);
      cells_.push_back(std::move(child));
      cells_[cell].child[q] = static_cast<std::int32_t>(cells_.size() - 1);
    }
    insert(static_cast<std::size_t>(cells_[cell].child[q]), body, depth + 1);
  }

  void summarize(std::size_t cell) {
    double mx = 0.0, my = 0.0, m = 0.0;
    if (cells_[cell].leaf) {
      for (auto b : cells_[cell].bodies) {
        mx += pos_[b].x;
        my += pos_[b].y;
        m += 1.0;
      }
    } else {
      for (auto ch : cells_[cell].child) {
        if (ch < 0) continue;
        summarize(static_cast<std::size_t>(ch));
        const Cell& c = cells_[static_cast<std::size_t>(ch)];
        mx += c.cx * c.mass;
        my += c.cy * c.mass;
        m += c.mass;
      }
    }
    Cell& c = cells_[cell];
    c.mass = m;
    if (m > 0) {
      c.cx = mx / m;
      c.cy = my / m;
    }
  }

  void accumulate(std::size_t cell, std::size_t i, double k2, double theta, Point2& f) const {
    const Cell& c = cells_[cell];
    if (c.mass == 0.0) return;
    if (c.leaf) {
      for (auto b : c.bodies) {
        if (b == i) continue;
        add_repulsion(f, pos_[i].x - pos_[b].x, pos_[i].y - pos_[b].y, k2, 1.0, i, b);
      }
      return;
    }
    const double dx = pos_[i].x - c.cx;
    const double dy = pos_[i].y - c.cy;
    const double d = std::sqrt(dx * dx + dy * dy);
    const bool inside = pos_[i].x >= c.x0 && pos_[i].x <= c.x0 + c.side &&
                        pos_[i].y >= c.y0 && pos_[i].y <= c.y0 + c.side;
    if (!inside && d > 0.0 && c.side / d < theta) {
      add_repulsion(f, dx, dy, k2, c.mass, i, i);
      return;
    }
    for (auto ch : c.child) {
      if (ch >= 0) accumulate(static_cast<std::size_t>(ch), i, k2, theta, f);
    }
  }

  std::span<const Point2> pos_;
  std::vector<Cell> cells_;
};

}  // namespace

double ideal_length(std::size_t node_count, double area) {
  if (node_count == 0) return 1.0;
  return std::sqrt(area / static_cast<double>(node_count));
}

std::vector<Point2> initial_positions(std::size_t n, std::uint64_t seed, double side) {
  std::mt19937_64 rng(seed);
  auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point2> out(n);
  for (auto& p : out) {
    p.x = (unit() - 0.5) * side;
    p.y = (unit() - 0.5) * side;
  }
  return out;
}

std::vector<Point2> repulsive_forces_exact(std::span<const Point2> pos, double k) {
  const double k2 = k * k;
  std::vector<Point2> f(pos.size());
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = 0; j < pos.size(); ++j) {
      if (i == j) continue;
      add_repulsion(f[i], pos[i].x - pos[j].x, pos[i].y - pos[j].y, k2, 1.0, i, j);
    }
  }
  return f;
}

std::vector<Point2> repulsive_forces_barnes_hut(std::span<const Point2> pos, double k,
                                                double theta) {
  std::vector<Point2> f(pos.size());
  if (pos.size() < 2) return f;
  const QuadTree tree(pos);
  for (std::size_t i = 0; i < pos.size(); ++i) f[i] = tree.force_on(i, k * k, theta);
  return f;
}

std::vector<Point2> attractive_forces(const WeightedGraph& g, std::span<const Point2> pos,
                                      double k) {
  std::vector<Point2> f(pos.size());
  for (const auto& e : g.edges()) {
    const double dx = pos[e.u].x - pos[e.v].x;
    const double dy = pos[e.u].y - pos[e.v].y;
    const double d = std::sqrt(dx * dx + dy * dy);
    // (delta / d) * w d^2 / k
    const double s = e.weight * d / k;
    f[e.u].x -= dx * s;
    f[e.u].y -= dy * s;
    f[e.v].x += dx * s;
    f[e.v].y += dy * s;
  }
  return f;
}

double layout_energy(const WeightedGraph& g, std::span<const Point2> pos, double k) {
  double energy = 0.0;
  for (const auto& e : g.edges()) {
    const double d = std::hypot(pos[e.u].x - pos[e.v].x, pos[e.u].y - pos[e.v].y);
    energy += e.weight * d * d * d / (3.0 * k);
  }
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (std::size_t j = i + 1; j < pos.size(); ++j) {
      const double d =
          std::max(kMinDistance, std::hypot(pos[i].x - pos[j].x, pos[i].y - pos[j].y));
      energy -= k * k * std::log(d);
    }
  }
  return energy;
}

LayoutResult layout_fr(const WeightedGraph& g, const LayoutParams& params) {
  if (!(params.theta > 0.0 && params.theta <= 1.0)) {
    throw Error(ErrorKind::parameter, "theta must lie in (0, 1]");
  }
  const std::size_t n = g.node_count();
  LayoutResult result;
  result.seed = params.seed;
  result.iterations = params.iterations;
  if (n == 0) return result;
  if (n == 1) {
    result.positions.assign(1, Point2{});
    return result;
  }
  const double area = params.area > 0.0 ? params.area : static_cast<double>(n);
  const double k = ideal_length(n, area);
  const double side = std::sqrt(area);
  const double t0 = params.initial_temperature > 0.0 ? params.initial_temperature : side / 10.0;

  std::vector<Point2> pos = initial_positions(n, params.seed, side);
  for (std::size_t it = 0; it < params.iterations; ++it) {
    const double t =
        t0 * (1.0 - static_cast<double>(it) / static_cast<double>(params.iterations));
    auto disp = params.barnes_hut ? repulsive_forces_barnes_hut(pos, k, params.theta)
                                  : repulsive_forces_exact(pos, k);
    const auto att = attractive_forces(g, pos, k);
    for (std::size_t i = 0; i < n; ++i) {
      const double dx = disp[i].x + att[i].x;
      const double dy = disp[i].y + att[i].y;
      const double len = std::sqrt(dx * dx + dy * dy);
      if (len > 0.0) {
        const double step = std::min(len, t) / len;
        pos[i].x += dx * step;
        pos[i].y += dy * step;
      }
    }
  }
  double cx = 0.0, cy = 0.0;
  for (const auto& p : pos) {
    cx += p.x;
    cy += p.y;
  }
  cx /= static_cast<double>(n);
  cy /= static_cast<double>(n);
  for (auto& p : pos) {
    p.x -= cx;
    p.y -= cy;
  }
  result.positions = std::move(pos);
  return result;
}

}  // namespace mog
