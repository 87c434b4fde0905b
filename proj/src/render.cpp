#include "mog/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "mog/error.hpp"

namespace mog {

namespace {

struct Rgb {
  double r, g, b;
};

Rgb saturated(LensKind kind) {
  switch (kind) {
    case LensKind::agd: return {0.84, 0.10, 0.11};
    case LensKind::density: return {0.10, 0.60, 0.20};
    case LensKind::laplacian_l2:
    case LensKind::laplacian_l3: return {0.46, 0.19, 0.63};
    case LensKind::pagerank_log: return {0.13, 0.40, 0.75};
    case LensKind::index: return {0.40, 0.40, 0.40};
  }
  return {0.5, 0.5, 0.5};
}

// Maps [min, max] of `points` into the drawing area, preserving aspect.
class Viewport {
 public:
  Viewport(std::span<const Point2> points, const SvgStyle& style) : style_(style) {
    if (points.empty()) return;
    minx_ = maxx_ = points[0].x;
    miny_ = maxy_ = points[0].y;
    for (const auto& p : points) {
      minx_ = std::min(minx_, p.x);
      maxx_ = std::max(maxx_, p.x);
      miny_ = std::min(miny_, p.y);
      maxy_ = std::max(maxy_, p.y);
    }
    const double span = std::max({maxx_ - minx_, maxy_ - miny_, 1e-12});
    scale_ = std::min(style.width, style.height) - 2.0 * style.margin;
    scale_ /= span;
  }

  Point2 map(const Point2& p) const {
    const double cx = 0.5 * (minx_ + maxx_);
    const double cy = 0.5 * (miny_ + maxy_);
    return {style_.width / 2 + (p.x - cx) * scale_, style_.height / 2 - (p.y - cy) * scale_};
  }

 private:
  const SvgStyle& style_;
  double minx_ = 0, maxx_ = 0, miny_ = 0, maxy_ = 0;
  double scale_ = 1.0;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

void header(std::ostringstream& out, const SvgStyle& style) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(style.width)
      << "\" height=\"" << num(style.height) << "\" viewBox=\"0 0 " << num(style.width) << ' '
      << num(style.height) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double lerp(double lo, double hi, double t) { return lo + (hi - lo) * std::clamp(t, 0.0, 1.0); }

}  // namespace

std::string lens_color(LensKind kind, double value) {
  // Dark saturated hue at 0, fading towards a pale tint at 1.
  const Rgb c = saturated(kind);
  const double t = std::clamp(value, 0.0, 1.0);
  auto channel = [t](double base) {
    const double dark = base * 0.45;
    const double light = base + (1.0 - base) * 0.75;
    return static_cast<int>(std::lround(255.0 * lerp(dark, light, t)));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(c.r), channel(c.g), channel(c.b));
  return buf;
}

std::string render_summary_svg(const MogSummary& s, std::span<const Point2> positions,
                               const SvgStyle& style) {
  if (positions.size() != s.nodes.size()) {
    throw Error(ErrorKind::parameter, "positions do not match summary nodes");
  }
  const Viewport view(positions, style);
  std::size_t max_size = 1;
  for (const auto& n : s.nodes) max_size = std::max(max_size, n.size());
  std::size_t max_weight = 1;
  for (const auto& e : s.edges) max_weight = std::max(max_weight, e.weight());

  std::map<int, std::size_t> slot;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) slot[s.nodes[i].id] = i;

  std::ostringstream out;
  header(out, style);
  out << "<g stroke=\"#555555\" stroke-opacity=\"0.8\">\n";
  for (const auto& e : s.edges) {
    const Point2 a = view.map(positions[slot.at(e.source)]);
    const Point2 b = view.map(positions[slot.at(e.target)]);
    const double w = lerp(style.min_stroke, style.max_stroke,
                          static_cast<double>(e.weight()) / static_cast<double>(max_weight));
    out << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
        << "\" y2=\"" << num(b.y) << "\" stroke-width=\"" << num(w) << "\"/>\n";
  }
  out << "</g>\n<g stroke=\"#222222\" stroke-width=\"0.75\">\n";
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    const Point2 p = view.map(positions[i]);
    const double r = lerp(style.min_radius, style.max_radius,
                          static_cast<double>(n.size()) / static_cast<double>(max_size));
    out << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\"" << num(r)
        << "\" fill=\"" << lens_color(s.meta.lens, n.mean_lens) << "\"><title>node " << n.id
        << " (interval " << n.interval_id << ", size " << n.size() << ")</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

std::string render_graph_svg(const WeightedGraph& g, std::span<const Point2> positions,
                             std::span<const double> values, LensKind kind,
                             const SvgStyle& style) {
  if (positions.size() != g.node_count()) {
    throw Error(ErrorKind::parameter, "positions do not match graph nodes");
  }
  const Viewport view(positions, style);
  double max_weight = 0.0;
  for (const auto& e : g.edges()) max_weight = std::max(max_weight, e.weight);
  if (max_weight <= 0.0) max_weight = 1.0;

  std::ostringstream out;
  header(out, style);
  out << "<g stroke=\"#888888\" stroke-opacity=\"0.6\">\n";
  for (const auto& e : g.edges()) {
    const Point2 a = view.map(positions[e.u]);
    const Point2 b = view.map(positions[e.v]);
    const double w = lerp(style.min_stroke, style.max_stroke * 0.5, e.weight / max_weight);
    out << "<line x1=\"" << num(a.x) << "\" y1=\"" << num(a.y) << "\" x2=\"" << num(b.x)
        << "\" y2=\"" << num(b.y) << "\" stroke-width=\"" << num(w) << "\"/>\n";
  }
  out << "</g>\n<g stroke=\"#222222\" stroke-width=\"0.5\">\n";
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    const Point2 p = view.map(positions[v]);
    const std::string fill = values.empty() ? "#bbbbbb" : lens_color(kind, values[v]);
    out << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(p.y) << "\" r=\""
        << num(style.min_radius) << "\" fill=\"" << fill << "\"><title>" << escape(g.label(v))
        << "</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace mog
