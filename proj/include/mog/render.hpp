#pragma once

#include <span>
#include <string>

#include "mog/io.hpp"
#include "mog/lens.hpp"
#include "mog/mapper.hpp"

namespace mog {

// Sequential colormap per lens (red for AGD, green for density, purple for
// the Laplacian lenses, blue for PageRank); value in [0,1], darker = lower.
std::string lens_color(LensKind kind, double value);

struct SvgStyle {
  double width = 800.0;
  double height = 800.0;
  double margin = 40.0;
  double min_radius = 4.0;
  double max_radius = 24.0;
  double min_stroke = 0.5;
  double max_stroke = 8.0;
};

// Summary drawing: radius ∝ |C_u|, stroke ∝ |C_u ∩ C_v|, fill by mean lens.
// `positions` is aligned with s.nodes.
std::string render_summary_svg(const MogSummary& s, std::span<const Point2> positions,
                               const SvgStyle& style = {});

// Graph drawing: stroke ∝ edge weight, fill by `values` when given.
std::string render_graph_svg(const WeightedGraph& g, std::span<const Point2> positions,
                             std::span<const double> values, LensKind kind,
                             const SvgStyle& style = {});

}  // namespace mog
