#include "mog/lens.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "mog/error.hpp"
#include "mog/spectral.hpp"

namespace mog {

namespace {

constexpr double kFlatTolerance = 1e-12;

void require_connected(const WeightedGraph& g, const char* lens) {
  if (g.node_count() <= 1) return;
  const auto comps = connected_components(g).size();
  if (comps > 1) {
    throw Error(ErrorKind::disconnected,
                std::string(lens) + " is undefined on a disconnected graph (" +
                    std::to_string(comps) +
                    " components); restrict to the largest component first")
        .with_value(static_cast<double>(comps));
  }
}

// Summation order differs between nodes, so values that are equal in exact
// arithmetic can differ in the last few bits.
bool is_flat(std::span<const double> raw) {
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  return *hi - *lo <= kFlatTolerance * std::max(std::abs(*lo), std::abs(*hi));
}

LensField finish(LensKind kind, std::vector<double> raw) {
  LensField field;
  field.kind = kind;
  field.normalized = normalize_lens(raw);
  field.constant = !raw.empty() && is_flat(raw);
  field.raw = std::move(raw);
  return field;
}

}  // namespace

LensKind parse_lens_kind(std::string_view name) {
  if (name == "agd") return LensKind::agd;
  if (name == "density") return LensKind::density;
  if (name == "l2" || name == "laplacian_l2") return LensKind::laplacian_l2;
  if (name == "l3" || name == "laplacian_l3") return LensKind::laplacian_l3;
  if (name == "pagerank" || name == "pagerank_log") return LensKind::pagerank_log;
  if (name == "index") return LensKind::index;
  throw Error(ErrorKind::parameter, "unknown lens '" + std::string(name) + "'");
}

const char* to_string(LensKind kind) noexcept {
  switch (kind) {
    case LensKind::agd: return "agd";
    case LensKind::density: return "density";
    case LensKind::laplacian_l2: return "l2";
    case LensKind::laplacian_l3: return "l3";
    case LensKind::pagerank_log: return "pagerank";
    case LensKind::index: return "index";
  }
  return "unknown";
}

bool requires_connectivity(LensKind kind) noexcept {
  return kind == LensKind::agd || kind == LensKind::density ||
         kind == LensKind::laplacian_l2 || kind == LensKind::laplacian_l3;
}

std::vector<double> normalize_lens(std::span<const double> raw) {
  if (raw.empty()) return {};
  for (double x : raw) {
    if (!std::isfinite(x)) throw Error(ErrorKind::validation, "lens values must be finite");
  }
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  const double min = *lo;
  const double span = *hi - *lo;
  std::vector<double> out(raw.size(), 0.5);
  if (!is_flat(raw)) {
    for (std::size_t i = 0; i < raw.size(); ++i) {
      out[i] = std::clamp((raw[i] - min) / span, 0.0, 1.0);
    }
  }
  return out;
}

LensField compute_agd(const WeightedGraph& g, kernels::Exec exec) {
  require_connected(g, "AGD");
  auto raw = kernels::distance_reduce(g, {kernels::DistanceReduction::Op::mean, 1.0}, exec);
  return finish(LensKind::agd, std::move(raw));
}

LensField compute_density(const WeightedGraph& g, double delta, kernels::Exec exec) {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(ErrorKind::parameter, "density delta must be > 0");
  }
  require_connected(g, "density");
  auto raw = kernels::distance_reduce(g, {kernels::DistanceReduction::Op::gaussian, delta}, exec);
  LensField field = finish(LensKind::density, std::move(raw));
  field.params.delta = delta;
  return field;
}

LensField compute_laplacian_eigen(const WeightedGraph& g, int which, double tol) {
  if (which != 2 && which != 3) {
    throw Error(ErrorKind::parameter, "Laplacian lens index must be 2 or 3");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::parameter, "eigensolver tolerance must be > 0");
  const std::size_t n = g.node_count();
  if (n < static_cast<std::size_t>(which)) {
    throw Error(ErrorKind::parameter, "l" + std::to_string(which) + " needs at least " +
                                          std::to_string(which) + " nodes");
  }
  const auto comps = connected_components(g).size();
  if (comps > 1) {
    throw Error(ErrorKind::disconnected,
                "Laplacian kernel has dimension " + std::to_string(comps) +
                    " (graph is disconnected); restrict to the largest component first")
        .with_value(static_cast<double>(comps));
  }

  std::vector<std::vector<double>> deflate;
  deflate.emplace_back(n, 1.0 / std::sqrt(static_cast<double>(n)));
  LanczosOptions options;
  options.tol = tol;
  Eigenpair pair = smallest_laplacian_eigenpair(g, deflate, options);
  if (which == 3) {
    deflate.push_back(pair.vector);
    options.seed += 1;
    pair = smallest_laplacian_eigenpair(g, deflate, options);
  }
  apply_sign_rule(pair.vector);

  LensField field = finish(which == 2 ? LensKind::laplacian_l2 : LensKind::laplacian_l3,
                           std::move(pair.vector));
  field.params.eigen_tol = tol;
  field.eigenvalue = pair.value;
  field.residual = pair.residual;
  field.iterations = pair.matvecs;
  return field;
}

LensField compute_pagerank(const WeightedGraph& g, double damping, double tol,
                           std::size_t max_iter, kernels::Exec exec) {
  if (!(damping > 0.0 && damping < 1.0)) {
    throw Error(ErrorKind::parameter, "damping must lie in (0, 1)");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::parameter, "PageRank tolerance must be > 0");
  const std::size_t n = g.node_count();
  std::vector<double> inv_degree(n);
  for (NodeIndex v = 0; v < n; ++v) {
    if (g.degree(v) == 0) {
      throw Error(ErrorKind::validation,
                  "PageRank needs every node to have a neighbour; '" + g.label(v) +
                      "' is isolated");
    }
    inv_degree[v] = 1.0 / static_cast<double>(g.degree(v));
  }
  std::vector<double> prev(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  double change = std::numeric_limits<double>::infinity();
  std::size_t sweeps = 0;
  while (sweeps < max_iter) {
    change = exec == kernels::Exec::serial
                 ? kernels::pagerank_sweep_serial(g, inv_degree, prev, next, damping)
                 : kernels::pagerank_sweep_parallel(g, inv_degree, prev, next, damping);
    ++sweeps;
    prev.swap(next);
    if (change <= tol) break;
  }
  if (change > tol) {
    throw Error(ErrorKind::convergence, "PageRank did not converge in " +
                                            std::to_string(max_iter) + " sweeps (L1 change " +
                                            std::to_string(change) + ")")
        .with_value(change);
  }
  std::vector<double> raw(n);
  for (std::size_t v = 0; v < n; ++v) raw[v] = std::log(prev[v]);
  LensField field = finish(LensKind::pagerank_log, std::move(raw));
  field.params.damping = damping;
  field.params.pagerank_tol = tol;
  field.params.max_iter = max_iter;
  field.scores = std::move(prev);
  field.iterations = sweeps;
  field.residual = change;
  return field;
}

LensField compute_index_lens(const WeightedGraph& g) {
  std::vector<double> raw(g.node_count());
  for (std::size_t v = 0; v < raw.size(); ++v) raw[v] = static_cast<double>(v);
  return finish(LensKind::index, std::move(raw));
}

LensField compute_lens(const WeightedGraph& g, LensKind kind, const LensParams& params) {
  LensField field;
  switch (kind) {
    case LensKind::agd: field = compute_agd(g); break;
    case LensKind::density: field = compute_density(g, params.delta); break;
    case LensKind::laplacian_l2: field = compute_laplacian_eigen(g, 2, params.eigen_tol); break;
    case LensKind::laplacian_l3: field = compute_laplacian_eigen(g, 3, params.eigen_tol); break;
    case LensKind::pagerank_log:
      field = compute_pagerank(g, params.damping, params.pagerank_tol, params.max_iter);
      break;
    case LensKind::index: field = compute_index_lens(g); break;
  }
  field.params = params;
  return field;
}

LensHistogram histogram(std::span<const double> normalized, std::size_t bin_count) {
  if (bin_count < 1) throw Error(ErrorKind::parameter, "bin_count must be >= 1");
  LensHistogram h;
  h.edges.resize(bin_count + 1);
  for (std::size_t i = 0; i <= bin_count; ++i) {
    h.edges[i] = static_cast<double>(i) / static_cast<double>(bin_count);
  }
  h.counts.assign(bin_count, 0);
  for (double x : normalized) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw Error(ErrorKind::validation, "histogram input must be normalized to [0,1]");
    }
    auto bin = std::min(bin_count - 1,
                        static_cast<std::size_t>(std::floor(x * static_cast<double>(bin_count))));
    // Align with the stored edges where x * bin_count rounded across one.
    if (bin + 1 < bin_count && x >= h.edges[bin + 1]) ++bin;
    if (bin > 0 && x < h.edges[bin]) --bin;
    ++h.counts[bin];
  }
  return h;
}

std::string lens_cache_key(LensKind kind, const LensParams& p) {
  char buf[160];
  switch (kind) {
    case LensKind::density:
      std::snprintf(buf, sizeof buf, "density?delta=%.17g", p.delta);
      break;
    case LensKind::laplacian_l2:
    case LensKind::laplacian_l3:
      std::snprintf(buf, sizeof buf, "%s?tol=%.17g", to_string(kind), p.eigen_tol);
      break;
    case LensKind::pagerank_log:
      std::snprintf(buf, sizeof buf, "pagerank?damping=%.17g&tol=%.17g&max_iter=%zu", p.damping,
                    p.pagerank_tol, p.max_iter);
      break;
    default:
      std::snprintf(buf, sizeof buf, "%s", to_string(kind));
  }
  return buf;
}

}  // namespace mog
