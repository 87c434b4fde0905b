#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mog/graph.hpp"
#include "mog/kernels.hpp"

namespace mog {

enum class LensKind { agd, density, laplacian_l2, laplacian_l3, pagerank_log, index };

// Accepts the CLI names (agd, density, l2, l3, pagerank, index) and the long
// forms (laplacian_l2, laplacian_l3, pagerank_log).
LensKind parse_lens_kind(std::string_view name);
const char* to_string(LensKind kind) noexcept;

// True for lenses that are undefined on disconnected graphs.
bool requires_connectivity(LensKind kind) noexcept;

struct LensParams {
  double delta = 2.0;             // density bandwidth
  double damping = 0.85;          // PageRank
  double pagerank_tol = 1e-10;    // L1 change between sweeps
  std::size_t max_iter = 1000;    // PageRank sweeps
  double eigen_tol = 1e-8;        // ||L v - lambda v||_2
};

struct LensField {
  LensKind kind = LensKind::agd;
  LensParams params;
  std::vector<double> raw;
  std::vector<double> normalized;
  bool constant = false;  // raw was constant; normalized is all 0.5

  // Laplacian lenses: eigenvalue and residual. PageRank: pre-log scores,
  // sweeps taken and final L1 change.
  std::optional<double> eigenvalue;
  std::vector<double> scores;
  std::size_t iterations = 0;
  double residual = 0.0;
};

struct LensHistogram {
  std::vector<double> edges;         // bin_count + 1, from 0 to 1
  std::vector<std::size_t> counts;   // bin_count
  std::size_t bin_count() const noexcept { return counts.size(); }
};

// (x - min) / (max - min); input whose spread is within 1e-12 of its magnitude
// counts as constant and maps to 0.5. Throws Error{validation}
// on non-finite values.
std::vector<double> normalize_lens(std::span<const double> raw);

// AGD(v) = (1/|V|) sum_u d(v, u). Throws Error{disconnected} on
// disconnected graphs.
LensField compute_agd(const WeightedGraph& g, kernels::Exec exec = kernels::Exec::parallel);

// D(v) = sum_u exp(-d(u, v)^2 / delta), the u = v term included.
LensField compute_density(const WeightedGraph& g, double delta,
                          kernels::Exec exec = kernels::Exec::parallel);

// Unit eigenvector of the 2nd (which = 2) or 3rd (which = 3) smallest
// Laplacian eigenvalue, sign-fixed so the largest-magnitude entry is positive.
LensField compute_laplacian_eigen(const WeightedGraph& g, int which, double tol = 1e-8);

// Undirected PageRank by power iteration from the uniform vector; raw is the
// natural log of the scores. Edge weights are ignored.
LensField compute_pagerank(const WeightedGraph& g, double damping = 0.85, double tol = 1e-10,
                           std::size_t max_iter = 1000,
                           kernels::Exec exec = kernels::Exec::parallel);

// raw[v] = v. Handy for tests and for driving the pipeline with a known lens.
LensField compute_index_lens(const WeightedGraph& g);

LensField compute_lens(const WeightedGraph& g, LensKind kind, const LensParams& params = {});

// Uniform bins over [0,1], half-open except the last, which is closed at 1.
LensHistogram histogram(std::span<const double> normalized, std::size_t bin_count = 50);
inline LensHistogram histogram(const LensField& field, std::size_t bin_count = 50) {
  return histogram(field.normalized, bin_count);
}

// Canonical "kind?param=value&..." string listing only the parameters the
// lens uses; used as a cache key.
std::string lens_cache_key(LensKind kind, const LensParams& params);

}  // namespace mog
