#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mog/graph.hpp"

namespace mog {

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;  // unit norm
  double residual = 0.0;       // ||L v - value v||_2
  std::size_t matvecs = 0;
};

struct LanczosOptions {
  double tol = 1e-8;
  std::size_t max_basis = 60;
  std::size_t max_matvecs = 0;  // 0 -> 10 * |V|
  std::uint64_t seed = 0x6d6f67;
};

// Smallest eigenpair of the unnormalized Laplacian restricted to the
// orthogonal complement of `deflate` (orthonormal vectors, typically the
// normalized constant vector plus previously found eigenvectors).
// Thick-restart Lanczos with full reorthogonalization; the Laplacian is only
// applied as a sparse operator. Throws Error{convergence} carrying the last
// residual when the matvec budget is exhausted.
Eigenpair smallest_laplacian_eigenpair(const WeightedGraph& g,
                                       std::span<const std::vector<double>> deflate,
                                       const LanczosOptions& options = {});

// Flips `v` so its entry of largest magnitude is positive; near-ties (within
// 1e-9 relative) go to the lowest index.
void apply_sign_rule(std::span<double> v);

}  // namespace mog
