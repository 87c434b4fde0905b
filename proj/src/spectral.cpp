#include "mog/spectral.hpp"

#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "mog/error.hpp"
#include "mog/kernels.hpp"

namespace mog {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void project_out(VectorXd& x, std::span<const std::vector<double>> deflate) {
  for (const auto& d : deflate) {
    const Eigen::Map<const VectorXd> q(d.data(), static_cast<Eigen::Index>(d.size()));
    x -= q.dot(x) * q;
  }
}

void apply(const WeightedGraph& g, const VectorXd& x, VectorXd& y) {
  kernels::laplacian_apply_parallel(g, {x.data(), static_cast<std::size_t>(x.size())},
                                    {y.data(), static_cast<std::size_t>(y.size())});
}

}  // namespace

void apply_sign_rule(std::span<double> v) {
  double peak = 0.0;
  for (double x : v) peak = std::max(peak, std::abs(x));
  if (peak == 0.0) return;
  for (double x : v) {
    if (std::abs(x) >= peak * (1.0 - 1e-9)) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

Eigenpair smallest_laplacian_eigenpair(const WeightedGraph& g,
                                       std::span<const std::vector<double>> deflate,
                                       const LanczosOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  if (static_cast<std::size_t>(n) <= deflate.size()) {
    throw Error(ErrorKind::parameter, "graph has too few nodes for the requested eigenvector");
  }
  const auto complement = n - static_cast<Eigen::Index>(deflate.size());
  const Eigen::Index m =
      std::min<Eigen::Index>(complement, static_cast<Eigen::Index>(options.max_basis));
  const std::size_t budget =
      options.max_matvecs ? options.max_matvecs : 10 * static_cast<std::size_t>(n);
  const Eigen::Index keep = std::min<Eigen::Index>(m - 1, std::max<Eigen::Index>(6, m / 3));

  // Scale for breakdown detection: Gershgorin bound on ||L||.
  double norm_bound = 0.0;
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    norm_bound = std::max(norm_bound, 2.0 * g.weighted_degree(v));
  }
  norm_bound = std::max(norm_bound, 1.0);

  MatrixXd basis = MatrixXd::Zero(n, m + 1);
  MatrixXd proj = MatrixXd::Zero(m + 1, m + 1);

  VectorXd start(n);
  std::mt19937_64 rng(options.seed);
  for (Eigen::Index i = 0; i < n; ++i) {
    start[i] = static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5;
  }
  project_out(start, deflate);
  project_out(start, deflate);
  basis.col(0) = start.normalized();

  VectorXd w(n);
  VectorXd ritz(n);
  VectorXd lx(n);
  std::size_t matvecs = 0;
  Eigen::Index first = 0;
  double last_residual = std::numeric_limits<double>::infinity();

  while (true) {
    Eigen::Index size = m;
    double beta = 0.0;
    bool invariant = false;
    for (Eigen::Index j = first; j < m; ++j) {
      apply(g, basis.col(j), w);
      ++matvecs;
      project_out(w, deflate);
      // Classical Gram-Schmidt, applied twice.
      VectorXd h = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * h;
      const VectorXd h2 = basis.leftCols(j + 1).transpose() * w;
      w -= basis.leftCols(j + 1) * h2;
      h += h2;
      project_out(w, deflate);
      proj.block(0, j, j + 1, 1) = h;
      proj.block(j, 0, 1, j + 1) = h.transpose();
      beta = w.norm();
      if (beta <= 1e-13 * norm_bound) {
        size = j + 1;
        invariant = true;
        beta = 0.0;
        break;
      }
      basis.col(j + 1) = w / beta;
      proj(j + 1, j) = beta;
      proj(j, j + 1) = beta;
    }

    const MatrixXd small = 0.5 * (proj.topLeftCorner(size, size) +
                                  proj.topLeftCorner(size, size).transpose());
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(small);
    const VectorXd& theta = solver.eigenvalues();
    const MatrixXd& y = solver.eigenvectors();

    ritz = basis.leftCols(size) * y.col(0);
    ritz.normalize();
    const double estimate = std::abs(beta * y(size - 1, 0));
    if (estimate <= options.tol || invariant || matvecs >= budget) {
      apply(g, ritz, lx);
      ++matvecs;
      const double value = ritz.dot(lx);
      last_residual = (lx - value * ritz).norm();
      if (last_residual <= options.tol) {
        Eigenpair out;
        out.value = value;
        out.vector.assign(ritz.data(), ritz.data() + n);
        out.residual = last_residual;
        out.matvecs = matvecs;
        return out;
      }
      if (matvecs >= budget || invariant) {
        throw Error(ErrorKind::convergence,
                    "Laplacian eigensolver did not converge within " + std::to_string(budget) +
                        " matvecs (residual " + std::to_string(last_residual) + ")")
            .with_value(last_residual);
      }
    }

    // Thick restart: keep the `keep` smallest Ritz vectors plus the residual
    // direction; the projected matrix becomes diagonal with a coupling row.
    const Eigen::Index kept = std::min(keep, size - 1);
    const MatrixXd kept_vectors = basis.leftCols(size) * y.leftCols(kept);
    const VectorXd next = basis.col(size);
    basis.leftCols(kept) = kept_vectors;
    basis.col(kept) = next;
    proj.setZero();
    for (Eigen::Index i = 0; i < kept; ++i) {
      proj(i, i) = theta[i];
      proj(kept, i) = beta * y(size - 1, i);
      proj(i, kept) = proj(kept, i);
    }
    first = kept;
  }
}

}  // namespace mog
