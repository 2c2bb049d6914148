#include "jmpt/tucker.hpp"

#include <algorithm>
#include <cmath>

namespace jmpt {
namespace {

// Columns of the Gram matrix's eigenbasis, sorted by descending eigenvalue,
// each with its largest-magnitude entry made positive.
Eigen::MatrixXd descending_eigenbasis(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  if (solver.info() != Eigen::Success) {
    throw DataError("eigendecomposition failed in Tucker factorization");
  }
  const Eigen::Index n = gram.rows();
  Eigen::MatrixXd basis(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::VectorXd col = solver.eigenvectors().col(n - 1 - j);
    Eigen::Index top = 0;
    col.cwiseAbs().maxCoeff(&top);
    if (col(top) < 0.0) col = -col;
    basis.col(j) = col;
  }
  return basis;
}

// Truncated core of the current factors; its norm gives the fit cheaply.
Tensor3 truncated_core(const Tensor3& x, const TuckerFactors& f) {
  Tensor3 g = mode_product(x, f.u.leftCols(f.rank).transpose(), 0);
  g = mode_product(g, f.v.leftCols(f.rank).transpose(), 1);
  return mode_product(g, f.w.leftCols(f.rank).transpose(), 2);
}

double relative_error(const Tensor3& x, const TuckerFactors& f,
                      double norm_x) {
  if (norm_x == 0.0) return 0.0;
  const double core_norm = truncated_core(x, f).frobenius_norm();
  const double err_sq = norm_x * norm_x - core_norm * core_norm;
  return std::sqrt(std::max(0.0, err_sq)) / norm_x;
}

}  // namespace

TuckerFactors tucker_als(const Tensor3& x, Eigen::Index rank,
                         const AlsOptions& options, const AlsObserver& observer) {
  if (!x.all_finite()) {
    throw DataError("tensor contains non-finite values");
  }
  const Eigen::Index max_rank =
      std::min({x.dim(0), x.dim(1), x.dim(2)});
  if (rank < 1 || rank > max_rank) {
    throw DataError("rank " + std::to_string(rank) + " out of range [1, " +
                    std::to_string(max_rank) + "]");
  }

  TuckerFactors f;
  f.rank = rank;

  // Higher-order SVD initialization: per-mode eigenbasis of the raw
  // unfolding's Gram matrix.
  for (int mode = 0; mode < 3; ++mode) {
    const Eigen::MatrixXd unfolding = x.unfold(mode);
    Eigen::MatrixXd& factor = mode == 0 ? f.u : mode == 1 ? f.v : f.w;
    factor = descending_eigenbasis(unfolding * unfolding.transpose());
  }

  const double norm_x = x.frobenius_norm();
  double fit = relative_error(x, f, norm_x);
  f.fit_history.push_back(fit);

  if (norm_x > 0.0) {
    for (int iter = 0; iter < options.max_iters; ++iter) {
      for (int mode = 0; mode < 3; ++mode) {
        // Project onto the other two factors' leading columns, then refresh
        // this mode's basis from the projection's Gram matrix.
        Tensor3 projected = x;
        for (int other = 0; other < 3; ++other) {
          if (other == mode) continue;
          const Eigen::MatrixXd& factor =
              other == 0 ? f.u : other == 1 ? f.v : f.w;
          projected = mode_product(
              projected, factor.leftCols(rank).transpose(), other);
        }
        const Eigen::MatrixXd unfolding = projected.unfold(mode);
        Eigen::MatrixXd& factor = mode == 0 ? f.u : mode == 1 ? f.v : f.w;
        factor = descending_eigenbasis(unfolding * unfolding.transpose());
      }
      const double next = relative_error(x, f, norm_x);
      const double change = fit - next;
      fit = next;
      f.fit_history.push_back(fit);
      if (observer) {
        f.core = mode_product(
            mode_product(mode_product(x, f.u.transpose(), 0), f.v.transpose(), 1),
            f.w.transpose(), 2);
        observer(f);
      }
      if (std::abs(change) < options.tol) break;
    }
  }

  f.core = mode_product(
      mode_product(mode_product(x, f.u.transpose(), 0), f.v.transpose(), 1),
      f.w.transpose(), 2);
  return f;
}

Tensor3 tucker_reconstruct(const TuckerFactors& factors) {
  const Eigen::Index r = factors.rank;
  const Tensor3 core_block = factors.core.block(r);
  Tensor3 out = mode_product(core_block, factors.u.leftCols(r), 0);
  out = mode_product(out, factors.v.leftCols(r), 1);
  return mode_product(out, factors.w.leftCols(r), 2);
}

}  // namespace jmpt
