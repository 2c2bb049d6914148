#pragma once

#include <functional>
#include <vector>

#include "jmpt/tensor3.hpp"

namespace jmpt {

struct AlsOptions {
  int max_iters = 25;
  double tol = 1e-6;  // stop when the relative fit change drops below this
};

// Full square orthonormal factor matrices plus the full core. Truncation to
// rank r (retained principal components per mode) happens at reconstruction:
// the leading r columns of each factor and the leading (r,r,r) core block.
struct TuckerFactors {
  Tensor3 core;       // x  contracted with all three factor transposes
  Eigen::MatrixXd u;  // I1 x I1
  Eigen::MatrixXd v;  // I2 x I2
  Eigen::MatrixXd w;  // I3 x I3
  Eigen::Index rank = 0;
  // Relative reconstruction error of the rank-r truncation, one entry for the
  // initialization and one per ALS sweep.
  std::vector<double> fit_history;
};

using AlsObserver = std::function<void(const TuckerFactors&)>;

// Orthogonal Tucker decomposition by higher-order SVD initialization followed
// by alternating least squares: each sweep re-derives one factor at a time
// from an eigendecomposition of the projected unfolding's Gram matrix. The
// truncated fit is nonincreasing across sweeps; iteration stops at `tol` or
// `max_iters`. `observer`, when set, is invoked after every sweep.
TuckerFactors tucker_als(const Tensor3& x, Eigen::Index rank,
                         const AlsOptions& options = {},
                         const AlsObserver& observer = nullptr);

// Rank-truncated reconstruction; output dimensions equal the input's.
Tensor3 tucker_reconstruct(const TuckerFactors& factors);

}  // namespace jmpt
