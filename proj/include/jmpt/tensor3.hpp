#pragma once

#include <array>

#include <Eigen/Dense>

#include "jmpt/types.hpp"

namespace jmpt {

// Dense 3-order tensor stored with mode-1 fibers contiguous:
// flat index = i1 + I1*(i2 + I2*i3).
class Tensor3 {
 public:
  Tensor3() = default;
  Tensor3(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3)
      : dims_{i1, i2, i3}, values_(Eigen::VectorXd::Zero(i1 * i2 * i3)) {
    if (i1 < 1 || i2 < 1 || i3 < 1) {
      throw DataError("tensor dimensions must all be >= 1");
    }
  }

  Eigen::Index dim(int mode) const { return dims_[mode]; }
  const std::array<Eigen::Index, 3>& dims() const { return dims_; }
  Eigen::Index size() const { return values_.size(); }

  double operator()(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3) const {
    return values_(flat(i1, i2, i3));
  }
  double& operator()(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3) {
    return values_(flat(i1, i2, i3));
  }

  const Eigen::VectorXd& raw() const { return values_; }
  Eigen::VectorXd& raw() { return values_; }

  double frobenius_norm() const { return values_.norm(); }
  bool all_finite() const { return values_.allFinite(); }

  // Mode-k unfolding, I_k rows; column order follows the remaining modes with
  // the lower-numbered one varying fastest.
  Eigen::MatrixXd unfold(int mode) const;
  static Tensor3 fold(const Eigen::MatrixXd& m, int mode,
                      const std::array<Eigen::Index, 3>& dims);

  // Leading (r x r x r) sub-tensor.
  Tensor3 block(Eigen::Index r) const;

 private:
  Eigen::Index flat(Eigen::Index i1, Eigen::Index i2, Eigen::Index i3) const {
    return i1 + dims_[0] * (i2 + dims_[1] * i3);
  }

  std::array<Eigen::Index, 3> dims_{0, 0, 0};
  Eigen::VectorXd values_;
};

// Mode-k product: contracts the tensor's mode `mode` with the columns of `m`
// (so m has I_mode columns; the result replaces that dimension with m.rows()).
Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& m, int mode);

}  // namespace jmpt
