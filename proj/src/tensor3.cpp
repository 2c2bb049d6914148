#include "jmpt/tensor3.hpp"

namespace jmpt {

Eigen::MatrixXd Tensor3::unfold(int mode) const {
  const Eigen::Index i1 = dims_[0], i2 = dims_[1], i3 = dims_[2];
  switch (mode) {
    case 0:
      return Eigen::Map<const Eigen::MatrixXd>(values_.data(), i1, i2 * i3);
    case 1: {
      Eigen::MatrixXd m(i2, i1 * i3);
      for (Eigen::Index c = 0; c < i3; ++c) {
        for (Eigen::Index b = 0; b < i2; ++b) {
          for (Eigen::Index a = 0; a < i1; ++a) {
            m(b, a + i1 * c) = values_(flat(a, b, c));
          }
        }
      }
      return m;
    }
    case 2:
      return Eigen::Map<const Eigen::MatrixXd>(values_.data(), i1 * i2, i3)
          .transpose();
    default:
      throw std::invalid_argument("tensor mode must be 0, 1, or 2");
  }
}

Tensor3 Tensor3::fold(const Eigen::MatrixXd& m, int mode,
                      const std::array<Eigen::Index, 3>& dims) {
  const Eigen::Index i1 = dims[0], i2 = dims[1], i3 = dims[2];
  Tensor3 t(i1, i2, i3);
  switch (mode) {
    case 0:
      if (m.rows() != i1 || m.cols() != i2 * i3) {
        throw std::invalid_argument("mode-1 fold shape mismatch");
      }
      Eigen::Map<Eigen::MatrixXd>(t.values_.data(), i1, i2 * i3) = m;
      return t;
    case 1:
      if (m.rows() != i2 || m.cols() != i1 * i3) {
        throw std::invalid_argument("mode-2 fold shape mismatch");
      }
      for (Eigen::Index c = 0; c < i3; ++c) {
        for (Eigen::Index b = 0; b < i2; ++b) {
          for (Eigen::Index a = 0; a < i1; ++a) {
            t.values_(t.flat(a, b, c)) = m(b, a + i1 * c);
          }
        }
      }
      return t;
    case 2:
      if (m.rows() != i3 || m.cols() != i1 * i2) {
        throw std::invalid_argument("mode-3 fold shape mismatch");
      }
      Eigen::Map<Eigen::MatrixXd>(t.values_.data(), i1 * i2, i3) =
          m.transpose();
      return t;
    default:
      throw std::invalid_argument("tensor mode must be 0, 1, or 2");
  }
}

Tensor3 Tensor3::block(Eigen::Index r) const {
  if (r < 1 || r > dims_[0] || r > dims_[1] || r > dims_[2]) {
    throw std::invalid_argument("tensor block size out of range");
  }
  Tensor3 t(r, r, r);
  for (Eigen::Index c = 0; c < r; ++c) {
    for (Eigen::Index b = 0; b < r; ++b) {
      for (Eigen::Index a = 0; a < r; ++a) {
        t(a, b, c) = (*this)(a, b, c);
      }
    }
  }
  return t;
}

Tensor3 mode_product(const Tensor3& t, const Eigen::MatrixXd& m, int mode) {
  if (m.cols() != t.dim(mode)) {
    throw std::invalid_argument("mode product shape mismatch");
  }
  std::array<Eigen::Index, 3> dims = t.dims();
  dims[mode] = m.rows();
  return Tensor3::fold(m * t.unfold(mode), mode, dims);
}

}  // namespace jmpt
