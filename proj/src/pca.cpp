#include "jmpt/pca.hpp"

#include <cfenv>
#include <cmath>

namespace jmpt {

Image first_principal_component(const HyperCube& cube) {
  validate(cube);
  const Eigen::Index n = cube.values.rows();
  if (n < 2) {
    throw DataError("PCA needs at least 2 pixels");
  }

  const Eigen::RowVectorXd mean = cube.values.colwise().mean();
  const Eigen::MatrixXd centered = cube.values.rowwise() - mean;
  if (centered.isZero(0.0)) {
    return Image::Zero(cube.height, cube.width);
  }

  const Eigen::MatrixXd cov =
      centered.transpose() * centered / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw DataError("covariance eigendecomposition failed");
  }
  // Eigen returns eigenvalues ascending; the leading eigenvector is last.
  Eigen::VectorXd leading = solver.eigenvectors().col(cube.bands - 1);
  Eigen::Index top = 0;
  leading.cwiseAbs().maxCoeff(&top);
  if (leading(top) < 0.0) leading = -leading;

  const Eigen::VectorXd scores = centered * leading;
  return scores.reshaped(cube.width, cube.height).transpose();
}

GrayImage quantize_to_gray(const Image& img) {
  if (img.size() == 0) {
    throw DataError("cannot quantize an empty image");
  }
  if (!img.allFinite()) {
    throw DataError("cannot quantize a non-finite image");
  }
  const double lo = img.minCoeff();
  const double hi = img.maxCoeff();
  GrayImage out(img.rows(), img.cols());
  if (lo == hi) {
    out.setConstant(128);
    return out;
  }
  const double scale = 255.0 / (hi - lo);
  for (Eigen::Index r = 0; r < img.rows(); ++r) {
    for (Eigen::Index c = 0; c < img.cols(); ++c) {
      // nearbyint under the default FE_TONEAREST mode rounds half to even.
      const double level = std::nearbyint((img(r, c) - lo) * scale);
      out(r, c) = static_cast<std::uint8_t>(
          std::min(255.0, std::max(0.0, level)));
    }
  }
  return out;
}

}  // namespace jmpt
