#include "jmpt/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "jmpt/patch_tensor.hpp"
#include "jmpt/pca.hpp"

namespace jmpt {
namespace {

void check_pair(const HyperCube& t1, const HyperCube& t2) {
  validate(BiTemporalPair{t1, t2});
}

ChangeMap normalized_unit(const ChangeMap& m) {
  const double lo = m.minCoeff();
  const double hi = m.maxCoeff();
  if (hi == lo) return ChangeMap::Zero(m.rows(), m.cols());
  return (m.array() - lo) / (hi - lo);
}

}  // namespace

ChangeMap morph_ad(const FeatureStack& f1, const FeatureStack& f2) {
  if (f1.bands.size() != f2.bands.size()) {
    throw DataError("feature stacks have different band counts: " +
                    std::to_string(f1.bands.size()) + " vs " +
                    std::to_string(f2.bands.size()));
  }
  if (f1.bands.empty()) {
    throw DataError("feature stacks are empty");
  }
  if (f1.provenance != f2.provenance) {
    throw DataError("feature stacks have mismatched provenance");
  }
  ChangeMap map = ChangeMap::Zero(f1.bands[0].rows(), f1.bands[0].cols());
  for (std::size_t l = 0; l < f1.bands.size(); ++l) {
    if (f1.bands[l].rows() != map.rows() || f1.bands[l].cols() != map.cols() ||
        f2.bands[l].rows() != map.rows() || f2.bands[l].cols() != map.cols()) {
      throw DataError("feature band " + std::to_string(l) +
                      " has mismatched dimensions");
    }
    map.array() += (f1.bands[l] - f2.bands[l]).array().abs();
  }
  return map;
}

double spectral_angle_weight(const Eigen::VectorXd& x,
                             const Eigen::VectorXd& y) {
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0) return 0.0;
  const double cosine = x.dot(y) / (nx * ny);
  return std::atan(cosine * cosine);
}

ChangeMap neighborhood_detector(const HyperCube& t1, const HyperCube& t2) {
  check_pair(t1, t2);
  const Eigen::Index h = t1.height;
  const Eigen::Index w = t1.width;
  ChangeMap map(h, w);
  Eigen::VectorXd acc(t1.bands);
  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      acc.setZero();
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const Eigen::Index rr = std::clamp<Eigen::Index>(r + dr, 0, h - 1);
          const Eigen::Index cc = std::clamp<Eigen::Index>(c + dc, 0, w - 1);
          const Eigen::Index p = rr * w + cc;
          acc.array() += t2.values.row(p).array().square() -
                         t1.values.row(p).array().square();
        }
      }
      const double weight = spectral_angle_weight(
          t1.values.row(r * w + c), t2.values.row(r * w + c));
      map(r, c) = acc.norm() * weight;
    }
  }
  return map;
}

ChangeMap fuse(const ChangeMap& r1, const ChangeMap& r2, double a, double b) {
  if (r1.rows() != r2.rows() || r1.cols() != r2.cols()) {
    throw DataError("fused maps have mismatched dimensions");
  }
  if (a < 0.0 || b < 0.0 || a + b <= 0.0) {
    throw DataError("fusion weights must be nonnegative with a + b > 0");
  }
  return a * normalized_unit(r1) + b * normalized_unit(r2);
}

ChangeMap baseline_ad(const HyperCube& t1, const HyperCube& t2) {
  check_pair(t1, t2);
  const Eigen::VectorXd scores =
      (t1.values - t2.values).cwiseAbs().rowwise().sum();
  return scores.reshaped(t1.width, t1.height).transpose();
}

ChangeMap baseline_ed(const HyperCube& t1, const HyperCube& t2) {
  check_pair(t1, t2);
  const Eigen::VectorXd scores = (t1.values - t2.values).rowwise().norm();
  return scores.reshaped(t1.width, t1.height).transpose();
}

ChangeMap baseline_aad(const HyperCube& t1, const HyperCube& t2) {
  check_pair(t1, t2);
  const Eigen::VectorXd scores =
      ((t1.values - t2.values).rowwise().sum() / double(t1.bands)).cwiseAbs();
  return scores.reshaped(t1.width, t1.height).transpose();
}

ChangeMap morph_branch(const BiTemporalPair& pair,
                       const DetectorConfig& config) {
  validate(pair);
  const GrayImage g1 = quantize_to_gray(first_principal_component(pair.t1));
  const GrayImage g2 = quantize_to_gray(first_principal_component(pair.t2));
  const FeatureStack f1 =
      build_feature_stack(g1, config.bank, config.connectivity);
  const FeatureStack f2 =
      build_feature_stack(g2, config.bank, config.connectivity);
  return morph_ad(f1, f2);
}

ChangeMap tensor_branch(const BiTemporalPair& pair,
                        const DetectorConfig& config) {
  validate(pair);
  const HyperCube d1 = denoise_cube(pair.t1, config.patch_size, config.als);
  const HyperCube d2 = denoise_cube(pair.t2, config.patch_size, config.als);
  return neighborhood_detector(d1, d2);
}

ChangeMap jmpt_detect(const BiTemporalPair& pair, const DetectorConfig& config) {
  const ChangeMap r1 = morph_branch(pair, config);
  const ChangeMap r2 = tensor_branch(pair, config);
  return fuse(r1, r2, config.fuse_a, config.fuse_b);
}

}  // namespace jmpt
