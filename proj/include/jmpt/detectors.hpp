#pragma once

#include "jmpt/attribute_profile.hpp"
#include "jmpt/tucker.hpp"
#include "jmpt/types.hpp"

namespace jmpt {

// Knobs shared by the detection pipeline.
struct DetectorConfig {
  Eigen::Index patch_size = 3;
  Connectivity connectivity = Connectivity::four;
  ThresholdBank bank = ThresholdBank::defaults();
  double fuse_a = 0.5;  // weight of the morphology map
  double fuse_b = 0.5;  // weight of the tensor map
  AlsOptions als;
};

// Bandwise absolute difference summed across the two feature stacks.
// Stacks must agree in band count and provenance.
ChangeMap morph_ad(const FeatureStack& f1, const FeatureStack& f2);

// arctan of the squared cosine between two spectra; 0 when either is the
// zero vector. Range [0, pi/4].
double spectral_angle_weight(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Per-pixel 2-norm of the 8-neighborhood sum of elementwise-squared spectral
// differences (t2^2 - t1^2), weighted by the center pixels' spectral angle
// weight. Border neighbors replicate the edge.
ChangeMap neighborhood_detector(const HyperCube& t1, const HyperCube& t2);

// Min-max normalizes each map to [0,1] (a constant map becomes all-zeros),
// then returns a*r1 + b*r2.
ChangeMap fuse(const ChangeMap& r1, const ChangeMap& r2, double a, double b);

// Pixelwise spectral baselines.
ChangeMap baseline_ad(const HyperCube& t1, const HyperCube& t2);
ChangeMap baseline_ed(const HyperCube& t1, const HyperCube& t2);
ChangeMap baseline_aad(const HyperCube& t1, const HyperCube& t2);

// Morphology branch: PC1 -> quantize -> attribute-profile stacks per date ->
// bandwise absolute difference.
ChangeMap morph_branch(const BiTemporalPair& pair, const DetectorConfig& config);

// Tensor branch: patch-tensor denoising per date -> neighborhood detector.
ChangeMap tensor_branch(const BiTemporalPair& pair, const DetectorConfig& config);

// Full detector: both branches fused with weights (fuse_a, fuse_b).
ChangeMap jmpt_detect(const BiTemporalPair& pair, const DetectorConfig& config);

}  // namespace jmpt
