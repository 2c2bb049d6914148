#pragma once

#include <cstdint>
#include <vector>

#include "jmpt/types.hpp"

namespace jmpt {

struct SceneConfig {
  Eigen::Index height = 64;
  Eigen::Index width = 64;
  Eigen::Index bands = 20;
  int num_change_regions = 3;
  double change_magnitude = 1.0;  // scale applied to the replacement spectrum
  double noise_sigma = 0.0;       // additive Gaussian std, both dates
  std::uint64_t seed = 0;
};

struct Rect {
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  Eigen::Index height = 0;
  Eigen::Index width = 0;

  Eigen::Index area() const { return height * width; }
};

struct SynthScene {
  BiTemporalPair pair;
  BinaryMask mask;
  std::vector<Rect> change_regions;  // non-overlapping by construction
};

// Builds a deterministic bi-temporal scene: the first date is a patchwork of
// smooth endmember spectra over contiguous regions, the second is identical
// except inside `num_change_regions` rectangles where the spectrum is swapped
// for a different endmember scaled by `change_magnitude`. Independent Gaussian
// noise of std `noise_sigma` is added to both dates. The mask marks exactly
// the changed rectangles. Throws DataError when the requested regions cannot
// be placed inside the image.
SynthScene synth_pair(const SceneConfig& config);

}  // namespace jmpt
