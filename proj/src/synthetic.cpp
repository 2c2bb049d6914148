#include "jmpt/synthetic.hpp"

#include <algorithm>
#include <random>

namespace jmpt {
namespace {

constexpr int kNumEndmembers = 4;
constexpr int kPlacementAttempts = 1000;

// Smooth positive spectrum: a Gaussian bump centered per material.
Eigen::VectorXd endmember(int k, Eigen::Index bands) {
  Eigen::VectorXd s(bands);
  const double center = (k + 0.5) * double(bands) / kNumEndmembers;
  const double sigma = std::max(1.0, double(bands) / 6.0);
  for (Eigen::Index b = 0; b < bands; ++b) {
    const double d = (double(b) - center) / sigma;
    s(b) = 0.2 + 0.8 * std::exp(-0.5 * d * d);
  }
  return s;
}

bool overlaps(const Rect& a, const Rect& b) {
  return a.row < b.row + b.height && b.row < a.row + a.height &&
         a.col < b.col + b.width && b.col < a.col + a.width;
}

}  // namespace

SynthScene synth_pair(const SceneConfig& config) {
  if (config.height < 1 || config.width < 1 || config.bands < 1) {
    throw DataError("scene dimensions must all be >= 1");
  }
  if (config.noise_sigma < 0.0) {
    throw DataError("noise_sigma must be >= 0");
  }
  if (config.change_magnitude <= 0.0) {
    throw DataError("change_magnitude must be > 0");
  }
  if (config.num_change_regions < 0) {
    throw DataError("num_change_regions must be >= 0");
  }

  std::mt19937_64 rng(config.seed);
  const Eigen::Index h = config.height;
  const Eigen::Index w = config.width;
  const Eigen::Index d = config.bands;

  std::vector<Eigen::VectorXd> spectra;
  for (int k = 0; k < kNumEndmembers; ++k) spectra.push_back(endmember(k, d));

  // Material map: vertical stripes plus a few rectangular fields, so both
  // dates carry contiguous 2-D structure.
  Eigen::MatrixXi material(h, w);
  {
    std::uniform_int_distribution<int> mat(0, kNumEndmembers - 1);
    const int stripes = std::min<Eigen::Index>(kNumEndmembers, w);
    for (Eigen::Index c = 0; c < w; ++c) {
      material.col(c).setConstant(int(c * stripes / w) % kNumEndmembers);
    }
    const int fields = (h >= 4 && w >= 4) ? 3 : 0;
    for (int i = 0; i < fields; ++i) {
      std::uniform_int_distribution<Eigen::Index> fh(h / 4, h / 2);
      std::uniform_int_distribution<Eigen::Index> fw(w / 4, w / 2);
      const Eigen::Index rh = fh(rng);
      const Eigen::Index rw = fw(rng);
      std::uniform_int_distribution<Eigen::Index> fr(0, h - rh);
      std::uniform_int_distribution<Eigen::Index> fc(0, w - rw);
      const Eigen::Index r0 = fr(rng);
      const Eigen::Index c0 = fc(rng);
      material.block(r0, c0, rh, rw).setConstant(mat(rng));
    }
  }

  // Non-overlapping change rectangles, placed by rejection.
  std::vector<Rect> regions;
  if (config.num_change_regions > 0) {
    const Eigen::Index min_h = std::max<Eigen::Index>(1, h / 8);
    const Eigen::Index max_h = std::max<Eigen::Index>(min_h, h / 4);
    const Eigen::Index min_w = std::max<Eigen::Index>(1, w / 8);
    const Eigen::Index max_w = std::max<Eigen::Index>(min_w, w / 4);
    std::uniform_int_distribution<Eigen::Index> rh(min_h, max_h);
    std::uniform_int_distribution<Eigen::Index> rw(min_w, max_w);
    for (int i = 0; i < config.num_change_regions; ++i) {
      bool placed = false;
      for (int attempt = 0; attempt < kPlacementAttempts && !placed;
           ++attempt) {
        Rect rect;
        rect.height = rh(rng);
        rect.width = rw(rng);
        if (rect.height > h || rect.width > w) continue;
        std::uniform_int_distribution<Eigen::Index> rr(0, h - rect.height);
        std::uniform_int_distribution<Eigen::Index> rc(0, w - rect.width);
        rect.row = rr(rng);
        rect.col = rc(rng);
        placed = std::none_of(regions.begin(), regions.end(),
                              [&](const Rect& r) { return overlaps(r, rect); });
        if (placed) regions.push_back(rect);
      }
      if (!placed) {
        throw DataError("cannot place change region " + std::to_string(i + 1) +
                        " of " + std::to_string(config.num_change_regions) +
                        " inside a " + std::to_string(h) + "x" +
                        std::to_string(w) + " image");
      }
    }
  }

  SynthScene scene;
  scene.pair.t1 = make_cube(h, w, d);
  scene.pair.t2 = make_cube(h, w, d);
  scene.mask = make_mask(h, w);
  scene.change_regions = regions;

  for (Eigen::Index r = 0; r < h; ++r) {
    for (Eigen::Index c = 0; c < w; ++c) {
      const Eigen::Index p = r * w + c;
      scene.pair.t1.values.row(p) = spectra[material(r, c)].transpose();
      scene.pair.t2.values.row(p) = scene.pair.t1.values.row(p);
    }
  }
  for (const Rect& rect : regions) {
    for (Eigen::Index r = rect.row; r < rect.row + rect.height; ++r) {
      for (Eigen::Index c = rect.col; c < rect.col + rect.width; ++c) {
        const int replacement = (material(r, c) + 1) % kNumEndmembers;
        scene.pair.t2.values.row(r * w + c) =
            config.change_magnitude * spectra[replacement].transpose();
        scene.mask.labels(r, c) = kChanged;
      }
    }
  }

  if (config.noise_sigma > 0.0) {
    std::normal_distribution<double> noise(0.0, config.noise_sigma);
    for (Eigen::Index p = 0; p < h * w; ++p) {
      for (Eigen::Index b = 0; b < d; ++b) {
        scene.pair.t1.values(p, b) += noise(rng);
      }
    }
    for (Eigen::Index p = 0; p < h * w; ++p) {
      for (Eigen::Index b = 0; b < d; ++b) {
        scene.pair.t2.values(p, b) += noise(rng);
      }
    }
  }
  return scene;
}

}  // namespace jmpt
