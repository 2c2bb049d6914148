#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace jmpt {

// Single-band real-valued image, indexed (row, col).
using Image = Eigen::MatrixXd;

// Integer-quantized gray image with levels in [0, 255].
using GrayImage = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Per-pixel nonnegative change score.
using ChangeMap = Eigen::MatrixXd;

using LabelMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

// Thrown for problems rooted in input data or files (maps to CLI exit 2).
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Hyperspectral cube of height x width x bands reflectance values.
// Spectra are stored pixel-major: values(r * width + c, b).
struct HyperCube {
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  Eigen::Index bands = 0;
  Eigen::MatrixXd values;  // (height * width) x bands

  Eigen::Index pixel_index(Eigen::Index r, Eigen::Index c) const {
    return r * width + c;
  }
  double at(Eigen::Index r, Eigen::Index c, Eigen::Index b) const {
    return values(pixel_index(r, c), b);
  }
  double& at(Eigen::Index r, Eigen::Index c, Eigen::Index b) {
    return values(pixel_index(r, c), b);
  }
  auto spectrum(Eigen::Index r, Eigen::Index c) const {
    return values.row(pixel_index(r, c));
  }
  // Band b as an H x W image.
  Image band(Eigen::Index b) const {
    return values.col(b).reshaped(width, height).transpose();
  }
};

inline HyperCube make_cube(Eigen::Index height, Eigen::Index width,
                           Eigen::Index bands) {
  if (height < 1 || width < 1 || bands < 1) {
    throw DataError("cube dimensions must all be >= 1, got " +
                    std::to_string(height) + "x" + std::to_string(width) + "x" +
                    std::to_string(bands));
  }
  HyperCube cube;
  cube.height = height;
  cube.width = width;
  cube.bands = bands;
  cube.values = Eigen::MatrixXd::Zero(height * width, bands);
  return cube;
}

// Throws DataError unless dims are >= 1, the value matrix matches them and
// every entry is finite.
inline void validate(const HyperCube& cube) {
  if (cube.height < 1 || cube.width < 1 || cube.bands < 1) {
    throw DataError("cube dimensions must all be >= 1");
  }
  if (cube.values.rows() != cube.height * cube.width ||
      cube.values.cols() != cube.bands) {
    throw DataError("cube value matrix does not match dimensions");
  }
  if (!cube.values.allFinite()) {
    for (Eigen::Index b = 0; b < cube.bands; ++b) {
      for (Eigen::Index p = 0; p < cube.values.rows(); ++p) {
        if (!std::isfinite(cube.values(p, b))) {
          throw DataError("non-finite value at (row " +
                          std::to_string(p / cube.width) + ", col " +
                          std::to_string(p % cube.width) + ", band " +
                          std::to_string(b) + ")");
        }
      }
    }
  }
}

// Co-registered scenes of the same geometry at two time instants.
struct BiTemporalPair {
  HyperCube t1;
  HyperCube t2;
};

inline void validate(const BiTemporalPair& pair) {
  validate(pair.t1);
  validate(pair.t2);
  if (pair.t1.height != pair.t2.height || pair.t1.width != pair.t2.width ||
      pair.t1.bands != pair.t2.bands) {
    throw DataError("bi-temporal scenes are not co-registered: " +
                    std::to_string(pair.t1.height) + "x" +
                    std::to_string(pair.t1.width) + "x" +
                    std::to_string(pair.t1.bands) + " vs " +
                    std::to_string(pair.t2.height) + "x" +
                    std::to_string(pair.t2.width) + "x" +
                    std::to_string(pair.t2.bands));
  }
}

inline constexpr std::uint8_t kUnchanged = 0;
inline constexpr std::uint8_t kChanged = 1;
inline constexpr std::uint8_t kIgnore = 255;

// Ground-truth / thresholded change labels: 0 unchanged, 1 changed, 255 ignore.
struct BinaryMask {
  Eigen::Index height = 0;
  Eigen::Index width = 0;
  LabelMatrix labels;  // height x width

  Eigen::Index count(std::uint8_t label) const {
    return (labels.array() == label).count();
  }
};

inline BinaryMask make_mask(Eigen::Index height, Eigen::Index width) {
  if (height < 1 || width < 1) {
    throw DataError("mask dimensions must be >= 1");
  }
  BinaryMask mask;
  mask.height = height;
  mask.width = width;
  mask.labels = LabelMatrix::Zero(height, width);
  return mask;
}

inline void validate(const BinaryMask& mask) {
  if (mask.height < 1 || mask.width < 1) {
    throw DataError("mask dimensions must be >= 1");
  }
  if (mask.labels.rows() != mask.height || mask.labels.cols() != mask.width) {
    throw DataError("mask label matrix does not match dimensions");
  }
  for (Eigen::Index r = 0; r < mask.height; ++r) {
    for (Eigen::Index c = 0; c < mask.width; ++c) {
      const std::uint8_t v = mask.labels(r, c);
      if (v != kUnchanged && v != kChanged && v != kIgnore) {
        throw DataError("mask label " + std::to_string(int(v)) + " at (row " +
                        std::to_string(r) + ", col " + std::to_string(c) +
                        ") is not one of {0, 1, 255}");
      }
    }
  }
}

}  // namespace jmpt
