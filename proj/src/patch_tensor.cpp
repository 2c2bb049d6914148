#include "jmpt/patch_tensor.hpp"

#include <algorithm>

namespace jmpt {

PatchGrid patchify(const HyperCube& cube, Eigen::Index patch_size) {
  validate(cube);
  if (patch_size < 1 || patch_size > std::min(cube.height, cube.width)) {
    throw DataError("patch size " + std::to_string(patch_size) +
                    " does not fit a " + std::to_string(cube.height) + "x" +
                    std::to_string(cube.width) + " image");
  }
  PatchGrid grid;
  grid.patch_size = patch_size;
  grid.rows = cube.height / patch_size;
  grid.cols = cube.width / patch_size;
  grid.bands = cube.bands;
  grid.patches.reserve(grid.rows * grid.cols);
  const Eigen::Index w = patch_size;
  for (Eigen::Index i = 0; i < grid.rows; ++i) {
    for (Eigen::Index j = 0; j < grid.cols; ++j) {
      Eigen::MatrixXd patch(w * w, cube.bands);
      for (Eigen::Index u = 0; u < w; ++u) {
        for (Eigen::Index v = 0; v < w; ++v) {
          patch.row(u * w + v) =
              cube.values.row((i * w + u) * cube.width + (j * w + v));
        }
      }
      grid.patches.push_back(std::move(patch));
    }
  }
  return grid;
}

Tensor3 fold_to_tensor(const PatchGrid& grid) {
  if (grid.patches.empty()) {
    throw DataError("empty patch grid");
  }
  const Eigen::Index i1 = grid.patch_size * grid.patch_size;
  const Eigen::Index i2 = grid.bands;
  const Eigen::Index i3 = grid.rows * grid.cols;
  Tensor3 t(i1, i2, i3);
  for (Eigen::Index k = 0; k < i3; ++k) {
    const Eigen::MatrixXd& patch = grid.patches[k];
    if (patch.rows() != i1 || patch.cols() != i2) {
      throw DataError("patch " + std::to_string(k) + " has unexpected shape");
    }
    for (Eigen::Index b = 0; b < i2; ++b) {
      for (Eigen::Index p = 0; p < i1; ++p) {
        t(p, b, k) = patch(p, b);
      }
    }
  }
  return t;
}

PatchGrid unfold_to_grid(const Tensor3& t, Eigen::Index patch_size,
                         Eigen::Index rows, Eigen::Index cols) {
  if (t.dim(0) != patch_size * patch_size || t.dim(2) != rows * cols) {
    throw DataError("tensor dimensions do not match the patch geometry");
  }
  PatchGrid grid;
  grid.patch_size = patch_size;
  grid.rows = rows;
  grid.cols = cols;
  grid.bands = t.dim(1);
  grid.patches.reserve(rows * cols);
  for (Eigen::Index k = 0; k < rows * cols; ++k) {
    Eigen::MatrixXd patch(t.dim(0), t.dim(1));
    for (Eigen::Index b = 0; b < t.dim(1); ++b) {
      for (Eigen::Index p = 0; p < t.dim(0); ++p) {
        patch(p, b) = t(p, b, k);
      }
    }
    grid.patches.push_back(std::move(patch));
  }
  return grid;
}

HyperCube unpatchify(const Tensor3& t, Eigen::Index patch_size,
                     const HyperCube& original) {
  validate(original);
  const Eigen::Index w = patch_size;
  if (w < 1 || w > std::min(original.height, original.width)) {
    throw DataError("patch size does not fit the original cube");
  }
  const Eigen::Index rows = original.height / w;
  const Eigen::Index cols = original.width / w;
  if (t.dim(0) != w * w || t.dim(1) != original.bands ||
      t.dim(2) != rows * cols) {
    throw DataError("tensor dimensions do not match the original geometry");
  }
  HyperCube out = original;  // boundary fill: uncovered pixels stay verbatim
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Eigen::Index k = i * cols + j;
      for (Eigen::Index u = 0; u < w; ++u) {
        for (Eigen::Index v = 0; v < w; ++v) {
          const Eigen::Index pixel = (i * w + u) * original.width + (j * w + v);
          for (Eigen::Index b = 0; b < original.bands; ++b) {
            out.values(pixel, b) = t(u * w + v, b, k);
          }
        }
      }
    }
  }
  return out;
}

HyperCube denoise_cube(const HyperCube& cube, Eigen::Index patch_size,
                       const AlsOptions& options) {
  const PatchGrid grid = patchify(cube, patch_size);
  const Tensor3 x = fold_to_tensor(grid);
  const Eigen::Index rank = std::min({x.dim(0), x.dim(1), x.dim(2)});
  const TuckerFactors factors = tucker_als(x, rank, options);
  const Tensor3 reconstructed = tucker_reconstruct(factors);
  return unpatchify(reconstructed, patch_size, cube);
}

}  // namespace jmpt
