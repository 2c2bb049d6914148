#pragma once

#include <vector>

#include "jmpt/tensor3.hpp"
#include "jmpt/tucker.hpp"
#include "jmpt/types.hpp"

namespace jmpt {

// Non-overlapping w x w x D blocks tiled over the cube, row-major over the
// grid. Trailing rows/cols that do not fill a whole patch are left out.
struct PatchGrid {
  Eigen::Index patch_size = 0;  // w
  Eigen::Index rows = 0;        // floor(H / w)
  Eigen::Index cols = 0;        // floor(W / w)
  Eigen::Index bands = 0;
  // patches[i * cols + j] is (w*w) x D with patch pixels in row-major order.
  std::vector<Eigen::MatrixXd> patches;
};

PatchGrid patchify(const HyperCube& cube, Eigen::Index patch_size);

// Stacks each patch's pixel x band matrix as one slice: dims (w*w, D, rows*cols).
Tensor3 fold_to_tensor(const PatchGrid& grid);
PatchGrid unfold_to_grid(const Tensor3& t, Eigen::Index patch_size,
                         Eigen::Index rows, Eigen::Index cols);

// Writes the tensor's patches back over the covered region; pixels outside it
// are copied verbatim from `original`, so the output has the original's size.
HyperCube unpatchify(const Tensor3& t, Eigen::Index patch_size,
                     const HyperCube& original);

// patchify -> fold -> rank-min(I1,I2,I3) Tucker -> reconstruct -> unpatchify.
HyperCube denoise_cube(const HyperCube& cube, Eigen::Index patch_size,
                       const AlsOptions& options = {});

}  // namespace jmpt
