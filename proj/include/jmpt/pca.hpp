#pragma once

#include "jmpt/types.hpp"

namespace jmpt {

// Projects every pixel spectrum onto the leading eigenvector of the band
// covariance (population divisor N). The eigenvector sign is fixed by making
// its largest-magnitude loading positive, so the output is deterministic.
// An all-identical cube yields the all-zeros image.
Image first_principal_component(const HyperCube& cube);

// Affine min-max rescale to [0, 255] with round-half-to-even; a constant
// image maps to all-128.
GrayImage quantize_to_gray(const Image& img);

}  // namespace jmpt
