#pragma once

#include <filesystem>

#include "jmpt/types.hpp"

namespace jmpt {

// Raster format: a JSON header `<name>.json`
//   {"height":H,"width":W,"bands":D,"dtype":"f32"|"u8",
//    "interleave":"bsq","byte_order":"little"}
// next to a raw payload `<name>.bin` holding element (r,c,b) at flat index
// b*H*W + r*W + c, little-endian.

// Loads a cube from its header path. Payload values are f32 on disk and
// widened to double in memory. Throws DataError on a missing/unparsable
// header, a payload size mismatch, or any non-finite value.
HyperCube load_cube(const std::filesystem::path& header_path);

// Writes header + payload; load_cube(save_cube(x)) is bit-exact for cubes
// whose values are f32-representable.
void save_cube(const HyperCube& cube, const std::filesystem::path& header_path);

// Masks use dtype "u8" and a single band; labels outside {0,1,255} are
// rejected on load and save.
BinaryMask load_mask(const std::filesystem::path& header_path);
void save_mask(const BinaryMask& mask, const std::filesystem::path& header_path);

}  // namespace jmpt
