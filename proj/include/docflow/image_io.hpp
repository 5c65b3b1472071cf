#pragma once

#include <string>

#include "docflow/types.hpp"

namespace docflow {

/// Decode an 8-bit PNG (gray, RGB, RGBA; palette and 16-bit inputs are
/// converted). Samples normalized to [0,1].
RasterImage load_image(const std::string& path);

/// Write an 8-bit PNG; 1, 3 or 4 channels. Round trip is exact within
/// 8-bit quantization (+-1/255 per sample).
void save_image(const RasterImage& img, const std::string& path);

/// Binary flow file, little-endian:
///   magic "DFL1" | width u32 | height u32 |
///   width*height*2 float32 interleaved (u,v) row-major |
///   width*height mask bytes (0/1)
/// Round trip is bit-exact.
void save_flow(const FlowField& flow, const std::string& path);
FlowField load_flow(const std::string& path);

}  // namespace docflow
