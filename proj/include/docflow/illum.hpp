#pragma once

#include <vector>

#include "docflow/patching.hpp"
#include "docflow/types.hpp"

namespace docflow {

/// Per-patch blending weights: separable linear ramps over each overlap
/// band. At every image pixel the weights of the covering patches sum to 1.
std::vector<Planef> blend_weights(const PatchGrid& grid);

/// Recombine per-patch images into the full image as a per-pixel convex
/// combination with ramp weights; non-overlap regions copy verbatim.
RasterImage blend_patches(const PatchGrid& grid, const std::vector<RasterImage>& patches);

/// Sauvola adaptive threshold T = m (1 + k (s/R - 1)) with local mean m and
/// stddev s over an odd window, R = 0.5 in normalized units. Integral-image
/// implementation. Returns a 1-channel image with samples in {0, 1}.
RasterImage sauvola_binarize(const RasterImage& img, int window = 31, float k = 0.2f);

/// Divide-by-estimated-background shading removal: the background is a
/// morphological closing of the luminance followed by a box blur; luminance
/// is rescaled, chroma kept.
RasterImage remove_shading(const RasterImage& img, int blur_radius = 16);

}  // namespace docflow
