#pragma once

#include <array>
#include <optional>

#include "docflow/types.hpp"

namespace docflow {

struct ResampleOptions {
    int max_iterations = 32;
    float tolerance = 0.05f;                       // pixels
    std::array<float, 3> fill = {1.0f, 1.0f, 1.0f};  // document-white background
};

/// Invert the forward flow at output point q by fixed-point iteration
///   p0 = q,  p_(i+1) = q - F(p_i)
/// with F sampled bilinearly and clamped at the borders. Returns the
/// converged source point, or nullopt when |p_(i+1) - p_i| stays above
/// tolerance for max_iterations (diverged is a value, not an error).
std::optional<Vec2f> backward_map(const FlowField& flow, const Vec2f& q,
                                  const ResampleOptions& opts);

struct ResampleStats {
    long diverged_pixels = 0;
    long filled_pixels = 0;  // diverged + out-of-bounds + masked-out
};

/// Backward-map every output pixel and fetch the color bilinearly from the
/// source. Output has the source dimensions; unmapped pixels take opts.fill.
/// Per-pixel independent, so results never depend on scheduling.
RasterImage rectify_image(const RasterImage& src, const FlowField& flow,
                          const ResampleOptions& opts, ResampleStats* stats = nullptr);

}  // namespace docflow
