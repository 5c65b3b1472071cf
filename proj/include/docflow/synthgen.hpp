#pragma once

#include <string>

#include "docflow/types.hpp"

namespace docflow {

enum class DistortionKind { Perspective, Curved, Folded };

DistortionKind parse_distortion_kind(const std::string& name);
std::string to_string(DistortionKind kind);

struct DistortionSpec {
    DistortionKind kind = DistortionKind::Perspective;
    std::uint64_t seed = 0;
    float magnitude = 0.3f;  // in [0,1]
    int creases = 2;         // folded only, in [1,4]
};

/// A desk-scale synthetic pair: the distortion is an analytic map from
/// distorted pixels to their flat-image source positions, so gt_flow is
/// exact. Distortions keep every source position inside the flat page
/// (the map is squeezed into bounds), hence the mask is normally all-true.
struct SyntheticSample {
    RasterImage flat;
    RasterImage distorted;
    FlowField gt_flow;  // distorted -> flat, rectified position = p + F(p)
    DistortionSpec spec;
};

/// Warp a flat page. Perspective draws a random homography with corner
/// displacements up to magnitude * 15% of the width; curved displaces y by
/// 2-4 low-frequency random sinusoids in x; folded applies a continuous
/// piecewise-affine warp whose gradient jumps across `creases` random
/// lines. magnitude 0 is the exact identity. Deterministic in spec.seed.
SyntheticSample generate(const RasterImage& flat, const DistortionSpec& spec);

/// Smooth random shading field in [0.4, 1.0].
Planef shading_field(int width, int height, std::uint64_t seed);

/// Scale the distorted image's luminance by shading_field(seed).
RasterImage generate_shaded(const SyntheticSample& sample, std::uint64_t seed);

/// The five built-in text-like test pages (line-pattern layouts), rendered
/// at any size. page_id wraps modulo 5.
RasterImage render_test_page(int page_id, int width, int height);

}  // namespace docflow
