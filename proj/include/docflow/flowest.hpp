#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "docflow/patching.hpp"
#include "docflow/types.hpp"

namespace docflow {

enum class EstimatorKind { Oracle, NoisyOracle, External };

/// How per-patch flows are produced. Oracle kinds crop the ground-truth
/// flow; External reads patch_<row>_<col>.dfl files from external_dir.
/// All randomness derives from seed.
struct EstimatorConfig {
    EstimatorKind kind = EstimatorKind::Oracle;
    float noise_sigma = 0.0f;   // i.i.d. Gaussian per pixel, in pixels
    float offset_sigma = 0.0f;  // one Gaussian constant per patch, in pixels
    std::uint64_t seed = 0;
    std::string external_dir;
};

EstimatorKind parse_estimator_kind(const std::string& name);
std::string to_string(EstimatorKind kind);

/// A patch-local, center-referenced flow for one grid cell.
struct PatchFlowEstimate {
    PatchSpec spec;
    FlowField flow;
};

/// Produce one estimate per grid patch, in grid order. Oracle kinds require
/// gt with the grid's image dimensions.
std::vector<PatchFlowEstimate> estimate_patches(const RasterImage& img, const PatchGrid& grid,
                                                const EstimatorConfig& cfg,
                                                const FlowField* gt = nullptr);

/// Endpoint error: Euclidean flow difference averaged over the pixels
/// masked-in in both fields.
template <typename Scalar>
double epe(const FlowFieldT<Scalar>& a, const FlowFieldT<Scalar>& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw DimMismatchError("epe flow dimensions");
    double acc = 0;
    long count = 0;
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) {
            if (!a.mask(y, x) || !b.mask(y, x)) continue;
            const double du = double(a.u(y, x)) - double(b.u(y, x));
            const double dv = double(a.v(y, x)) - double(b.v(y, x));
            acc += std::sqrt(du * du + dv * dv);
            ++count;
        }
    if (count == 0) throw EmptyMaskError("epe: no mutually masked-in pixels");
    return acc / double(count);
}

}  // namespace docflow
