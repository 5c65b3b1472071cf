#include "docflow/flowest.hpp"

#include <filesystem>
#include <random>

#include "docflow/image_io.hpp"
#include "docflow/util.hpp"

namespace docflow {

EstimatorKind parse_estimator_kind(const std::string& name) {
    if (name == "oracle") return EstimatorKind::Oracle;
    if (name == "noisy-oracle") return EstimatorKind::NoisyOracle;
    if (name == "external") return EstimatorKind::External;
    throw ConfigError("unknown estimator kind: " + name);
}

std::string to_string(EstimatorKind kind) {
    switch (kind) {
        case EstimatorKind::Oracle: return "oracle";
        case EstimatorKind::NoisyOracle: return "noisy-oracle";
        case EstimatorKind::External: return "external";
    }
    return "?";
}

namespace {

// Fill masked-out samples with the value of the nearest (city-block) valid
// pixel, sweeping forward then backward. Estimates are dense by contract;
// only oracle crops of partially masked ground truth need this.
void densify(FlowField& f) {
    const int w = f.width(), h = f.height();
    bool any = false, all = true;
    for (int y = 0; y < h && !(any && !all); ++y)
        for (int x = 0; x < w; ++x) {
            if (f.mask(y, x)) any = true;
            else all = false;
        }
    if (all) return;
    if (!any) return;  // leave an all-invalid patch zeroed

    Planef dist = Planef::Constant(h, w, 1e30f);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (f.mask(y, x)) dist(y, x) = 0.0f;
    auto relax = [&](int y, int x, int py, int px) {
        if (py < 0 || px < 0 || py >= h || px >= w) return;
        if (dist(py, px) + 1.0f < dist(y, x)) {
            dist(y, x) = dist(py, px) + 1.0f;
            f.u(y, x) = f.u(py, px);
            f.v(y, x) = f.v(py, px);
        }
    };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            relax(y, x, y - 1, x);
            relax(y, x, y, x - 1);
        }
    for (int y = h - 1; y >= 0; --y)
        for (int x = w - 1; x >= 0; --x) {
            relax(y, x, y + 1, x);
            relax(y, x, y, x + 1);
        }
    f.mask.setConstant(1);
}

FlowField oracle_patch(const FlowField& gt, const PatchSpec& spec) {
    FlowField crop = crop_flow(gt, spec.origin_x, spec.origin_y, spec.size, spec.size);
    densify(crop);
    return rereference_flow(crop);
}

}  // namespace

std::vector<PatchFlowEstimate> estimate_patches(const RasterImage& img, const PatchGrid& grid,
                                                const EstimatorConfig& cfg, const FlowField* gt) {
    if (cfg.noise_sigma < 0 || cfg.offset_sigma < 0)
        throw ConfigError("noise_sigma and offset_sigma must be >= 0");
    const bool needs_gt =
        cfg.kind == EstimatorKind::Oracle || cfg.kind == EstimatorKind::NoisyOracle;
    if (needs_gt) {
        if (gt == nullptr) throw MissingGroundTruthError("oracle estimator requires gt flow");
        if (gt->width() != grid.image_width || gt->height() != grid.image_height)
            throw DimMismatchError("gt flow does not match grid image dimensions");
    }
    (void)img;  // oracle providers work on flows only

    std::vector<PatchFlowEstimate> out(static_cast<std::size_t>(grid.patch_count()));
    parallel_for(0, grid.patch_count(), [&](int id) {
        const PatchSpec& spec = grid.patches[static_cast<std::size_t>(id)];
        PatchFlowEstimate est;
        est.spec = spec;
        switch (cfg.kind) {
            case EstimatorKind::Oracle:
                est.flow = oracle_patch(*gt, spec);
                break;
            case EstimatorKind::NoisyOracle: {
                FlowField noisy = oracle_patch(*gt, spec);
                std::mt19937_64 rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(id)));
                std::normal_distribution<float> n01(0.0f, 1.0f);
                const float off_u = cfg.offset_sigma * n01(rng);
                const float off_v = cfg.offset_sigma * n01(rng);
                for (int y = 0; y < noisy.height(); ++y)
                    for (int x = 0; x < noisy.width(); ++x) {
                        noisy.u(y, x) += off_u + cfg.noise_sigma * n01(rng);
                        noisy.v(y, x) += off_v + cfg.noise_sigma * n01(rng);
                    }
                est.flow = rereference_flow(noisy);
                break;
            }
            case EstimatorKind::External: {
                const int row = id / grid.cols;
                const int col = id % grid.cols;
                const std::string path = cfg.external_dir + "/patch_" + std::to_string(row) +
                                         "_" + std::to_string(col) + ".dfl";
                if (!std::filesystem::exists(path)) throw MissingExternalFileError(path);
                FlowField f = load_flow(path);
                if (f.width() != spec.size || f.height() != spec.size)
                    throw DimMismatchError("external patch flow size: " + path);
                est.flow = rereference_flow(f);
                break;
            }
        }
        out[static_cast<std::size_t>(id)] = std::move(est);
    });
    return out;
}

}  // namespace docflow
