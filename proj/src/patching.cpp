#include "docflow/patching.hpp"

#include <algorithm>

#include "docflow/image_ops.hpp"

namespace docflow {

namespace {

// Axis origins: 0, stride, 2*stride, ... with the last origin snapped to
// extent - patch. If the snap lands closer than patch - stride to its
// predecessor, the predecessor is dropped; otherwise a pixel near the edge
// could be covered by three patches along this axis.
std::vector<int> axis_origins(int extent, int patch, int stride) {
    std::vector<int> origins;
    const int last = extent - patch;
    for (int o = 0; o < last; o += stride) origins.push_back(o);
    origins.push_back(last);
    const int n = static_cast<int>(origins.size());
    if (n >= 2 && origins[n - 1] - origins[n - 2] < patch - stride)
        origins.erase(origins.end() - 2);
    return origins;
}

}  // namespace

void PatchGrid::covering(int x, int y, int out[4], int& count) const {
    count = 0;
    for (int id = 0; id < patch_count(); ++id) {
        const PatchSpec& p = patches[static_cast<std::size_t>(id)];
        if (p.contains(x, y)) {
            if (count < 4) out[count] = id;
            ++count;
        }
    }
    count = std::min(count, 4);
}

PatchGrid build_grid(int width, int height, int patch_size) {
    if (patch_size < 8) throw SizeError("patch_size must be >= 8");
    if (patch_size > std::min(width, height))
        throw SizeError("patch_size exceeds image dimension");

    PatchGrid grid;
    grid.image_width = width;
    grid.image_height = height;
    grid.patch_size = patch_size;
    grid.stride = static_cast<int>(std::lround(0.75 * patch_size));

    const std::vector<int> xs = axis_origins(width, patch_size, grid.stride);
    const std::vector<int> ys = axis_origins(height, patch_size, grid.stride);
    grid.cols = static_cast<int>(xs.size());
    grid.rows = static_cast<int>(ys.size());

    const int gsize = std::min(2 * patch_size, std::min(width, height));
    grid.patches.reserve(static_cast<std::size_t>(grid.cols) * grid.rows);
    for (int oy : ys)
        for (int ox : xs) {
            PatchSpec spec;
            spec.origin_x = ox;
            spec.origin_y = oy;
            spec.size = patch_size;
            spec.global_size = gsize;
            spec.global_origin_x =
                std::clamp(ox + patch_size / 2 - gsize / 2, 0, width - gsize);
            spec.global_origin_y =
                std::clamp(oy + patch_size / 2 - gsize / 2, 0, height - gsize);
            grid.patches.push_back(spec);
        }
    return grid;
}

std::pair<RasterImage, RasterImage> extract_patch(const RasterImage& img, const PatchSpec& spec,
                                                  int global_resolution) {
    RasterImage local(spec.size, spec.size, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        local.plane(c) = img.plane(c).block(spec.origin_y, spec.origin_x, spec.size, spec.size);

    RasterImage global_crop(spec.global_size, spec.global_size, img.channels());
    for (int c = 0; c < img.channels(); ++c)
        global_crop.plane(c) = img.plane(c).block(spec.global_origin_y, spec.global_origin_x,
                                                  spec.global_size, spec.global_size);
    return {std::move(local), resize_bilinear(global_crop, global_resolution, global_resolution)};
}

}  // namespace docflow
