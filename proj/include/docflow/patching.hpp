#pragma once

#include <vector>

#include "docflow/types.hpp"

namespace docflow {

/// One square local patch plus its enclosing global context patch.
/// The global patch is concentric with the local one, twice its side,
/// shifted (and if the image is too small, shrunk) to stay in bounds;
/// it always contains the local patch.
struct PatchSpec {
    int origin_x = 0;
    int origin_y = 0;
    int size = 0;
    int global_origin_x = 0;
    int global_origin_y = 0;
    int global_size = 0;

    int center_x() const { return origin_x + size / 2; }
    int center_y() const { return origin_y + size / 2; }
    bool contains(int x, int y) const {
        return x >= origin_x && x < origin_x + size && y >= origin_y && y < origin_y + size;
    }
};

/// Regular grid of overlapping patches covering the image. Stride is
/// round(0.75 * patch_size) (25% overlap per dimension); the last patch of
/// each row/column is shifted to end exactly at the image edge. Every pixel
/// is covered by at least 1 and at most 4 patches (at most 2 per dimension).
struct PatchGrid {
    int image_width = 0;
    int image_height = 0;
    int patch_size = 0;
    int stride = 0;
    int cols = 0;
    int rows = 0;
    std::vector<PatchSpec> patches;  // row-major by origin

    const PatchSpec& patch(int row, int col) const {
        return patches[static_cast<std::size_t>(row) * cols + col];
    }
    int patch_count() const { return static_cast<int>(patches.size()); }

    /// Patch ids covering pixel (x, y), in row-major grid order. Never more
    /// than four.
    void covering(int x, int y, int out[4], int& count) const;
};

PatchGrid build_grid(int width, int height, int patch_size);

/// Crop the local patch and the bilinearly resampled global patch.
std::pair<RasterImage, RasterImage> extract_patch(const RasterImage& img, const PatchSpec& spec,
                                                  int global_resolution = 256);

/// Subtract the flow value at the patch center (floor(w/2), floor(h/2)) so
/// the center displacement becomes exactly (0,0). Idempotent; constant
/// offsets cancel. Throws CenterInvalidError when the center is masked out.
template <typename Scalar>
FlowFieldT<Scalar> rereference_flow(const FlowFieldT<Scalar>& flow_patch) {
    if (flow_patch.empty()) throw SizeError("rereference_flow on empty flow");
    const int cx = flow_patch.width() / 2;
    const int cy = flow_patch.height() / 2;
    if (!flow_patch.mask(cy, cx)) throw CenterInvalidError("patch center is masked out");
    FlowFieldT<Scalar> out = flow_patch;
    const Scalar cu = flow_patch.u(cy, cx);
    const Scalar cv = flow_patch.v(cy, cx);
    out.u -= cu;
    out.v -= cv;
    out.enforce_mask_convention();
    out.u(cy, cx) = Scalar(0);
    out.v(cy, cx) = Scalar(0);
    return out;
}

/// Crop a rectangular window out of a flow field.
template <typename Scalar>
FlowFieldT<Scalar> crop_flow(const FlowFieldT<Scalar>& flow, int x0, int y0, int w, int h) {
    if (x0 < 0 || y0 < 0 || x0 + w > flow.width() || y0 + h > flow.height())
        throw SizeError("crop_flow window out of bounds");
    FlowFieldT<Scalar> out(w, h);
    out.u = flow.u.block(y0, x0, h, w);
    out.v = flow.v.block(y0, x0, h, w);
    out.mask = flow.mask.block(y0, x0, h, w);
    return out;
}

}  // namespace docflow
