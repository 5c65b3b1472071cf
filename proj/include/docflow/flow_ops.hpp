#pragma once

#include <algorithm>
#include <cmath>

#include "docflow/image_ops.hpp"
#include "docflow/types.hpp"

namespace docflow {

/// Forward-difference gradient of a flow field. The sample beyond the last
/// column/row is replicate-padded, so the final difference column/row copies
/// its in-image neighbor. Constant offsets of the flow leave the result
/// unchanged; that invariance is what makes gradient-domain stitching work.
template <typename Scalar>
GradientFieldT<Scalar> gradient(const FlowFieldT<Scalar>& flow) {
    const int w = flow.width();
    const int h = flow.height();
    if (w < 2 || h < 2) throw SizeError("gradient needs width and height >= 2");
    GradientFieldT<Scalar> g(w, h);
    auto fill = [&](const PlaneT<Scalar>& f, PlaneT<Scalar>& gx, PlaneT<Scalar>& gy) {
        gx.block(0, 0, h, w - 1) = f.block(0, 1, h, w - 1) - f.block(0, 0, h, w - 1);
        gx.col(w - 1) = gx.col(w - 2);
        gy.block(0, 0, h - 1, w) = f.block(1, 0, h - 1, w) - f.block(0, 0, h - 1, w);
        gy.row(h - 1) = gy.row(h - 2);
    };
    fill(flow.u, g.gx_u, g.gy_u);
    fill(flow.v, g.gx_v, g.gy_v);
    return g;
}

/// Encode a flow as an RGB image: R and G hold the absolute target
/// coordinates normalized by the reference size, B holds the mask.
template <typename Scalar>
ImageT<Scalar> flow_to_rgb(const FlowFieldT<Scalar>& flow, int ref_width, int ref_height) {
    const int w = flow.width();
    const int h = flow.height();
    ImageT<Scalar> img(w, h, 3);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const Scalar r = (Scalar(x) + flow.u(y, x)) / Scalar(ref_width);
            const Scalar g = (Scalar(y) + flow.v(y, x)) / Scalar(ref_height);
            img.planes[0](y, x) = std::clamp(r, Scalar(0), Scalar(1));
            img.planes[1](y, x) = std::clamp(g, Scalar(0), Scalar(1));
            img.planes[2](y, x) = flow.mask(y, x) ? Scalar(1) : Scalar(0);
        }
    return img;
}

/// Inverse of flow_to_rgb. B <= 0.5 marks the pixel masked-out (u = v = 0).
template <typename Scalar>
FlowFieldT<Scalar> rgb_to_flow(const ImageT<Scalar>& img, int ref_width, int ref_height) {
    if (img.channels() < 3) throw FormatError("rgb_to_flow needs >= 3 channels");
    const int w = img.width();
    const int h = img.height();
    FlowFieldT<Scalar> flow(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const bool in = img.planes[2](y, x) > Scalar(0.5);
            flow.mask(y, x) = in ? 1 : 0;
            flow.u(y, x) = in ? img.planes[0](y, x) * Scalar(ref_width) - Scalar(x) : Scalar(0);
            flow.v(y, x) = in ? img.planes[1](y, x) * Scalar(ref_height) - Scalar(y) : Scalar(0);
        }
    return flow;
}

/// Resize a flow to new dimensions: components resampled bilinearly and
/// scaled so displacements stay proportional to the new pixel grid.
/// Mask resampled by nearest neighbor.
template <typename Scalar>
FlowFieldT<Scalar> resize_flow(const FlowFieldT<Scalar>& flow, int out_w, int out_h) {
    const Scalar su = Scalar(out_w) / Scalar(flow.width());
    const Scalar sv = Scalar(out_h) / Scalar(flow.height());
    FlowFieldT<Scalar> out(out_w, out_h);
    out.u = resize_bilinear(flow.u, out_w, out_h) * su;
    out.v = resize_bilinear(flow.v, out_w, out_h) * sv;
    const Scalar sx = out_w > 1 ? Scalar(flow.width() - 1) / Scalar(out_w - 1) : Scalar(0);
    const Scalar sy = out_h > 1 ? Scalar(flow.height() - 1) / Scalar(out_h - 1) : Scalar(0);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x) {
            const int ix = static_cast<int>(std::lround(Scalar(x) * sx));
            const int iy = static_cast<int>(std::lround(Scalar(y) * sy));
            out.mask(y, x) = flow.mask(std::clamp(iy, 0, flow.height() - 1),
                                       std::clamp(ix, 0, flow.width() - 1));
        }
    out.enforce_mask_convention();
    return out;
}

/// Block-average a plane into f x f cells; output dims are floor(dim / f).
template <typename Scalar>
PlaneT<Scalar> downsample_block(const PlaneT<Scalar>& src, int f) {
    const int wc = static_cast<int>(src.cols()) / f;
    const int hc = static_cast<int>(src.rows()) / f;
    if (f < 1 || wc < 1 || hc < 1) throw SizeError("downsample_block factor/dims");
    PlaneT<Scalar> out(hc, wc);
    const Scalar inv = Scalar(1) / Scalar(f * f);
    for (int y = 0; y < hc; ++y)
        for (int x = 0; x < wc; ++x)
            out(y, x) = src.block(y * f, x * f, f, f).sum() * inv;
    return out;
}

/// Block-average flow values over f x f cells. Displacement units are
/// unchanged (still original-resolution pixels). A coarse pixel is masked-in
/// only when its whole block is; its value averages the masked-in samples.
template <typename Scalar>
FlowFieldT<Scalar> downsample_flow_block(const FlowFieldT<Scalar>& flow, int f) {
    const int wc = flow.width() / f;
    const int hc = flow.height() / f;
    if (f < 1 || wc < 1 || hc < 1) throw SizeError("downsample_flow_block factor/dims");
    FlowFieldT<Scalar> out(wc, hc);
    for (int y = 0; y < hc; ++y)
        for (int x = 0; x < wc; ++x) {
            Scalar su = 0, sv = 0;
            int in = 0;
            for (int by = 0; by < f; ++by)
                for (int bx = 0; bx < f; ++bx) {
                    const int yy = y * f + by, xx = x * f + bx;
                    if (!flow.mask(yy, xx)) continue;
                    su += flow.u(yy, xx);
                    sv += flow.v(yy, xx);
                    ++in;
                }
            const bool full = in == f * f;
            out.mask(y, x) = full ? 1 : 0;
            out.u(y, x) = in > 0 && full ? su / Scalar(in) : Scalar(0);
            out.v(y, x) = in > 0 && full ? sv / Scalar(in) : Scalar(0);
        }
    return out;
}

/// Bilinear upsample of a coarse plane whose samples sit at f x f block
/// centers of the full grid. Borders extrapolate linearly so linear fields
/// are reproduced exactly.
template <typename Scalar>
PlaneT<Scalar> upsample_block_centers(const PlaneT<Scalar>& coarse, int f, int out_w,
                                      int out_h) {
    const int wc = static_cast<int>(coarse.cols());
    const int hc = static_cast<int>(coarse.rows());
    PlaneT<Scalar> out(out_h, out_w);
    const Scalar off = Scalar(f - 1) / Scalar(2);
    for (int y = 0; y < out_h; ++y) {
        const Scalar yc = (Scalar(y) - off) / Scalar(f);
        const int y0 = std::clamp(static_cast<int>(std::floor(yc)), 0, std::max(hc - 2, 0));
        const int y1 = std::min(y0 + 1, hc - 1);
        const Scalar ty = hc > 1 ? yc - Scalar(y0) : Scalar(0);
        for (int x = 0; x < out_w; ++x) {
            const Scalar xc = (Scalar(x) - off) / Scalar(f);
            const int x0 = std::clamp(static_cast<int>(std::floor(xc)), 0, std::max(wc - 2, 0));
            const int x1 = std::min(x0 + 1, wc - 1);
            const Scalar tx = wc > 1 ? xc - Scalar(x0) : Scalar(0);
            const Scalar top = coarse(y0, x0) + tx * (coarse(y0, x1) - coarse(y0, x0));
            const Scalar bot = coarse(y1, x0) + tx * (coarse(y1, x1) - coarse(y1, x0));
            out(y, x) = top + ty * (bot - top);
        }
    }
    return out;
}

}  // namespace docflow
