#pragma once

#include <algorithm>
#include <cmath>

#include "docflow/types.hpp"

namespace docflow {

/// Bilinear lookup with border clamp. Integer coordinates return the exact
/// stored sample.
template <typename Scalar>
Scalar sample_bilinear(const PlaneT<Scalar>& plane, Scalar x, Scalar y) {
    const int w = static_cast<int>(plane.cols());
    const int h = static_cast<int>(plane.rows());
    x = std::clamp(x, Scalar(0), Scalar(w - 1));
    y = std::clamp(y, Scalar(0), Scalar(h - 1));
    const int x0 = static_cast<int>(x);
    const int y0 = static_cast<int>(y);
    const int x1 = std::min(x0 + 1, w - 1);
    const int y1 = std::min(y0 + 1, h - 1);
    // fx, fy in [0,1); zero weights make integer lookups exact
    const Scalar fx = x - Scalar(x0);
    const Scalar fy = y - Scalar(y0);
    const Scalar top = plane(y0, x0) + fx * (plane(y0, x1) - plane(y0, x0));
    const Scalar bot = plane(y1, x0) + fx * (plane(y1, x1) - plane(y1, x0));
    return top + fy * (bot - top);
}

/// Aspect-agnostic bilinear resize of one plane. Sample positions map the
/// output pixel grid linearly onto the input grid (corner-aligned).
template <typename Scalar>
PlaneT<Scalar> resize_bilinear(const PlaneT<Scalar>& src, int out_w, int out_h) {
    const int w = static_cast<int>(src.cols());
    const int h = static_cast<int>(src.rows());
    if (out_w < 1 || out_h < 1) throw SizeError("resize target must be >= 1");
    PlaneT<Scalar> out(out_h, out_w);
    const Scalar sx = out_w > 1 ? Scalar(w - 1) / Scalar(out_w - 1) : Scalar(0);
    const Scalar sy = out_h > 1 ? Scalar(h - 1) / Scalar(out_h - 1) : Scalar(0);
    for (int y = 0; y < out_h; ++y)
        for (int x = 0; x < out_w; ++x)
            out(y, x) = sample_bilinear(src, Scalar(x) * sx, Scalar(y) * sy);
    return out;
}

template <typename Scalar>
ImageT<Scalar> resize_bilinear(const ImageT<Scalar>& src, int out_w, int out_h) {
    ImageT<Scalar> out(out_w, out_h, src.channels());
    for (int c = 0; c < src.channels(); ++c)
        out.plane(c) = resize_bilinear(src.plane(c), out_w, out_h);
    return out;
}

/// Rec. 601 luma. Gray images return the single plane.
template <typename Scalar>
PlaneT<Scalar> luminance(const ImageT<Scalar>& img) {
    if (img.channels() == 1) return img.plane(0);
    return Scalar(0.299) * img.plane(0) + Scalar(0.587) * img.plane(1) +
           Scalar(0.114) * img.plane(2);
}

/// Erode a 0/1 mask by r pixels (separable min over a (2r+1) square).
MaskPlane erode_mask(const MaskPlane& mask, int r);

/// Box blur with a (2r+1) square window, borders clamped by window
/// truncation (mean over the in-image part).
Planef box_blur(const Planef& src, int r);

/// Separable sliding-window min / max filters over a (2r+1) square.
Planef min_filter(const Planef& src, int r);
Planef max_filter(const Planef& src, int r);

/// Grayscale morphological closing (dilate then erode).
Planef morph_close(const Planef& src, int r);

/// Mean squared error over masked-in pixels of two same-size images.
/// Throws EmptyMaskError when the mask selects nothing.
double masked_mse(const RasterImage& a, const RasterImage& b, const MaskPlane& mask);

/// Peak signal-to-noise ratio in dB over masked-in pixels, optionally after
/// eroding the mask. Values in [0,1]; identical inputs return +inf.
double psnr(const RasterImage& a, const RasterImage& b, const MaskPlane& mask,
            int erode_px = 0);

}  // namespace docflow
