#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <utility>
#include <vector>

#include "docflow/errors.hpp"

namespace docflow {

/// Row-major dense plane; the storage unit for image channels, flow
/// components, gradients and masks. Indexed as plane(y, x).
template <typename Scalar>
using PlaneT = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Planef = PlaneT<float>;
using Planed = PlaneT<double>;
using MaskPlane = PlaneT<std::uint8_t>;

using Vec2f = Eigen::Vector2f;
using Vec2d = Eigen::Vector2d;

/// Multi-channel raster with samples in [0,1]. Channels are stored as
/// separate planes (1 = gray, 3 = RGB, 4 = RGBA).
template <typename Scalar>
struct ImageT {
    std::vector<PlaneT<Scalar>> planes;

    ImageT() = default;

    ImageT(int width, int height, int channels, Scalar fill = Scalar(0)) {
        if (width < 1 || height < 1)
            throw SizeError("image dimensions must be >= 1");
        if (channels != 1 && channels != 3 && channels != 4)
            throw SizeError("image channels must be 1, 3 or 4");
        planes.assign(static_cast<std::size_t>(channels),
                      PlaneT<Scalar>::Constant(height, width, fill));
    }

    int width() const { return planes.empty() ? 0 : static_cast<int>(planes[0].cols()); }
    int height() const { return planes.empty() ? 0 : static_cast<int>(planes[0].rows()); }
    int channels() const { return static_cast<int>(planes.size()); }
    bool empty() const { return planes.empty(); }

    PlaneT<Scalar>& plane(int c) { return planes[static_cast<std::size_t>(c)]; }
    const PlaneT<Scalar>& plane(int c) const { return planes[static_cast<std::size_t>(c)]; }

    Scalar& at(int x, int y, int c) { return plane(c)(y, x); }
    Scalar at(int x, int y, int c) const { return plane(c)(y, x); }
};

using RasterImage = ImageT<float>;

/// Per-pixel 2D displacement in pixels plus a validity mask. Masked-out
/// pixels carry u = v = 0.
template <typename Scalar>
struct FlowFieldT {
    PlaneT<Scalar> u, v;
    MaskPlane mask;

    FlowFieldT() = default;

    FlowFieldT(int width, int height) {
        if (width < 1 || height < 1)
            throw SizeError("flow dimensions must be >= 1");
        u = PlaneT<Scalar>::Zero(height, width);
        v = PlaneT<Scalar>::Zero(height, width);
        mask = MaskPlane::Constant(height, width, 1);
    }

    int width() const { return static_cast<int>(u.cols()); }
    int height() const { return static_cast<int>(u.rows()); }
    bool empty() const { return u.size() == 0; }

    bool valid(int x, int y) const { return mask(y, x) != 0; }

    /// Zero the displacement on masked-out pixels (type convention).
    void enforce_mask_convention() {
        u = (mask != std::uint8_t(0)).template cast<Scalar>() * u;
        v = (mask != std::uint8_t(0)).template cast<Scalar>() * v;
    }
};

using FlowField = FlowFieldT<float>;

/// Per-pixel partial derivatives (Ux, Uy, Vx, Vy) of a flow field,
/// in pixels per pixel. The currency of gradient-domain stitching.
template <typename Scalar>
struct GradientFieldT {
    PlaneT<Scalar> gx_u, gy_u, gx_v, gy_v;

    GradientFieldT() = default;

    GradientFieldT(int width, int height) {
        if (width < 1 || height < 1)
            throw SizeError("gradient dimensions must be >= 1");
        gx_u = PlaneT<Scalar>::Zero(height, width);
        gy_u = PlaneT<Scalar>::Zero(height, width);
        gx_v = PlaneT<Scalar>::Zero(height, width);
        gy_v = PlaneT<Scalar>::Zero(height, width);
    }

    int width() const { return static_cast<int>(gx_u.cols()); }
    int height() const { return static_cast<int>(gx_u.rows()); }
    bool empty() const { return gx_u.size() == 0; }
};

using GradientField = GradientFieldT<float>;

}  // namespace docflow
