#include "docflow/illum.hpp"

#include <cmath>

#include "docflow/image_ops.hpp"

namespace docflow {

namespace {

// Weight along one axis for the patch at grid index c among the sorted
// per-axis origins. Ramps 0..1 across the overlap with the previous patch
// and 1..0 across the overlap with the next one, hitting the endpoints
// exactly so paired weights sum to 1.
float axis_weight(const std::vector<int>& origins, int patch, int c, int x) {
    const int o = origins[static_cast<std::size_t>(c)];
    if (c > 0) {
        const int prev_end = origins[static_cast<std::size_t>(c - 1)] + patch;
        if (x < prev_end) {
            const int n = prev_end - o;
            return n == 1 ? 0.5f : float(x - o) / float(n - 1);
        }
    }
    if (c + 1 < static_cast<int>(origins.size())) {
        const int next_o = origins[static_cast<std::size_t>(c + 1)];
        if (x >= next_o) {
            const int n = o + patch - next_o;
            return n == 1 ? 0.5f : float(o + patch - 1 - x) / float(n - 1);
        }
    }
    return 1.0f;
}

std::vector<int> col_origins(const PatchGrid& grid) {
    std::vector<int> xs(static_cast<std::size_t>(grid.cols));
    for (int c = 0; c < grid.cols; ++c) xs[static_cast<std::size_t>(c)] = grid.patch(0, c).origin_x;
    return xs;
}

std::vector<int> row_origins(const PatchGrid& grid) {
    std::vector<int> ys(static_cast<std::size_t>(grid.rows));
    for (int r = 0; r < grid.rows; ++r) ys[static_cast<std::size_t>(r)] = grid.patch(r, 0).origin_y;
    return ys;
}

}  // namespace

std::vector<Planef> blend_weights(const PatchGrid& grid) {
    const std::vector<int> xs = col_origins(grid);
    const std::vector<int> ys = row_origins(grid);
    const int p = grid.patch_size;
    std::vector<Planef> weights(static_cast<std::size_t>(grid.patch_count()));
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c) {
            Planef wp(p, p);
            for (int ly = 0; ly < p; ++ly) {
                const float wy = axis_weight(ys, p, r, ys[static_cast<std::size_t>(r)] + ly);
                for (int lx = 0; lx < p; ++lx) {
                    const float wx = axis_weight(xs, p, c, xs[static_cast<std::size_t>(c)] + lx);
                    wp(ly, lx) = wx * wy;
                }
            }
            weights[static_cast<std::size_t>(r) * grid.cols + c] = std::move(wp);
        }
    return weights;
}

RasterImage blend_patches(const PatchGrid& grid, const std::vector<RasterImage>& patches) {
    if (static_cast<int>(patches.size()) != grid.patch_count())
        throw CountMismatchError("blend_patches: patches vs grid");
    const int channels = patches.empty() ? 3 : patches[0].channels();
    for (const RasterImage& p : patches)
        if (p.width() != grid.patch_size || p.height() != grid.patch_size ||
            p.channels() != channels)
            throw DimMismatchError("blend_patches: patch shape");

    const std::vector<Planef> weights = blend_weights(grid);
    RasterImage out(grid.image_width, grid.image_height, channels, 0.0f);
    for (int id = 0; id < grid.patch_count(); ++id) {
        const PatchSpec& spec = grid.patches[static_cast<std::size_t>(id)];
        const Planef& wp = weights[static_cast<std::size_t>(id)];
        for (int c = 0; c < channels; ++c)
            out.plane(c).block(spec.origin_y, spec.origin_x, spec.size, spec.size) +=
                wp * patches[static_cast<std::size_t>(id)].plane(c);
    }
    return out;
}

RasterImage sauvola_binarize(const RasterImage& img, int window, float k) {
    if (window < 3 || window % 2 == 0)
        throw BadWindowError("sauvola window must be odd and >= 3");
    const int w = img.width(), h = img.height();
    const Planef lum = luminance(img);

    // integral images with a zero top row / left column
    Planed sum = Planed::Zero(h + 1, w + 1);
    Planed sum2 = Planed::Zero(h + 1, w + 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double v = lum(y, x);
            sum(y + 1, x + 1) = v + sum(y, x + 1) + sum(y + 1, x) - sum(y, x);
            sum2(y + 1, x + 1) = v * v + sum2(y, x + 1) + sum2(y + 1, x) - sum2(y, x);
        }

    const int r = window / 2;
    const double R = 0.5;
    RasterImage out(w, h, 1);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - r), x1 = std::min(w - 1, x + r);
            const int y0 = std::max(0, y - r), y1 = std::min(h - 1, y + r);
            const double n = double(x1 - x0 + 1) * (y1 - y0 + 1);
            const double s1 = sum(y1 + 1, x1 + 1) - sum(y0, x1 + 1) - sum(y1 + 1, x0) + sum(y0, x0);
            const double s2 =
                sum2(y1 + 1, x1 + 1) - sum2(y0, x1 + 1) - sum2(y1 + 1, x0) + sum2(y0, x0);
            const double mean = s1 / n;
            const double var = std::max(0.0, s2 / n - mean * mean);
            const double stddev = std::sqrt(var);
            const double threshold = mean * (1.0 + double(k) * (stddev / R - 1.0));
            out.plane(0)(y, x) = double(lum(y, x)) >= threshold ? 1.0f : 0.0f;
        }
    return out;
}

RasterImage remove_shading(const RasterImage& img, int blur_radius) {
    if (blur_radius < 8) throw ConfigError("remove_shading: blur_radius must be >= 8");
    const Planef lum = luminance(img);
    const Planef background = box_blur(morph_close(lum, blur_radius), blur_radius);
    constexpr float eps = 1e-4f;

    RasterImage out = img;
    const int w = img.width(), h = img.height();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const float l = lum(y, x);
            const float target = std::clamp(l / std::max(background(y, x), eps), 0.0f, 1.0f);
            if (img.channels() == 1) {
                out.plane(0)(y, x) = target;
                continue;
            }
            float scale = target / std::max(l, eps);
            float maxch = 0.0f;
            for (int c = 0; c < 3; ++c) maxch = std::max(maxch, img.at(x, y, c));
            if (maxch * scale > 1.0f) scale = 1.0f / maxch;  // keep chroma, avoid clipping
            for (int c = 0; c < 3; ++c) out.at(x, y, c) = img.at(x, y, c) * scale;
        }
    return out;
}

}  // namespace docflow
