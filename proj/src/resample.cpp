#include "docflow/resample.hpp"

#include <atomic>
#include <cmath>

#include "docflow/image_ops.hpp"
#include "docflow/util.hpp"

namespace docflow {

std::optional<Vec2f> backward_map(const FlowField& flow, const Vec2f& q,
                                  const ResampleOptions& opts) {
    Vec2f p = q;
    for (int i = 0; i < opts.max_iterations; ++i) {
        const float fu = sample_bilinear(flow.u, p.x(), p.y());
        const float fv = sample_bilinear(flow.v, p.x(), p.y());
        const Vec2f next(q.x() - fu, q.y() - fv);
        const float step = (next - p).norm();
        p = next;
        if (step <= opts.tolerance) return p;
    }
    return std::nullopt;
}

RasterImage rectify_image(const RasterImage& src, const FlowField& flow,
                          const ResampleOptions& opts, ResampleStats* stats) {
    if (src.width() != flow.width() || src.height() != flow.height())
        throw DimMismatchError("rectify_image: flow vs image dimensions");
    const int w = src.width(), h = src.height(), channels = src.channels();
    RasterImage out(w, h, channels);

    auto fill_color = [&](int c) {
        if (c < 3) return opts.fill[static_cast<std::size_t>(c)];
        return 1.0f;  // opaque alpha
    };

    std::atomic<long> diverged{0}, filled{0};
    parallel_for(0, h, [&](int y) {
        long local_diverged = 0, local_filled = 0;
        for (int x = 0; x < w; ++x) {
            const auto p = backward_map(flow, Vec2f(float(x), float(y)), opts);
            bool ok = p.has_value();
            if (!ok) ++local_diverged;
            if (ok && (p->x() < 0.0f || p->x() > float(w - 1) || p->y() < 0.0f ||
                       p->y() > float(h - 1)))
                ok = false;
            if (ok) {
                const int mx = std::clamp(int(std::lround(p->x())), 0, w - 1);
                const int my = std::clamp(int(std::lround(p->y())), 0, h - 1);
                if (!flow.mask(my, mx)) ok = false;
            }
            if (ok) {
                for (int c = 0; c < channels; ++c)
                    out.planes[static_cast<std::size_t>(c)](y, x) =
                        sample_bilinear(src.planes[static_cast<std::size_t>(c)], p->x(), p->y());
            } else {
                ++local_filled;
                for (int c = 0; c < channels; ++c)
                    out.planes[static_cast<std::size_t>(c)](y, x) =
                        channels == 1 ? fill_color(0) : fill_color(c);
            }
        }
        diverged += local_diverged;
        filled += local_filled;
    });
    if (stats) {
        stats->diverged_pixels = diverged.load();
        stats->filled_pixels = filled.load();
    }
    return out;
}

}  // namespace docflow
