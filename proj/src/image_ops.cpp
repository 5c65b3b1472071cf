#include "docflow/image_ops.hpp"

#include <deque>
#include <limits>

namespace docflow {

namespace {

// Sliding-window extremum along each row, then each column (monotone deque).
template <typename Cmp>
Planef extremum_filter(const Planef& src, int r, Cmp better) {
    const int w = static_cast<int>(src.cols());
    const int h = static_cast<int>(src.rows());
    Planef tmp(h, w), out(h, w);
    std::deque<int> q;
    for (int y = 0; y < h; ++y) {
        q.clear();
        for (int x = 0; x < w + r; ++x) {
            if (x < w) {
                while (!q.empty() && !better(src(y, q.back()), src(y, x))) q.pop_back();
                q.push_back(x);
            }
            const int center = x - r;
            if (center >= 0) {
                while (q.front() < center - r) q.pop_front();
                tmp(y, center) = src(y, q.front());
            }
        }
    }
    for (int x = 0; x < w; ++x) {
        q.clear();
        for (int y = 0; y < h + r; ++y) {
            if (y < h) {
                while (!q.empty() && !better(tmp(q.back(), x), tmp(y, x))) q.pop_back();
                q.push_back(y);
            }
            const int center = y - r;
            if (center >= 0) {
                while (q.front() < center - r) q.pop_front();
                out(center, x) = tmp(q.front(), x);
            }
        }
    }
    return out;
}

}  // namespace

MaskPlane erode_mask(const MaskPlane& mask, int r) {
    if (r <= 0) return mask;
    Planef f = mask.cast<float>();
    Planef m = min_filter(f, r);
    return (m > 0.5f).cast<std::uint8_t>();
}

Planef min_filter(const Planef& src, int r) {
    if (r <= 0) return src;
    return extremum_filter(src, r, [](float a, float b) { return a < b; });
}

Planef max_filter(const Planef& src, int r) {
    if (r <= 0) return src;
    return extremum_filter(src, r, [](float a, float b) { return a > b; });
}

Planef morph_close(const Planef& src, int r) {
    return min_filter(max_filter(src, r), r);
}

Planef box_blur(const Planef& src, int r) {
    if (r <= 0) return src;
    const int w = static_cast<int>(src.cols());
    const int h = static_cast<int>(src.rows());
    Planef tmp(h, w), out(h, w);
    // rows
    for (int y = 0; y < h; ++y) {
        double sum = 0;
        int lo = 0, hi = -1;  // inclusive window [lo, hi]
        for (int x = 0; x < w; ++x) {
            const int want_hi = std::min(x + r, w - 1);
            const int want_lo = std::max(x - r, 0);
            while (hi < want_hi) sum += src(y, ++hi);
            while (lo < want_lo) sum -= src(y, lo++);
            tmp(y, x) = static_cast<float>(sum / (hi - lo + 1));
        }
    }
    // columns
    for (int x = 0; x < w; ++x) {
        double sum = 0;
        int lo = 0, hi = -1;
        for (int y = 0; y < h; ++y) {
            const int want_hi = std::min(y + r, h - 1);
            const int want_lo = std::max(y - r, 0);
            while (hi < want_hi) sum += tmp(++hi, x);
            while (lo < want_lo) sum -= tmp(lo++, x);
            out(y, x) = static_cast<float>(sum / (hi - lo + 1));
        }
    }
    return out;
}

double masked_mse(const RasterImage& a, const RasterImage& b, const MaskPlane& mask) {
    if (a.width() != b.width() || a.height() != b.height() || a.channels() != b.channels())
        throw DimMismatchError("masked_mse inputs");
    if (mask.cols() != a.width() || mask.rows() != a.height())
        throw DimMismatchError("masked_mse mask");
    double acc = 0;
    long count = 0;
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x) {
            if (!mask(y, x)) continue;
            for (int c = 0; c < a.channels(); ++c) {
                const double d = double(a.at(x, y, c)) - double(b.at(x, y, c));
                acc += d * d;
            }
            ++count;
        }
    if (count == 0) throw EmptyMaskError("masked_mse");
    return acc / (double(count) * a.channels());
}

double psnr(const RasterImage& a, const RasterImage& b, const MaskPlane& mask, int erode_px) {
    const MaskPlane m = erode_px > 0 ? erode_mask(mask, erode_px) : mask;
    const double mse = masked_mse(a, b, m);
    if (mse <= 0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

}  // namespace docflow
