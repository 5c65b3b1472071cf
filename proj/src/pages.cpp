#include <algorithm>
#include <cmath>
#include <random>

#include "docflow/synthgen.hpp"

namespace docflow {

namespace {

// Soft-edged dark rectangle on a white page; ~1.5 px feather keeps strokes
// resampling-friendly.
void soft_rect(Planef& page, double x0, double y0, double x1, double y1, float ink) {
    const int w = static_cast<int>(page.cols());
    const int h = static_cast<int>(page.rows());
    const double feather = 1.5;
    const int ix0 = std::max(0, int(std::floor(x0 - feather)));
    const int iy0 = std::max(0, int(std::floor(y0 - feather)));
    const int ix1 = std::min(w - 1, int(std::ceil(x1 + feather)));
    const int iy1 = std::min(h - 1, int(std::ceil(y1 + feather)));
    for (int y = iy0; y <= iy1; ++y)
        for (int x = ix0; x <= ix1; ++x) {
            const double dx = std::min(x - x0, x1 - x);
            const double dy = std::min(y - y0, y1 - y);
            const double d = std::min(dx, dy);
            const double alpha = std::clamp(d / feather + 0.5, 0.0, 1.0);
            const float target = 1.0f - float(alpha) * (1.0f - ink);
            page(y, x) = std::min(page(y, x), target);
        }
}

// A paragraph of text-like lines: rows of word strokes with ragged right
// margins and occasional indents.
void paragraph(Planef& page, std::mt19937& rng, double x0, double x1, double y0, double y1,
               double line_h) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double stroke = std::max(2.0, line_h * 0.45);
    for (double y = y0; y + stroke <= y1; y += line_h) {
        double x = x0 + (uni(rng) < 0.15 ? line_h * 2.0 : 0.0);
        const double right = x1 - uni(rng) * (x1 - x0) * 0.25;
        while (x < right) {
            const double word = line_h * (0.8 + 2.6 * uni(rng));
            const double end = std::min(x + word, right);
            soft_rect(page, x, y, end, y + stroke, 0.15f);
            x = end + line_h * 0.55;
        }
    }
}

}  // namespace

RasterImage render_test_page(int page_id, int width, int height) {
    if (width < 16 || height < 16) throw SizeError("render_test_page: page too small");
    const int id = ((page_id % 5) + 5) % 5;
    Planef page = Planef::Constant(height, width, 1.0f);
    std::mt19937 rng(0xA4C3u + static_cast<unsigned>(id));

    const double w = width, h = height;
    const double margin = 0.08 * std::min(w, h);
    const double line_h = std::clamp(h / 55.0, 6.0, 28.0);

    switch (id) {
        case 0: {  // plain single-column text
            paragraph(page, rng, margin, w - margin, margin, h - margin, line_h);
            break;
        }
        case 1: {  // two columns
            const double gap = 0.04 * w;
            const double mid = w / 2.0;
            paragraph(page, rng, margin, mid - gap / 2, margin, h - margin, line_h);
            paragraph(page, rng, mid + gap / 2, w - margin, margin, h - margin, line_h);
            break;
        }
        case 2: {  // text with a figure block
            paragraph(page, rng, margin, w - margin, margin, 0.38 * h, line_h);
            const double fx0 = 0.22 * w, fx1 = 0.78 * w;
            const double fy0 = 0.42 * h, fy1 = 0.62 * h;
            soft_rect(page, fx0, fy0, fx1, fy1, 0.55f);
            for (int i = 1; i < 5; ++i) {
                const double gx = fx0 + (fx1 - fx0) * i / 5.0;
                soft_rect(page, gx - 1.0, fy0 + 3.0, gx + 1.0, fy1 - 3.0, 0.2f);
            }
            paragraph(page, rng, margin, w - margin, 0.66 * h, h - margin, line_h);
            break;
        }
        case 3: {  // ruled table
            const int rows = 14, cols = 5;
            const double x0 = margin, x1 = w - margin, y0 = margin, y1 = h - margin;
            for (int r = 0; r <= rows; ++r) {
                const double y = y0 + (y1 - y0) * r / rows;
                soft_rect(page, x0, y - 1.2, x1, y + 1.2, 0.25f);
            }
            for (int c = 0; c <= cols; ++c) {
                const double x = x0 + (x1 - x0) * c / cols;
                soft_rect(page, x - 1.2, y0, x + 1.2, y1, 0.25f);
            }
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            for (int r = 0; r < rows; ++r)
                for (int c = 0; c < cols; ++c) {
                    if (uni(rng) < 0.25) continue;
                    const double cx0 = x0 + (x1 - x0) * c / cols + 6.0;
                    const double cy = y0 + (y1 - y0) * (r + 0.5) / rows;
                    const double len = (x1 - x0) / cols * (0.3 + 0.5 * uni(rng));
                    soft_rect(page, cx0, cy - line_h * 0.2, cx0 + len, cy + line_h * 0.2, 0.2f);
                }
            break;
        }
        default: {  // title, paragraphs, footer rule
            soft_rect(page, 0.2 * w, margin, 0.8 * w, margin + 2.2 * line_h, 0.1f);
            soft_rect(page, 0.3 * w, margin + 3.2 * line_h, 0.7 * w, margin + 3.8 * line_h, 0.3f);
            paragraph(page, rng, margin, w - margin, margin + 5.5 * line_h, 0.9 * h, line_h);
            soft_rect(page, margin, 0.94 * h, w - margin, 0.94 * h + 2.0, 0.3f);
            break;
        }
    }

    RasterImage img(width, height, 3);
    img.plane(0) = page;
    img.plane(1) = page;
    img.plane(2) = page;
    return img;
}

}  // namespace docflow
