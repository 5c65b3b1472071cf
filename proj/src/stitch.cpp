#include "docflow/stitch.hpp"

#include <array>
#include <limits>

#include "docflow/flow_ops.hpp"
#include "docflow/maxflow.hpp"
#include "docflow/util.hpp"

namespace docflow {

std::vector<GradientField> patch_gradients(const std::vector<PatchFlowEstimate>& estimates) {
    if (estimates.empty()) throw SizeError("patch_gradients: no estimates");
    std::vector<GradientField> grads(estimates.size());
    parallel_for(0, static_cast<int>(estimates.size()), [&](int i) {
        grads[static_cast<std::size_t>(i)] = gradient(estimates[static_cast<std::size_t>(i)].flow);
    });
    return grads;
}

namespace {

// Per-pixel list of covering patches (ids ascending = row-major grid order)
// and per-patch gradients packed 4-wide for cheap seam-cost lookups.
struct StitchContext {
    const PatchGrid& grid;
    int w, h, psize;
    std::vector<std::array<std::int32_t, 4>> cover;
    PlaneT<std::uint8_t> cover_count;
    std::vector<std::vector<float>> packed;  // per patch: size*size*4

    StitchContext(const PatchGrid& g, const std::vector<GradientField>& grads)
        : grid(g), w(g.image_width), h(g.image_height), psize(g.patch_size) {
        cover.assign(static_cast<std::size_t>(w) * h, {-1, -1, -1, -1});
        cover_count = PlaneT<std::uint8_t>::Zero(h, w);
        for (int id = 0; id < g.patch_count(); ++id) {
            const PatchSpec& p = g.patches[static_cast<std::size_t>(id)];
            for (int y = p.origin_y; y < p.origin_y + p.size; ++y)
                for (int x = p.origin_x; x < p.origin_x + p.size; ++x) {
                    std::uint8_t& c = cover_count(y, x);
                    if (c >= 4) throw Error("pixel covered by more than 4 patches");
                    cover[static_cast<std::size_t>(y) * w + x][c] = id;
                    ++c;
                }
        }
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x)
                if (cover_count(y, x) == 0) throw Error("pixel not covered by any patch");

        packed.resize(grads.size());
        parallel_for(0, static_cast<int>(grads.size()), [&](int i) {
            const GradientField& gf = grads[static_cast<std::size_t>(i)];
            std::vector<float>& dst = packed[static_cast<std::size_t>(i)];
            dst.resize(static_cast<std::size_t>(psize) * psize * 4);
            for (int y = 0; y < psize; ++y)
                for (int x = 0; x < psize; ++x) {
                    float* v = &dst[(static_cast<std::size_t>(y) * psize + x) * 4];
                    v[0] = gf.gx_u(y, x);
                    v[1] = gf.gy_u(y, x);
                    v[2] = gf.gx_v(y, x);
                    v[3] = gf.gy_v(y, x);
                }
        });
    }

    // Patch gradient at image pixel (x, y); coordinates clamp to the patch
    // so a neighbor one pixel outside reads the border value.
    const float* gvec(int patch, int x, int y) const {
        const PatchSpec& p = grid.patches[static_cast<std::size_t>(patch)];
        const int lx = std::clamp(x - p.origin_x, 0, p.size - 1);
        const int ly = std::clamp(y - p.origin_y, 0, p.size - 1);
        return &packed[static_cast<std::size_t>(patch)]
                      [(static_cast<std::size_t>(ly) * psize + lx) * 4];
    }

    static double sq4(const float* a, const float* b) {
        const double d0 = double(a[0]) - b[0];
        const double d1 = double(a[1]) - b[1];
        const double d2 = double(a[2]) - b[2];
        const double d3 = double(a[3]) - b[3];
        return d0 * d0 + d1 * d1 + d2 * d2 + d3 * d3;
    }

    // Eq-style pair cost: gradient disagreement of the two chosen patches,
    // evaluated at both endpoints.
    double pair_cost(int pi, int pj, int px, int py, int qx, int qy) const {
        if (pi == pj) return 0;
        return sq4(gvec(pi, px, py), gvec(pj, px, py)) +
               sq4(gvec(pi, qx, qy), gvec(pj, qx, qy));
    }

    double energy(const PlaneT<std::int32_t>& ids) const {
        double e = 0;
        for (int y = 0; y < h; ++y)
            for (int x = 0; x < w; ++x) {
                if (x + 1 < w) e += pair_cost(ids(y, x), ids(y, x + 1), x, y, x + 1, y);
                if (y + 1 < h) e += pair_cost(ids(y, x), ids(y + 1, x), x, y, x, y + 1);
            }
        return e;
    }
};

}  // namespace

double labeling_energy(const PatchGrid& grid, const std::vector<GradientField>& grads,
                       const IndexMap& idx) {
    StitchContext ctx(grid, grads);
    return ctx.energy(idx.patch_id);
}

IndexMap optimize_indices(const PatchGrid& grid, const std::vector<GradientField>& grads,
                          StitchStats* stats) {
    if (static_cast<int>(grads.size()) != grid.patch_count())
        throw CountMismatchError("gradients vs grid patches");
    StitchContext ctx(grid, grads);
    const int w = ctx.w, h = ctx.h;

    IndexMap idx;
    idx.width = w;
    idx.height = h;
    idx.label = PlaneT<std::uint8_t>::Zero(h, w);
    idx.patch_id = PlaneT<std::int32_t>::Zero(h, w);

    // nearest-patch-center initialization; ties go to the first patch in
    // row-major order
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const auto& cov = ctx.cover[static_cast<std::size_t>(y) * w + x];
            const int n = ctx.cover_count(y, x);
            int best_slot = 0;
            long best_d = std::numeric_limits<long>::max();
            for (int s = 0; s < n; ++s) {
                const PatchSpec& p = grid.patches[static_cast<std::size_t>(cov[s])];
                const long dx = p.center_x() - x, dy = p.center_y() - y;
                const long d = dx * dx + dy * dy;
                if (d < best_d) {
                    best_d = d;
                    best_slot = s;
                }
            }
            idx.label(y, x) = static_cast<std::uint8_t>(best_slot);
            idx.patch_id(y, x) = cov[best_slot];
        }

    double energy = ctx.energy(idx.patch_id);
    StitchStats local_stats;
    local_stats.initial_energy = energy;

    PlaneT<std::int32_t> cand(h, w);
    std::vector<std::int32_t> var_id(static_cast<std::size_t>(w) * h);
    PlaneT<std::uint8_t> switched(h, w);

    for (int cycle = 0; cycle < 8; ++cycle) {
        bool improved = false;
        for (int alpha = 0; alpha < 4; ++alpha) {
            // candidate patch per pixel; -1 pins the pixel to its current label
            int var_count = 0;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const auto& cov = ctx.cover[static_cast<std::size_t>(y) * w + x];
                    const int n = ctx.cover_count(y, x);
                    std::int32_t c = alpha < n ? cov[alpha] : -1;
                    if (c == idx.patch_id(y, x)) c = -1;
                    cand(y, x) = c;
                    var_id[static_cast<std::size_t>(y) * w + x] = c >= 0 ? var_count++ : -1;
                }
            if (var_count == 0) continue;

            MaxFlow mf(var_count, 2 * var_count);
            auto fold = [&](int node, double theta0, double theta1) {
                mf.add_tweights(node, theta1, theta0);
            };
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const int vp = var_id[static_cast<std::size_t>(y) * w + x];
                    const int cur_p = idx.patch_id(y, x);
                    const int cand_p = cand(y, x);
                    auto handle_pair = [&](int qx, int qy) {
                        const int vq = var_id[static_cast<std::size_t>(qy) * w + qx];
                        const int cur_q = idx.patch_id(qy, qx);
                        const int cand_q = cand(qy, qx);
                        if (vp < 0 && vq < 0) return;
                        const double A = ctx.pair_cost(cur_p, cur_q, x, y, qx, qy);
                        if (vp >= 0 && vq >= 0) {
                            const double B = ctx.pair_cost(cur_p, cand_q, x, y, qx, qy);
                            const double C = ctx.pair_cost(cand_p, cur_q, x, y, qx, qy);
                            const double D = ctx.pair_cost(cand_p, cand_q, x, y, qx, qy);
                            double Atrunc = A;
                            if (A + D > B + C) {
                                Atrunc = B + C - D;  // submodular truncation
                                ++local_stats.nonsubmodular_terms;
                            }
                            fold(vp, 0.0, C - Atrunc);
                            fold(vq, 0.0, D - C);
                            const double m = B + C - Atrunc - D;
                            if (m > 0) mf.add_edge(vp, vq, m, 0.0);
                        } else if (vp >= 0) {
                            const double C = ctx.pair_cost(cand_p, cur_q, x, y, qx, qy);
                            fold(vp, A, C);
                        } else {
                            const double B = ctx.pair_cost(cur_p, cand_q, x, y, qx, qy);
                            fold(vq, A, B);
                        }
                    };
                    if (x + 1 < w) handle_pair(x + 1, y);
                    if (y + 1 < h) handle_pair(x, y + 1);
                }
            mf.solve();

            // proposed labeling: sink-side variables switch to the candidate
            bool any_switch = false;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x) {
                    const int vp = var_id[static_cast<std::size_t>(y) * w + x];
                    const bool sw = vp >= 0 && !mf.in_source_side(vp);
                    switched(y, x) = sw ? 1 : 0;
                    any_switch |= sw;
                }
            if (!any_switch) continue;

            PlaneT<std::int32_t> proposal = idx.patch_id;
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < w; ++x)
                    if (switched(y, x)) proposal(y, x) = cand(y, x);
            const double proposed_energy = ctx.energy(proposal);
            if (proposed_energy < energy) {
                energy = proposed_energy;
                improved = true;
                ++local_stats.accepted_moves;
                idx.patch_id.swap(proposal);
                for (int y = 0; y < h; ++y)
                    for (int x = 0; x < w; ++x)
                        if (switched(y, x)) idx.label(y, x) = static_cast<std::uint8_t>(alpha);
            }
        }
        local_stats.cycles = cycle + 1;
        if (!improved) break;
    }

    local_stats.final_energy = energy;
    if (stats) *stats = local_stats;
    return idx;
}

GradientField assemble_gradient(const PatchGrid& grid, const std::vector<GradientField>& grads,
                                const IndexMap& idx) {
    if (static_cast<int>(grads.size()) != grid.patch_count())
        throw CountMismatchError("gradients vs grid patches");
    const int w = idx.width, h = idx.height;
    GradientField out(w, h);
    parallel_for(0, h, [&](int y) {
        for (int x = 0; x < w; ++x) {
            const int id = idx.patch_id(y, x);
            const PatchSpec& p = grid.patches[static_cast<std::size_t>(id)];
            const int lx = x - p.origin_x;
            const int ly = y - p.origin_y;
            const GradientField& g = grads[static_cast<std::size_t>(id)];
            out.gx_u(y, x) = g.gx_u(ly, lx);
            out.gy_u(y, x) = g.gy_u(ly, lx);
            out.gx_v(y, x) = g.gx_v(ly, lx);
            out.gy_v(y, x) = g.gy_v(ly, lx);
        }
    });
    return out;
}

RasterImage index_map_to_rgb(const IndexMap& idx) {
    static const float colors[4][3] = {{0.894f, 0.102f, 0.110f},
                                       {0.216f, 0.494f, 0.722f},
                                       {0.302f, 0.686f, 0.290f},
                                       {1.000f, 0.843f, 0.000f}};
    RasterImage img(idx.width, idx.height, 3);
    for (int y = 0; y < idx.height; ++y)
        for (int x = 0; x < idx.width; ++x) {
            const int l = std::min<int>(idx.label(y, x), 3);
            for (int c = 0; c < 3; ++c) img.planes[static_cast<std::size_t>(c)](y, x) = colors[l][c];
        }
    return img;
}

}  // namespace docflow
