#include "docflow/poisson.hpp"

#include <cmath>
#include <future>

#include "docflow/flow_ops.hpp"
#include "docflow/util.hpp"

namespace docflow {

namespace {

// (A x)(p) = (neighbor_count + lambda) x(p) - sum of neighbors, restricted
// to in-image difference terms.
void apply_system(const Planed& x, const Planed& diag, Planed& out) {
    const int h = static_cast<int>(x.rows());
    const int w = static_cast<int>(x.cols());
    out = diag * x;
    if (w > 1) {
        out.block(0, 0, h, w - 1) -= x.block(0, 1, h, w - 1);
        out.block(0, 1, h, w - 1) -= x.block(0, 0, h, w - 1);
    }
    if (h > 1) {
        out.block(0, 0, h - 1, w) -= x.block(1, 0, h - 1, w);
        out.block(1, 0, h - 1, w) -= x.block(0, 0, h - 1, w);
    }
}

struct ChannelResult {
    Planed x;
    int iterations = 0;
    double residual = 0;
};

ChannelResult solve_channel(const Planed& gx, const Planed& gy, const Planed& lam,
                            const Planed& ref, double tolerance, int max_iterations) {
    const int h = static_cast<int>(gx.rows());
    const int w = static_cast<int>(gx.cols());

    Planed diag = lam;
    if (w > 1) {
        diag.block(0, 0, h, w - 1) += 1.0;
        diag.block(0, 1, h, w - 1) += 1.0;
    }
    if (h > 1) {
        diag.block(0, 0, h - 1, w) += 1.0;
        diag.block(1, 0, h - 1, w) += 1.0;
    }

    Planed b = lam * ref;
    if (w > 1) {
        b.block(0, 1, h, w - 1) += gx.block(0, 0, h, w - 1);
        b.block(0, 0, h, w - 1) -= gx.block(0, 0, h, w - 1);
    }
    if (h > 1) {
        b.block(1, 0, h - 1, w) += gy.block(0, 0, h - 1, w);
        b.block(0, 0, h - 1, w) -= gy.block(0, 0, h - 1, w);
    }

    ChannelResult res;
    res.x = Planed::Zero(h, w);
    const double bnorm = std::sqrt((b * b).sum());
    if (bnorm == 0.0) return res;

    Planed r = b;
    Planed z = r / diag;
    Planed p = z;
    Planed Ap(h, w);
    double rz = (r * z).sum();

    for (int iter = 1; iter <= max_iterations; ++iter) {
        apply_system(p, diag, Ap);
        const double pAp = (p * Ap).sum();
        if (pAp <= 0) break;  // numerically exhausted
        const double alpha = rz / pAp;
        res.x += alpha * p;
        r -= alpha * Ap;
        res.iterations = iter;

        const double rnorm = std::sqrt((r * r).sum());
        if (rnorm <= tolerance * bnorm) {
            // certify with the true residual; the recurrence can drift
            apply_system(res.x, diag, Ap);
            r = b - Ap;
            const double true_norm = std::sqrt((r * r).sum());
            res.residual = true_norm / bnorm;
            if (true_norm <= tolerance * bnorm) return res;
            z = r / diag;
            rz = (r * z).sum();
            p = z;
            continue;
        }
        z = r / diag;
        const double rz_new = (r * z).sum();
        p = z + (rz_new / rz) * p;
        rz = rz_new;
    }
    apply_system(res.x, diag, Ap);
    res.residual = std::sqrt(((b - Ap) * (b - Ap)).sum()) / bnorm;
    if (res.residual <= tolerance) return res;
    throw NoConvergenceError("screened Poisson CG residual " + std::to_string(res.residual) +
                             " after " + std::to_string(res.iterations) + " iterations");
}

void validate(const ScreenedPoissonProblem& problem, const SolverOptions& opts) {
    const GradientField& g = problem.target_gradient;
    if (g.empty()) throw SizeError("poisson: empty target gradient");
    if (problem.reference_flow.width() != g.width() ||
        problem.reference_flow.height() != g.height() ||
        problem.reference_mask.cols() != g.width() || problem.reference_mask.rows() != g.height())
        throw DimMismatchError("poisson: reference dimensions");
    if (problem.lambda < 0) throw ConfigError("poisson: lambda must be >= 0");
    if ((problem.reference_mask != std::uint8_t(0)).count() == 0)
        throw EmptyMaskError("poisson: reference mask");
    if (opts.tolerance <= 0) throw ConfigError("poisson: tolerance must be > 0");
    if (opts.downsample_factor != 1 && opts.downsample_factor != 2 && opts.downsample_factor != 4)
        throw ConfigError("poisson: downsample_factor must be 1, 2 or 4");
}

int auto_iterations(const SolverOptions& opts, int w, int h) {
    if (opts.max_iterations > 0) return opts.max_iterations;
    return static_cast<int>(10.0 * std::sqrt(double(w) * double(h))) + 50;
}

FlowField run_solve(const Planed& gxu, const Planed& gyu, const Planed& gxv, const Planed& gyv,
                    const Planed& lam, const Planed& ref_u, const Planed& ref_v,
                    double tolerance, int max_iterations, SolveInfo* info) {
    auto solve_u = [&] { return solve_channel(gxu, gyu, lam, ref_u, tolerance, max_iterations); };
    auto solve_v = [&] { return solve_channel(gxv, gyv, lam, ref_v, tolerance, max_iterations); };

    ChannelResult u, v;
    if (max_threads() >= 2) {
        auto fu = std::async(std::launch::async, solve_u);
        v = solve_v();
        u = fu.get();
    } else {
        u = solve_u();
        v = solve_v();
    }
    if (info) {
        info->iterations_u = u.iterations;
        info->iterations_v = v.iterations;
        info->residual_u = u.residual;
        info->residual_v = v.residual;
    }
    FlowField out(static_cast<int>(gxu.cols()), static_cast<int>(gxu.rows()));
    out.u = u.x.cast<float>();
    out.v = v.x.cast<float>();
    return out;
}

Planed pad_replicate(const Planed& src, int w_pad, int h_pad) {
    const int h = static_cast<int>(src.rows());
    const int w = static_cast<int>(src.cols());
    Planed out(h_pad, w_pad);
    out.block(0, 0, h, w) = src;
    for (int x = w; x < w_pad; ++x) out.col(x) = out.col(w - 1);
    for (int y = h; y < h_pad; ++y) out.row(y) = out.row(h - 1);
    return out;
}

}  // namespace

FlowField solve(const ScreenedPoissonProblem& problem, const SolverOptions& opts,
                SolveInfo* info) {
    validate(problem, opts);
    const GradientField& g = problem.target_gradient;
    const int w = g.width(), h = g.height();
    const Planed lam =
        (problem.reference_mask != std::uint8_t(0)).cast<double>() * double(problem.lambda);
    return run_solve(g.gx_u.cast<double>(), g.gy_u.cast<double>(), g.gx_v.cast<double>(),
                     g.gy_v.cast<double>(), lam, problem.reference_flow.u.cast<double>(),
                     problem.reference_flow.v.cast<double>(), opts.tolerance,
                     auto_iterations(opts, w, h), info);
}

FlowField solve_downsampled(const ScreenedPoissonProblem& problem, const SolverOptions& opts,
                            SolveInfo* info) {
    validate(problem, opts);
    const int f = opts.downsample_factor;
    if (f == 1) return solve(problem, opts, info);

    const GradientField& g = problem.target_gradient;
    const int w = g.width(), h = g.height();
    const int w_pad = ((w + f - 1) / f) * f;
    const int h_pad = ((h + f - 1) / f) * f;
    const int wc = w_pad / f, hc = h_pad / f;
    if (wc < 2 || hc < 2) throw SizeError("solve_downsampled: coarse grid too small");

    auto coarse_grad = [&](const Planef& p) {
        return downsample_block(pad_replicate(p.cast<double>(), w_pad, h_pad), f) * double(f);
    };
    const Planed gxu = coarse_grad(g.gx_u);
    const Planed gyu = coarse_grad(g.gy_u);
    const Planed gxv = coarse_grad(g.gx_v);
    const Planed gyv = coarse_grad(g.gy_v);

    // coarse screening: a cell is screened when its whole block is inside
    // the reference mask; its target is the block mean of the reference flow
    Planed mask_f = pad_replicate(problem.reference_mask.cast<double>(), w_pad, h_pad);
    Planed mean_mask = downsample_block(mask_f, f);
    Planed lam_c(hc, wc);
    for (int y = 0; y < hc; ++y)
        for (int x = 0; x < wc; ++x)
            lam_c(y, x) = mean_mask(y, x) >= 1.0 ? double(problem.lambda) : 0.0;
    if ((lam_c > 0.0).count() == 0)
        throw EmptyMaskError("solve_downsampled: reference mask vanished at coarse scale");
    const Planed ref_u = downsample_block(pad_replicate(problem.reference_flow.u.cast<double>(),
                                                        w_pad, h_pad), f);
    const Planed ref_v = downsample_block(pad_replicate(problem.reference_flow.v.cast<double>(),
                                                        w_pad, h_pad), f);

    SolveInfo coarse_info;
    FlowField coarse =
        run_solve(gxu, gyu, gxv, gyv, lam_c, ref_u, ref_v, opts.tolerance,
                  auto_iterations(opts, wc, hc), &coarse_info);
    if (info) *info = coarse_info;

    FlowField out(w, h);
    out.u = upsample_block_centers(coarse.u, f, w, h);
    out.v = upsample_block_centers(coarse.v, f, w, h);
    return out;
}

}  // namespace docflow
