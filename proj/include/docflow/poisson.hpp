#pragma once

#include "docflow/types.hpp"

namespace docflow {

/// Least-squares flow reconstruction problem:
///   minimize sum_p ||grad F(p) - G(p)||^2 + lambda(p) ||F(p) - F_ref(p)||^2
/// with lambda(p) = lambda inside reference_mask and 0 outside. The gradient
/// discretization is the forward difference adjoint to gradient(); only
/// in-image difference terms enter the energy, which yields natural
/// boundaries. U and V decouple into two scalar systems.
struct ScreenedPoissonProblem {
    GradientField target_gradient;
    FlowField reference_flow;  // values placed at the reference patch, zero elsewhere
    MaskPlane reference_mask;
    float lambda = 0.1f;
};

struct SolverOptions {
    double tolerance = 1e-6;  // relative residual of the normal equations
    int max_iterations = 0;   // 0 = 10 * sqrt(pixel count)
    int downsample_factor = 1;
};

struct SolveInfo {
    int iterations_u = 0;
    int iterations_v = 0;
    double residual_u = 0;
    double residual_v = 0;
};

/// Diagonally preconditioned conjugate gradient on the normal equations.
/// The returned solution's true relative residual is verified against
/// opts.tolerance; NoConvergenceError if max_iterations is exhausted first.
FlowField solve(const ScreenedPoissonProblem& problem, const SolverOptions& opts,
                SolveInfo* info = nullptr);

/// Fast path: block-average the target gradients into f x f cells scaled by
/// f (a per-pixel difference becomes a per-f-pixel difference), solve at the
/// coarse scale and bilinearly upsample the flow back to full resolution.
/// Displacements stay in original-resolution pixels. f = 1 is solve().
FlowField solve_downsampled(const ScreenedPoissonProblem& problem, const SolverOptions& opts,
                            SolveInfo* info = nullptr);

}  // namespace docflow
