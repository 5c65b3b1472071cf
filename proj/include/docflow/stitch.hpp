#pragma once

#include <vector>

#include "docflow/flowest.hpp"
#include "docflow/patching.hpp"
#include "docflow/types.hpp"

namespace docflow {

/// Per-pixel patch choice. label is the slot (0..3) into the pixel's list
/// of covering patches in row-major grid order; patch_id is the resolved
/// grid index. Every patch_id covers its pixel.
struct IndexMap {
    int width = 0;
    int height = 0;
    PlaneT<std::uint8_t> label;
    PlaneT<std::int32_t> patch_id;
};

struct StitchStats {
    double initial_energy = 0;
    double final_energy = 0;
    int cycles = 0;
    int accepted_moves = 0;
    long nonsubmodular_terms = 0;
};

/// Per-patch flow gradients (delegates to gradient()).
std::vector<GradientField> patch_gradients(const std::vector<PatchFlowEstimate>& estimates);

/// Choose, per pixel, which covering patch supplies the flow gradient by
/// minimizing the seam energy
///   E(L) = sum_{(p,q) adjacent} ||G_ip(p)-G_iq(p)||^2 + ||G_ip(q)-G_iq(q)||^2
/// plus an infinite data term for labels whose patch does not cover the
/// pixel. Alpha-expansion over the <= 4 reduced labels, 4-neighborhood,
/// initialized with the nearest-patch-center labeling; sweeps stop after a
/// full cycle without an energy decrease (cap 8 cycles). A move is kept only
/// if the exact energy decreased, so sweeps never increase E.
IndexMap optimize_indices(const PatchGrid& grid, const std::vector<GradientField>& grads,
                          StitchStats* stats = nullptr);

/// Exact energy of a labeling; exposed for tests and diagnostics.
double labeling_energy(const PatchGrid& grid, const std::vector<GradientField>& grads,
                       const IndexMap& idx);

/// Read each pixel's gradient from its selected patch.
GradientField assemble_gradient(const PatchGrid& grid, const std::vector<GradientField>& grads,
                                const IndexMap& idx);

/// Index-map debug visualization: the four slot labels as fixed colors.
RasterImage index_map_to_rgb(const IndexMap& idx);

}  // namespace docflow
