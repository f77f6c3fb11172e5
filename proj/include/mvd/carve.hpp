// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mvd/odm.hpp"
#include "mvd/voxel_grid.hpp"

namespace mvd {

struct CarveConfig {
  std::uint32_t smoothing_radius = 2;   // Chebyshev radius in pixels; 0 disables
  double smoothing_threshold = 0.0;     // depth units; <= 0 selects factor/2
  std::uint32_t agreement_votes = 2;    // views that must agree to remove, in [1,6]
  std::uint32_t factor = 1;

  double effective_smoothing_threshold() const {
    return smoothing_threshold > 0.0 ? smoothing_threshold : factor / 2.0;
  }
};

// Edge-preserving averaging: each nonzero pixel becomes the rounded mean of
// the nonzero neighbors within the radius whose depth differs from the
// center by at most the threshold (center always included). Zero pixels and
// therefore the silhouette are untouched.
Odm smooth_odm(const Odm& odm, const CarveConfig& config);

// One removal vote per view for every voxel in the column behind a
// silhouette-0 pixel; voxels collecting at least agreement_votes votes are
// emptied. Silhouette masks are indexed by ViewId, row-major like Odm.
VoxelGrid structure_carve(VoxelGrid grid,
                          const std::array<std::vector<std::uint8_t>, 6>& silhouettes,
                          const CarveConfig& config);

// Clears the d-1 voxel layers in front of every predicted surface (per
// view, no agreement); background pixels carve nothing here.
VoxelGrid detail_carve(VoxelGrid grid, const OdmSet& odms);

// Full carving pass: NN up-sample the low-resolution object, smooth the six
// predicted ODMs, structure-carve with their silhouettes, detail-carve with
// their depths. Output resolution is grid resolution times config.factor.
VoxelGrid carve(const VoxelGrid& grid_low, const OdmSet& odms_high, const CarveConfig& config);

}  // namespace mvd
