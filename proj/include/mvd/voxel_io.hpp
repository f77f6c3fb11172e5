// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvd/voxel_grid.hpp"

namespace mvd {

// MVDV voxel object format (little-endian):
//   magic "MVDV", version u16 = 1, resolution u32, then the occupancy in
//   x-fastest scan order as u32 run lengths alternating empty/occupied,
//   starting with empty (a leading occupied region gets an initial
//   zero-length empty run). Runs must sum to R^3.
std::vector<std::uint8_t> encode_voxels(const VoxelGrid& grid);
VoxelGrid decode_voxels(const std::vector<std::uint8_t>& bytes);

VoxelGrid load_voxels(const std::string& path);
void save_voxels(const std::string& path, const VoxelGrid& grid);

}  // namespace mvd
