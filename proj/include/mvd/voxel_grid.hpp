// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

namespace mvd {

// Largest per-axis resolution the toolkit will allocate. One doubling of
// headroom over the 512^3 objects the pipeline targets.
inline constexpr std::uint32_t kMaxResolution = 1024;

// Cubic binary occupancy grid. Cells are stored x-fastest (x, then y,
// then z) as bytes that are strictly 0 or 1.
class VoxelGrid {
 public:
  VoxelGrid() = default;
  explicit VoxelGrid(std::uint32_t resolution, bool fill = false);

  std::uint32_t resolution() const { return resolution_; }
  std::uint64_t cell_count() const {
    return static_cast<std::uint64_t>(resolution_) * resolution_ * resolution_;
  }

  std::uint64_t index(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return x + static_cast<std::uint64_t>(resolution_) * (y + static_cast<std::uint64_t>(resolution_) * z);
  }

  bool test(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return occupancy_[index(x, y, z)] != 0;
  }
  void set(std::uint32_t x, std::uint32_t y, std::uint32_t z, bool occupied) {
    occupancy_[index(x, y, z)] = occupied ? 1 : 0;
  }

  std::uint8_t* data() { return occupancy_.data(); }
  const std::uint8_t* data() const { return occupancy_.data(); }

  std::uint64_t occupied_count() const;
  bool empty() const { return occupied_count() == 0; }

  friend bool operator==(const VoxelGrid& a, const VoxelGrid& b) {
    return a.resolution_ == b.resolution_ && a.occupancy_ == b.occupancy_;
  }

 private:
  std::uint32_t resolution_ = 0;
  std::vector<std::uint8_t> occupancy_;
};

// Nearest-neighbor up-sampling: output cell (x,y,z) copies input cell
// (x/factor, y/factor, z/factor). Occupied count scales by factor^3.
// Throws std::invalid_argument when resolution*factor exceeds max_resolution.
VoxelGrid upsample_nn(const VoxelGrid& grid, std::uint32_t factor,
                      std::uint32_t max_resolution = kMaxResolution);

// Fills every cell that cannot be reached from outside the grid through
// 6-connected empty cells. Occupied cells stay occupied.
VoxelGrid solidify(const VoxelGrid& grid);

}  // namespace mvd
