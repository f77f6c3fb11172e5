// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/voxel_grid.hpp"

#include <cstring>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvd/kernels.hpp"

namespace mvd {

VoxelGrid::VoxelGrid(std::uint32_t resolution, bool fill)
    : resolution_(resolution),
      occupancy_(static_cast<std::size_t>(resolution) * resolution * resolution,
                 fill ? 1 : 0) {
  if (resolution < 1) {
    throw std::invalid_argument("voxel grid resolution must be >= 1");
  }
  if (resolution > kMaxResolution) {
    throw std::invalid_argument("voxel grid resolution " + std::to_string(resolution) +
                                " exceeds maximum " + std::to_string(kMaxResolution));
  }
}

std::uint64_t VoxelGrid::occupied_count() const {
  return kernels::active().count_u8(occupancy_.data(), occupancy_.size());
}

VoxelGrid upsample_nn(const VoxelGrid& grid, std::uint32_t factor,
                      std::uint32_t max_resolution) {
  if (factor < 1) {
    throw std::invalid_argument("up-sampling factor must be >= 1");
  }
  const std::uint64_t out_res = static_cast<std::uint64_t>(grid.resolution()) * factor;
  if (out_res > max_resolution) {
    throw std::invalid_argument("up-sampled resolution " + std::to_string(out_res) +
                                " exceeds maximum " + std::to_string(max_resolution));
  }
  if (factor == 1) {
    return grid;
  }

  const std::uint32_t r = grid.resolution();
  const std::uint32_t fr = static_cast<std::uint32_t>(out_res);
  VoxelGrid out(fr);

  // Expand one source row into the first destination row of the block,
  // then replicate that row across the block's y and z extents.
  for (std::uint32_t z = 0; z < r; ++z) {
    for (std::uint32_t y = 0; y < r; ++y) {
      const std::uint8_t* src_row = grid.data() + grid.index(0, y, z);
      std::uint8_t* first = out.data() + out.index(0, y * factor, z * factor);
      for (std::uint32_t x = 0; x < r; ++x) {
        std::memset(first + static_cast<std::size_t>(x) * factor, src_row[x], factor);
      }
      for (std::uint32_t dz = 0; dz < factor; ++dz) {
        for (std::uint32_t dy = 0; dy < factor; ++dy) {
          if (dz == 0 && dy == 0) {
            continue;
          }
          std::memcpy(out.data() + out.index(0, y * factor + dy, z * factor + dz), first, fr);
        }
      }
    }
  }
  return out;
}

VoxelGrid solidify(const VoxelGrid& grid) {
  const std::uint32_t r = grid.resolution();
  const std::uint64_t n = grid.cell_count();
  std::vector<std::uint8_t> outside(n, 0);

  // Frontier-swap BFS over empty cells seeded from the grid faces.
  std::vector<std::uint64_t> frontier;
  std::vector<std::uint64_t> next;
  auto seed = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    const std::uint64_t i = grid.index(x, y, z);
    if (!grid.data()[i] && !outside[i]) {
      outside[i] = 1;
      frontier.push_back(i);
    }
  };
  for (std::uint32_t a = 0; a < r; ++a) {
    for (std::uint32_t b = 0; b < r; ++b) {
      seed(a, b, 0);
      seed(a, b, r - 1);
      seed(a, 0, b);
      seed(a, r - 1, b);
      seed(0, a, b);
      seed(r - 1, a, b);
    }
  }

  const std::uint64_t rr = static_cast<std::uint64_t>(r) * r;
  while (!frontier.empty()) {
    next.clear();
    for (std::uint64_t i : frontier) {
      const std::uint32_t x = static_cast<std::uint32_t>(i % r);
      const std::uint32_t y = static_cast<std::uint32_t>((i / r) % r);
      const std::uint32_t z = static_cast<std::uint32_t>(i / rr);
      auto visit = [&](std::uint64_t j) {
        if (!grid.data()[j] && !outside[j]) {
          outside[j] = 1;
          next.push_back(j);
        }
      };
      if (x > 0) visit(i - 1);
      if (x + 1 < r) visit(i + 1);
      if (y > 0) visit(i - r);
      if (y + 1 < r) visit(i + r);
      if (z > 0) visit(i - rr);
      if (z + 1 < r) visit(i + rr);
    }
    frontier.swap(next);
  }

  VoxelGrid out(r);
  for (std::uint64_t i = 0; i < n; ++i) {
    out.data()[i] = outside[i] ? 0 : 1;
  }
  return out;
}

}  // namespace mvd
