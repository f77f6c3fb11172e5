// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Shared helpers and independent oracles for the test suites. Everything
// here recomputes results by brute force, on purpose, so the production
// paths are checked against straight-line reimplementations.

#include <cstdint>
#include <random>
#include <vector>

#include "mvd/odm.hpp"
#include "mvd/voxel_grid.hpp"

namespace mvd::testing {

inline VoxelGrid random_grid(std::mt19937_64& rng, std::uint32_t resolution,
                             double density = 0.5) {
  VoxelGrid grid(resolution);
  const std::uint64_t cutoff =
      static_cast<std::uint64_t>(density * 18446744073709551615.0);
  for (std::uint64_t i = 0; i < grid.cell_count(); ++i) {
    grid.data()[i] = rng() < cutoff ? 1 : 0;
  }
  return grid;
}

// Per-cell floor-division oracle for nearest-neighbor up-sampling.
inline VoxelGrid upsample_nn_oracle(const VoxelGrid& grid, std::uint32_t factor) {
  const std::uint32_t fr = grid.resolution() * factor;
  VoxelGrid out(fr);
  for (std::uint32_t z = 0; z < fr; ++z) {
    for (std::uint32_t y = 0; y < fr; ++y) {
      for (std::uint32_t x = 0; x < fr; ++x) {
        out.set(x, y, z, grid.test(x / factor, y / factor, z / factor));
      }
    }
  }
  return out;
}

// Brute-force column scan for one ODM pixel.
inline std::uint32_t odm_pixel_oracle(const VoxelGrid& grid, ViewId view, std::uint32_t u,
                                      std::uint32_t v) {
  const std::uint32_t r = grid.resolution();
  for (std::uint32_t layer = 0; layer < r; ++layer) {
    const std::uint32_t along = view_negative(view) ? r - 1 - layer : layer;
    std::uint32_t x = 0, y = 0, z = 0;
    switch (view_axis(view)) {
      case 0: x = along; y = u; z = v; break;
      case 1: x = u; y = along; z = v; break;
      default: x = u; y = v; z = along; break;
    }
    if (grid.test(x, y, z)) {
      return layer + 1;
    }
  }
  return 0;
}

inline Odm extract_odm_oracle(const VoxelGrid& grid, ViewId view) {
  const std::uint32_t r = grid.resolution();
  Odm odm{view, r, std::vector<std::uint32_t>(static_cast<std::size_t>(r) * r)};
  for (std::uint32_t v = 0; v < r; ++v) {
    for (std::uint32_t u = 0; u < r; ++u) {
      odm.at(u, v) = odm_pixel_oracle(grid, view, u, v);
    }
  }
  return odm;
}

// Low-resolution covering grid: a coarse cell is occupied when any cell of
// its block is. Guarantees that NN up-sampling the result contains the
// original, which the exact-carving experiments rely on.
inline VoxelGrid covering_downsample(const VoxelGrid& grid, std::uint32_t factor) {
  const std::uint32_t r = grid.resolution() / factor;
  VoxelGrid out(r);
  for (std::uint32_t z = 0; z < grid.resolution(); ++z) {
    for (std::uint32_t y = 0; y < grid.resolution(); ++y) {
      for (std::uint32_t x = 0; x < grid.resolution(); ++x) {
        if (grid.test(x, y, z)) {
          out.set(x / factor, y / factor, z / factor, true);
        }
      }
    }
  }
  return out;
}

inline bool subset_of(const VoxelGrid& a, const VoxelGrid& b) {
  for (std::uint64_t i = 0; i < a.cell_count(); ++i) {
    if (a.data()[i] && !b.data()[i]) {
      return false;
    }
  }
  return true;
}

}  // namespace mvd::testing
