// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/carve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <string>

#include "mvd/kernels.hpp"

namespace mvd {

namespace {

void check_resolution(const VoxelGrid& grid, std::uint32_t res, const char* what) {
  if (grid.resolution() != res) {
    throw std::invalid_argument(std::string(what) + ": resolution " + std::to_string(res) +
                                " does not match grid resolution " +
                                std::to_string(grid.resolution()));
  }
}

}  // namespace

Odm smooth_odm(const Odm& odm, const CarveConfig& config) {
  const std::uint32_t radius = config.smoothing_radius;
  if (radius == 0) {
    return odm;
  }
  const double threshold = config.effective_smoothing_threshold();
  const std::uint32_t r = odm.resolution;
  Odm out = odm;
  for (std::uint32_t v = 0; v < r; ++v) {
    for (std::uint32_t u = 0; u < r; ++u) {
      const std::uint32_t center = odm.at(u, v);
      if (center == 0) {
        continue;
      }
      const std::uint32_t u0 = u >= radius ? u - radius : 0;
      const std::uint32_t v0 = v >= radius ? v - radius : 0;
      const std::uint32_t u1 = std::min(r - 1, u + radius);
      const std::uint32_t v1 = std::min(r - 1, v + radius);
      std::uint64_t sum = 0;
      std::uint64_t count = 0;
      for (std::uint32_t nv = v0; nv <= v1; ++nv) {
        for (std::uint32_t nu = u0; nu <= u1; ++nu) {
          const std::uint32_t d = odm.at(nu, nv);
          if (d == 0) {
            continue;
          }
          const double diff = static_cast<double>(d) - static_cast<double>(center);
          if (std::abs(diff) <= threshold) {
            sum += d;
            ++count;
          }
        }
      }
      out.at(u, v) = static_cast<std::uint32_t>(
          std::llround(static_cast<double>(sum) / static_cast<double>(count)));
    }
  }
  return out;
}

VoxelGrid structure_carve(VoxelGrid grid,
                          const std::array<std::vector<std::uint8_t>, 6>& silhouettes,
                          const CarveConfig& config) {
  const std::uint32_t r = grid.resolution();
  const std::uint64_t rr = static_cast<std::uint64_t>(r) * r;
  for (const auto& mask : silhouettes) {
    if (mask.size() != rr) {
      throw std::invalid_argument("silhouette resolution does not match grid");
    }
  }
  if (config.agreement_votes < 1 || config.agreement_votes > 6) {
    throw std::invalid_argument("agreement_votes must be in [1,6]");
  }

  const auto& k = kernels::active();
  std::vector<std::uint8_t> votes(grid.cell_count(), 0);
  std::vector<std::uint8_t> removal(rr);

  for (ViewId view : kAllViews) {
    const std::vector<std::uint8_t>& sil = silhouettes[static_cast<std::size_t>(view)];
    // A pixel votes for removal when its silhouette is 0. Opposite views
    // share pixel coordinates, so both contribute votes independently.
    for (std::uint64_t i = 0; i < rr; ++i) {
      removal[i] = sil[i] == 0 ? 1 : 0;
    }
    switch (view_axis(view)) {
      case 0:
        // (u,v) = (y,z); the column is contiguous in x.
        for (std::uint32_t z = 0; z < r; ++z) {
          for (std::uint32_t y = 0; y < r; ++y) {
            if (removal[static_cast<std::size_t>(z) * r + y]) {
              k.increment_u8(votes.data() + grid.index(0, y, z), r);
            }
          }
        }
        break;
      case 1:
        // (u,v) = (x,z); add the mask row to every y layer.
        for (std::uint32_t y = 0; y < r; ++y) {
          for (std::uint32_t z = 0; z < r; ++z) {
            k.add_mask_u8(votes.data() + grid.index(0, y, z),
                          removal.data() + static_cast<std::size_t>(z) * r, r);
          }
        }
        break;
      default:
        // (u,v) = (x,y); add the whole mask to every z slice.
        for (std::uint32_t z = 0; z < r; ++z) {
          k.add_mask_u8(votes.data() + static_cast<std::size_t>(z) * rr, removal.data(), rr);
        }
        break;
    }
  }

  k.apply_votes_u8(grid.data(), votes.data(),
                   static_cast<std::uint8_t>(config.agreement_votes), grid.cell_count());
  return grid;
}

VoxelGrid detail_carve(VoxelGrid grid, const OdmSet& odms) {
  const std::uint32_t r = grid.resolution();
  const std::uint64_t rr = static_cast<std::uint64_t>(r) * r;
  for (ViewId view : kAllViews) {
    if (odms[view].resolution != r) {
      throw std::invalid_argument("ODM resolution does not match grid for detail carving");
    }
  }
  const auto& k = kernels::active();

  for (ViewId view : kAllViews) {
    const Odm& odm = odms[view];
    const bool neg = view_negative(view);
    const std::uint32_t max_depth =
        *std::max_element(odm.depth.begin(), odm.depth.end());
    switch (view_axis(view)) {
      case 0:
        // Clear the x run in front of the surface; the run is contiguous.
        for (std::uint32_t z = 0; z < r; ++z) {
          for (std::uint32_t y = 0; y < r; ++y) {
            const std::uint32_t d = odm.at(y, z);
            if (d < 2) {
              continue;
            }
            const std::uint32_t start = neg ? r - d + 1 : 0;
            std::memset(grid.data() + grid.index(start, y, z), 0, d - 1);
          }
        }
        break;
      case 1:
        // Layer ell of the view is the y = ell (or mirrored) plane; clear
        // pixels whose depth exceeds ell + 1.
        for (std::uint32_t layer = 0; layer + 1 < max_depth; ++layer) {
          const std::uint32_t y = neg ? r - 1 - layer : layer;
          for (std::uint32_t z = 0; z < r; ++z) {
            k.carve_front_u8(grid.data() + grid.index(0, y, z),
                             odm.depth.data() + static_cast<std::size_t>(z) * r, layer + 1, r);
          }
        }
        break;
      default:
        for (std::uint32_t layer = 0; layer + 1 < max_depth; ++layer) {
          const std::uint32_t z = neg ? r - 1 - layer : layer;
          k.carve_front_u8(grid.data() + static_cast<std::size_t>(z) * rr, odm.depth.data(),
                           layer + 1, rr);
        }
        break;
    }
  }
  return grid;
}

VoxelGrid carve(const VoxelGrid& grid_low, const OdmSet& odms_high,
                const CarveConfig& config) {
  const std::uint64_t target =
      static_cast<std::uint64_t>(grid_low.resolution()) * config.factor;
  for (ViewId view : kAllViews) {
    if (odms_high[view].resolution != target) {
      throw std::invalid_argument("predicted ODM resolution " +
                                  std::to_string(odms_high[view].resolution) +
                                  " does not match grid resolution times factor");
    }
  }

  VoxelGrid grid = upsample_nn(grid_low, config.factor);

  OdmSet smoothed;
  for (ViewId view : kAllViews) {
    smoothed[view] = smooth_odm(odms_high[view], config);
  }

  std::array<std::vector<std::uint8_t>, 6> masks;
  for (ViewId view : kAllViews) {
    masks[static_cast<std::size_t>(view)] = silhouette(smoothed[view]);
  }

  grid = structure_carve(std::move(grid), masks, config);
  grid = detail_carve(std::move(grid), smoothed);
  return grid;
}

}  // namespace mvd
