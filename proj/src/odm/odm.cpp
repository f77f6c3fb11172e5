// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/odm.hpp"

#include <stdexcept>

#include "mvd/kernels.hpp"

namespace mvd {

std::string_view view_name(ViewId v) {
  switch (v) {
    case ViewId::x_pos: return "xp";
    case ViewId::x_neg: return "xn";
    case ViewId::y_pos: return "yp";
    case ViewId::y_neg: return "yn";
    case ViewId::z_pos: return "zp";
    case ViewId::z_neg: return "zn";
  }
  return "??";
}

Odm extract_odm(const VoxelGrid& grid, ViewId view) {
  const std::uint32_t r = grid.resolution();
  Odm odm{view, r, std::vector<std::uint32_t>(static_cast<std::size_t>(r) * r, 0)};
  const std::uint8_t* cells = grid.data();
  const auto& k = kernels::active();
  const std::uint64_t rr = static_cast<std::uint64_t>(r) * r;
  const bool neg = view_negative(view);

  switch (view_axis(view)) {
    case 0:
      // (u,v) = (y,z); columns are contiguous in x, scan with early exit.
      for (std::uint32_t z = 0; z < r; ++z) {
        for (std::uint32_t y = 0; y < r; ++y) {
          const std::uint8_t* col = cells + grid.index(0, y, z);
          std::uint32_t d = 0;
          if (!neg) {
            for (std::uint32_t x = 0; x < r; ++x) {
              if (col[x]) {
                d = x + 1;
                break;
              }
            }
          } else {
            for (std::uint32_t x = r; x > 0; --x) {
              if (col[x - 1]) {
                d = r - (x - 1);
                break;
              }
            }
          }
          odm.at(y, z) = d;
        }
      }
      break;
    case 1:
      // (u,v) = (x,z); sweep y layers, each layer is R contiguous rows.
      for (std::uint32_t layer = 0; layer < r; ++layer) {
        const std::uint32_t y = neg ? r - 1 - layer : layer;
        for (std::uint32_t z = 0; z < r; ++z) {
          k.odm_scan_u32(odm.depth.data() + static_cast<std::size_t>(z) * r,
                         cells + grid.index(0, y, z), layer + 1, r);
        }
      }
      break;
    default:
      // (u,v) = (x,y); sweep z layers, each layer is one contiguous slice.
      for (std::uint32_t layer = 0; layer < r; ++layer) {
        const std::uint32_t z = neg ? r - 1 - layer : layer;
        k.odm_scan_u32(odm.depth.data(), cells + static_cast<std::size_t>(z) * rr, layer + 1,
                       rr);
      }
      break;
  }
  return odm;
}

OdmSet extract_all(const VoxelGrid& grid) {
  OdmSet set;
  for (ViewId v : kAllViews) {
    set[v] = extract_odm(grid, v);
  }
  return set;
}

std::vector<std::uint8_t> silhouette(const Odm& odm) {
  std::vector<std::uint8_t> mask(odm.depth.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = odm.depth[i] != 0 ? 1 : 0;
  }
  return mask;
}

Odm upsample_odm_nn(const Odm& odm, std::uint32_t factor) {
  if (factor < 1) {
    throw std::invalid_argument("ODM up-sampling factor must be >= 1");
  }
  if (factor == 1) {
    return odm;
  }
  const std::uint32_t r = odm.resolution;
  const std::uint32_t fr = r * factor;
  Odm out{odm.view, fr, std::vector<std::uint32_t>(static_cast<std::size_t>(fr) * fr)};
  for (std::uint32_t v = 0; v < fr; ++v) {
    const std::uint32_t* src = odm.depth.data() + static_cast<std::size_t>(v / factor) * r;
    std::uint32_t* dst = out.depth.data() + static_cast<std::size_t>(v) * fr;
    for (std::uint32_t u = 0; u < fr; ++u) {
      const std::uint32_t d = src[u / factor];
      dst[u] = d == 0 ? 0 : (d - 1) * factor + 1;
    }
  }
  return out;
}

}  // namespace mvd
