// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "mvd/voxel_grid.hpp"

namespace mvd {

// The six axis-aligned orthographic views, in wire order.
enum class ViewId : std::uint8_t {
  x_pos = 0,
  x_neg = 1,
  y_pos = 2,
  y_neg = 3,
  z_pos = 4,
  z_neg = 5,
};

inline constexpr std::array<ViewId, 6> kAllViews = {
    ViewId::x_pos, ViewId::x_neg, ViewId::y_pos,
    ViewId::y_neg, ViewId::z_pos, ViewId::z_neg,
};

inline constexpr int view_axis(ViewId v) { return static_cast<int>(v) / 2; }
inline constexpr bool view_negative(ViewId v) { return (static_cast<int>(v) & 1) != 0; }
std::string_view view_name(ViewId v);  // "xp", "xn", "yp", "yn", "zp", "zn"

// Orthographic depth map for one view. depth[v*R + u] is 0 when the ray at
// pixel (u,v) hits nothing, otherwise the 1-based index of the first
// occupied voxel layer counted from the viewing face. Pixel axes (u,v) are
// the two non-view axes in (x,y,z) order; direction-negative views scan
// from index R-1 downward.
struct Odm {
  ViewId view = ViewId::x_pos;
  std::uint32_t resolution = 0;
  std::vector<std::uint32_t> depth;

  std::uint32_t at(std::uint32_t u, std::uint32_t v) const {
    return depth[static_cast<std::size_t>(v) * resolution + u];
  }
  std::uint32_t& at(std::uint32_t u, std::uint32_t v) {
    return depth[static_cast<std::size_t>(v) * resolution + u];
  }

  friend bool operator==(const Odm& a, const Odm& b) = default;
};

// The six ODMs of one object, indexed by ViewId.
struct OdmSet {
  std::array<Odm, 6> views;

  const Odm& operator[](ViewId v) const { return views[static_cast<std::size_t>(v)]; }
  Odm& operator[](ViewId v) { return views[static_cast<std::size_t>(v)]; }

  std::uint32_t resolution() const { return views[0].resolution; }

  friend bool operator==(const OdmSet& a, const OdmSet& b) = default;
};

Odm extract_odm(const VoxelGrid& grid, ViewId view);
OdmSet extract_all(const VoxelGrid& grid);

// Binary mask, 1 where depth is nonzero.
std::vector<std::uint8_t> silhouette(const Odm& odm);

// Nearest-neighbor pixel replication with depth rescaling
// d -> (d-1)*factor + 1 (zeros stay zero), which commutes with
// nearest-neighbor voxel up-sampling.
Odm upsample_odm_nn(const Odm& odm, std::uint32_t factor);

}  // namespace mvd
