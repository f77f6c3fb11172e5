// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "mvd/voxel_grid.hpp"

namespace mvd {

// Intersection over union of the occupied sets; 1.0 when both grids are
// empty. Throws std::invalid_argument on mismatched resolutions.
double iou(const VoxelGrid& a, const VoxelGrid& b);

// Mesh of unit-voxel-face squares in normalized [0,1] coordinates.
struct QuadMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::uint32_t, 4>> quads;
  std::vector<double> areas;

  double total_area() const;
};

// One quad per occupied-voxel face whose 6-neighbor is empty or out of
// bounds; vertices are lattice corners divided by the resolution.
QuadMesh exposed_face_mesh(const VoxelGrid& grid);

// Area-uniform point samples: quads drawn proportionally to area, positions
// uniform within the quad. Deterministic for a fixed seed.
std::vector<std::array<double, 3>> sample_surface(const QuadMesh& mesh, std::uint64_t n,
                                                  std::uint64_t seed);

struct EvalReport {
  std::optional<double> iou;                          // [0,1]
  std::optional<double> f1, precision, recall;        // [0,100]
  std::uint64_t sample_count = 0;
  double threshold_sq = 0.0;
  std::uint64_t seed = 0;

  std::string to_kv() const;
  // CSV rows "category,metric,value,n,seed", one row per present metric.
  void write_csv_rows(std::ostream& out, const std::string& category) const;
};

inline constexpr double kDefaultF1ThresholdSq = 1e-4;
inline constexpr std::uint64_t kDefaultF1Samples = 10000;

// Surface F1: samples n points from each exposed-face mesh, then scores the
// fraction of points with a squared distance to the other sampling set at
// most threshold_sq (precision: predicted against ground truth; recall:
// the reverse). Matching is exact via a uniform bucket grid.
EvalReport f1_surface(const VoxelGrid& pred, const VoxelGrid& gt, std::uint64_t n,
                      double threshold_sq, std::uint64_t seed);

// Exposed-face mesh as Wavefront OBJ text, quads split into two triangles.
void write_obj(const QuadMesh& mesh, std::ostream& out);

}  // namespace mvd
