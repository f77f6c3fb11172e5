// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mvd/voxel_grid.hpp"

namespace mvd {

using Point3 = std::array<double, 3>;

// Analytic solid in normalized [0,1] object coordinates. Boxes and
// quadrics are primitives; union_ and difference combine children
// (difference is children[0] minus the union of the rest).
struct ShapeSpec {
  enum class Kind { box, sphere, ellipsoid, union_, difference };

  Kind kind = Kind::box;
  Point3 min{0, 0, 0};            // box
  Point3 max{1, 1, 1};            // box
  Point3 center{0.5, 0.5, 0.5};   // sphere / ellipsoid
  double radius = 0.5;            // sphere
  Point3 radii{0.5, 0.5, 0.5};    // ellipsoid
  std::vector<ShapeSpec> children;
};

// Throws std::invalid_argument when a primitive extends outside the unit
// cube or a combinator has the wrong child count.
void validate(const ShapeSpec& spec);

bool inside(const ShapeSpec& spec, const Point3& p);

// Cell (x,y,z) is occupied iff the cell center ((x+.5)/R, (y+.5)/R, (z+.5)/R)
// lies inside the shape.
VoxelGrid rasterize(const ShapeSpec& spec, std::uint32_t resolution);

// Random well-formed shape for procedural datasets: a box, sphere or
// ellipsoid, a union of two or three primitives, or a primitive with a
// bite taken out of it.
ShapeSpec random_shape(std::mt19937_64& rng);

// JSON (de)serialization of shape spec files.
ShapeSpec parse_shape_json(const std::string& text);
std::string shape_to_json(const ShapeSpec& spec);
ShapeSpec load_shape_file(const std::string& path);

}  // namespace mvd
