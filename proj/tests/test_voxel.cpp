// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <random>

#include "mvd/errors.hpp"
#include "mvd/shape.hpp"
#include "mvd/voxel_grid.hpp"
#include "mvd/voxel_io.hpp"
#include "support.hpp"

using namespace mvd;
using namespace mvd::testing;

namespace {

ShapeSpec unit_sphere() {
  ShapeSpec s;
  s.kind = ShapeSpec::Kind::sphere;
  s.center = {0.5, 0.5, 0.5};
  s.radius = 0.5;
  return s;
}

}  // namespace

TEST_CASE("rasterize: full box occupies every cell") {
  ShapeSpec box;
  box.kind = ShapeSpec::Kind::box;
  box.min = {0, 0, 0};
  box.max = {1, 1, 1};
  const VoxelGrid g = rasterize(box, 2);
  CHECK(g.occupied_count() == 8);
}

TEST_CASE("rasterize: zero-radius sphere at R=4 is empty") {
  ShapeSpec s = unit_sphere();
  s.radius = 0.0;
  CHECK(rasterize(s, 4).occupied_count() == 0);
}

TEST_CASE("rasterize: sphere matches the cell-center inside test") {
  const ShapeSpec s = unit_sphere();
  const VoxelGrid g = rasterize(s, 4);
  for (std::uint32_t z = 0; z < 4; ++z) {
    for (std::uint32_t y = 0; y < 4; ++y) {
      for (std::uint32_t x = 0; x < 4; ++x) {
        const double dx = (x + 0.5) / 4.0 - 0.5;
        const double dy = (y + 0.5) / 4.0 - 0.5;
        const double dz = (z + 0.5) / 4.0 - 0.5;
        const bool expect = dx * dx + dy * dy + dz * dz <= 0.25;
        CHECK(g.test(x, y, z) == expect);
      }
    }
  }
}

TEST_CASE("rasterize: union equals cell-wise OR of children") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    ShapeSpec u;
    u.kind = ShapeSpec::Kind::union_;
    u.children.push_back(random_shape(rng));
    u.children.push_back(random_shape(rng));
    const VoxelGrid both = rasterize(u, 8);
    const VoxelGrid a = rasterize(u.children[0], 8);
    const VoxelGrid b = rasterize(u.children[1], 8);
    for (std::uint64_t i = 0; i < both.cell_count(); ++i) {
      CHECK(both.data()[i] == (a.data()[i] | b.data()[i]));
    }
  }
}

TEST_CASE("rasterize: rejects shapes leaving the unit cube") {
  ShapeSpec s = unit_sphere();
  s.radius = 0.6;
  CHECK_THROWS_AS(rasterize(s, 4), std::invalid_argument);
}

TEST_CASE("upsample_nn: corner voxel becomes a corner block") {
  VoxelGrid g(2);
  g.set(0, 0, 0, true);
  const VoxelGrid up = upsample_nn(g, 2);
  CHECK(up.resolution() == 4);
  CHECK(up.occupied_count() == 8);
  for (std::uint32_t z = 0; z < 2; ++z) {
    for (std::uint32_t y = 0; y < 2; ++y) {
      for (std::uint32_t x = 0; x < 2; ++x) {
        CHECK(up.test(x, y, z));
      }
    }
  }
}

TEST_CASE("upsample_nn: factor 1 is the identity") {
  std::mt19937_64 rng(3);
  const VoxelGrid g = random_grid(rng, 5);
  CHECK(upsample_nn(g, 1) == g);
}

TEST_CASE("upsample_nn: matches the per-cell oracle and scales counts") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const VoxelGrid g = random_grid(rng, 4);
    const VoxelGrid up = upsample_nn(g, 3);
    CHECK(up == upsample_nn_oracle(g, 3));
    CHECK(up.occupied_count() == 27 * g.occupied_count());
  }
}

TEST_CASE("upsample_nn: composes multiplicatively") {
  std::mt19937_64 rng(9);
  for (std::uint32_t a = 1; a <= 4; ++a) {
    for (std::uint32_t b = 1; b <= 4; ++b) {
      const VoxelGrid g = random_grid(rng, 8);
      CHECK(upsample_nn(upsample_nn(g, a), b) == upsample_nn(g, a * b));
    }
  }
}

TEST_CASE("upsample_nn: rejects overflowing resolutions") {
  VoxelGrid g(8);
  CHECK_THROWS_AS(upsample_nn(g, 200), std::invalid_argument);
  CHECK_NOTHROW(upsample_nn(g, 128));
}

TEST_CASE("solidify: hollow shell fills to a solid cube") {
  VoxelGrid shell(4);
  for (std::uint32_t z = 0; z < 4; ++z) {
    for (std::uint32_t y = 0; y < 4; ++y) {
      for (std::uint32_t x = 0; x < 4; ++x) {
        const bool boundary = x == 0 || x == 3 || y == 0 || y == 3 || z == 0 || z == 3;
        shell.set(x, y, z, boundary);
      }
    }
  }
  const VoxelGrid solid = solidify(shell);
  CHECK(solid.occupied_count() == 64);
}

TEST_CASE("solidify: idempotent, monotone, and empty-grid safe") {
  CHECK(solidify(VoxelGrid(4)).occupied_count() == 0);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const VoxelGrid g = random_grid(rng, 6, 0.3);
    const VoxelGrid s = solidify(g);
    CHECK(subset_of(g, s));
    CHECK(solidify(s) == s);
  }
}

TEST_CASE("voxel codec: fixed byte layout for tiny grids") {
  // header: magic, version 1, resolution 2
  const std::vector<std::uint8_t> header = {'M', 'V', 'D', 'V', 1, 0, 2, 0, 0, 0};

  VoxelGrid empty(2);
  std::vector<std::uint8_t> expect = header;
  expect.insert(expect.end(), {8, 0, 0, 0});  // one empty run of 8
  CHECK(encode_voxels(empty) == expect);

  VoxelGrid full(2, true);
  expect = header;
  expect.insert(expect.end(), {0, 0, 0, 0, 8, 0, 0, 0});  // zero-length empty, 8 occupied
  CHECK(encode_voxels(full) == expect);
}

TEST_CASE("voxel codec: random round trips are exact") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const VoxelGrid g = random_grid(rng, 8);
    CHECK(decode_voxels(encode_voxels(g)) == g);
  }
}

TEST_CASE("voxel codec: malformed streams carry byte offsets") {
  const VoxelGrid g(2, true);
  std::vector<std::uint8_t> bytes = encode_voxels(g);

  {
    auto bad = bytes;
    bad[0] = 'X';
    CHECK_THROWS_WITH_AS(decode_voxels(bad), doctest::Contains("bad magic"), FormatError);
  }
  {
    auto truncated = bytes;
    truncated.resize(bytes.size() - 2);
    try {
      decode_voxels(truncated);
      FAIL("expected FormatError");
    } catch (const FormatError& e) {
      CHECK(e.offset() == bytes.size() - 4);
      CHECK(std::string(e.what()).find("truncated") != std::string::npos);
    }
  }
  {
    auto oversum = bytes;
    oversum[oversum.size() - 4] = 9;  // occupied run of 9 > 8 cells
    CHECK_THROWS_WITH_AS(decode_voxels(oversum), doctest::Contains("sum past"), FormatError);
  }
  {
    auto trailing = bytes;
    trailing.push_back(0);
    CHECK_THROWS_WITH_AS(decode_voxels(trailing), doctest::Contains("trailing"), FormatError);
  }
}

TEST_CASE("voxel codec: golden file decodes to the known grid") {
  const VoxelGrid g = load_voxels(std::string(MVD_GOLDEN_DIR) + "/staircase.mvdv");
  // 4^3 staircase: cell occupied iff x + y <= z.
  CHECK(g.resolution() == 4);
  for (std::uint32_t z = 0; z < 4; ++z) {
    for (std::uint32_t y = 0; y < 4; ++y) {
      for (std::uint32_t x = 0; x < 4; ++x) {
        CHECK(g.test(x, y, z) == (x + y <= z));
      }
    }
  }
}

TEST_CASE("shape json: round trip and validation errors") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const ShapeSpec s = random_shape(rng);
    const ShapeSpec back = parse_shape_json(shape_to_json(s));
    CHECK(rasterize(back, 8) == rasterize(s, 8));
  }
  CHECK_THROWS_AS(parse_shape_json("{\"kind\":\"blob\"}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_shape_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(
      parse_shape_json("{\"kind\":\"sphere\",\"center\":[0.5,0.5,0.5],\"radius\":0.7}"),
      std::invalid_argument);
}
