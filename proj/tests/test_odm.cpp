// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mvd/errors.hpp"
#include "mvd/odm.hpp"
#include "mvd/odm_io.hpp"
#include "support.hpp"

using namespace mvd;
using namespace mvd::testing;

TEST_CASE("extract_odm: full cube has depth 1 everywhere, empty grid 0") {
  const VoxelGrid full(3, true);
  const VoxelGrid empty(3);
  for (ViewId v : kAllViews) {
    const Odm d_full = extract_odm(full, v);
    const Odm d_empty = extract_odm(empty, v);
    for (std::uint32_t i = 0; i < 9; ++i) {
      CHECK(d_full.depth[i] == 1);
      CHECK(d_empty.depth[i] == 0);
    }
  }
}

TEST_CASE("extract_odm: single voxel seen from Z+") {
  VoxelGrid g(4);
  g.set(1, 2, 0, true);
  const Odm odm = extract_odm(g, ViewId::z_pos);
  for (std::uint32_t v = 0; v < 4; ++v) {
    for (std::uint32_t u = 0; u < 4; ++u) {
      CHECK(odm.at(u, v) == odm_pixel_oracle(g, ViewId::z_pos, u, v));
      if (u == 1 && v == 2) {
        CHECK(odm.at(u, v) == 1);  // voxel sits on the z=0 viewing face
      } else {
        CHECK(odm.at(u, v) == 0);
      }
    }
  }
}

TEST_CASE("extract_all: every view matches the brute-force column scan") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const VoxelGrid g = random_grid(rng, 6, 0.4);
    const OdmSet set = extract_all(g);
    for (ViewId v : kAllViews) {
      CHECK(set[v] == extract_odm_oracle(g, v));
    }
  }
}

TEST_CASE("silhouette: indicator of nonzero depth") {
  Odm odm{ViewId::y_neg, 2, {0, 1, 2, 0}};
  CHECK(silhouette(odm) == std::vector<std::uint8_t>{0, 1, 1, 0});

  Odm zeros{ViewId::x_pos, 2, {0, 0, 0, 0}};
  CHECK(silhouette(zeros) == std::vector<std::uint8_t>{0, 0, 0, 0});

  Odm ones{ViewId::x_pos, 2, {1, 1, 1, 1}};
  CHECK(silhouette(ones) == std::vector<std::uint8_t>{1, 1, 1, 1});
}

TEST_CASE("silhouette equals the orthographic occupancy projection") {
  std::mt19937_64 rng(37);
  const VoxelGrid g = random_grid(rng, 5, 0.3);
  for (ViewId v : kAllViews) {
    const auto mask = silhouette(extract_odm(g, v));
    for (std::uint32_t pv = 0; pv < 5; ++pv) {
      for (std::uint32_t pu = 0; pu < 5; ++pu) {
        const bool hit = odm_pixel_oracle(g, v, pu, pv) != 0;
        CHECK(mask[pv * 5 + pu] == (hit ? 1 : 0));
      }
    }
  }
}

TEST_CASE("upsample_odm_nn: factor 1 identity and depth rescaling") {
  Odm odm{ViewId::z_pos, 2, {0, 0, 0, 2}};
  CHECK(upsample_odm_nn(odm, 1) == odm);

  const Odm up = upsample_odm_nn(odm, 2);
  CHECK(up.resolution == 4);
  // pixel (1,1) of the input becomes the 2x2 block at (2..3, 2..3), with
  // depth (2-1)*2 + 1 = 3.
  for (std::uint32_t v = 0; v < 4; ++v) {
    for (std::uint32_t u = 0; u < 4; ++u) {
      CHECK(up.at(u, v) == ((u >= 2 && v >= 2) ? 3u : 0u));
    }
  }
}

TEST_CASE("extraction commutes with nearest-neighbor up-sampling") {
  std::mt19937_64 rng(41);
  for (std::uint32_t factor : {2u, 3u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const VoxelGrid g = random_grid(rng, 4, 0.4);
      const VoxelGrid up = upsample_nn(g, factor);
      for (ViewId v : kAllViews) {
        CHECK(extract_odm(up, v) == upsample_odm_nn(extract_odm(g, v), factor));
      }
    }
  }
}

TEST_CASE("opposite views agree on silhouette and bound depth sums") {
  std::mt19937_64 rng(43);
  const std::uint32_t r = 6;
  const VoxelGrid g = random_grid(rng, r, 0.3);
  for (int axis = 0; axis < 3; ++axis) {
    const Odm pos = extract_odm(g, static_cast<ViewId>(2 * axis));
    const Odm neg = extract_odm(g, static_cast<ViewId>(2 * axis + 1));
    for (std::size_t i = 0; i < pos.depth.size(); ++i) {
      CHECK((pos.depth[i] != 0) == (neg.depth[i] != 0));
      if (pos.depth[i] != 0) {
        CHECK(pos.depth[i] + neg.depth[i] <= r + 1);
      }
    }
  }
}

TEST_CASE("odm codec: round trip, wire order, and errors") {
  std::mt19937_64 rng(47);
  const VoxelGrid g = random_grid(rng, 5, 0.4);
  for (ViewId v : kAllViews) {
    const Odm odm = extract_odm(g, v);
    CHECK(decode_odm(encode_odm(odm)) == odm);
  }

  const Odm odm{ViewId::y_pos, 2, {0, 1, 2, 0}};
  const std::vector<std::uint8_t> bytes = encode_odm(odm);
  const std::vector<std::uint8_t> expect = {
      'M', 'V', 'D', 'O', 1, 0,           // magic, version
      2,                                  // view id (Y+)
      2, 0, 0, 0,                         // resolution
      0, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0,
  };
  CHECK(bytes == expect);

  auto bad_view = bytes;
  bad_view[6] = 9;
  CHECK_THROWS_AS(decode_odm(bad_view), FormatError);

  auto bad_depth = bytes;
  bad_depth[15] = 7;  // depth 7 > resolution 2
  CHECK_THROWS_WITH_AS(decode_odm(bad_depth), doctest::Contains("exceeds resolution"),
                       FormatError);

  auto truncated = bytes;
  truncated.pop_back();
  CHECK_THROWS_AS(decode_odm(truncated), FormatError);
}
