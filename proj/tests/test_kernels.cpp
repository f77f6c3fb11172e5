// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "mvd/kernels.hpp"

using namespace mvd;

namespace {

std::vector<double> random_doubles(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) {
    x = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0;
  }
  return v;
}

std::vector<std::uint8_t> random_bits(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) {
    x = rng() & 1;
  }
  return v;
}

// Sizes straddling the vector width, including the scalar tail.
const std::size_t kSizes[] = {0, 1, 3, 7, 8, 31, 32, 33, 100, 1024, 1000003};

}  // namespace

TEST_CASE("scalar and avx2 kernel variants agree") {
  const kernels::Dispatch& scalar = kernels::scalar_table();
  const kernels::Dispatch* avx2 = kernels::avx2_table();
  if (avx2 == nullptr) {
    MESSAGE("AVX2 unavailable, skipping equivalence checks");
    return;
  }
  std::mt19937_64 rng(7);

  for (std::size_t n : kSizes) {
    CAPTURE(n);

    // axpy: elementwise fma, bit-identical.
    {
      auto x = random_doubles(rng, n);
      auto y0 = random_doubles(rng, n);
      auto y1 = y0;
      scalar.axpy_f64(y0.data(), x.data(), 1.37, n);
      avx2->axpy_f64(y1.data(), x.data(), 1.37, n);
      CHECK(y0 == y1);
    }
    // dot: reduction, tolerance-based.
    {
      auto x = random_doubles(rng, n);
      auto y = random_doubles(rng, n);
      const double a = scalar.dot_f64(x.data(), y.data(), n);
      const double b = avx2->dot_f64(x.data(), y.data(), n);
      CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
    // byte counting: exact.
    {
      auto a = random_bits(rng, n);
      auto b = random_bits(rng, n);
      CHECK(scalar.count_u8(a.data(), n) == avx2->count_u8(a.data(), n));
      CHECK(scalar.count_and_u8(a.data(), b.data(), n) ==
            avx2->count_and_u8(a.data(), b.data(), n));
      CHECK(scalar.count_or_u8(a.data(), b.data(), n) ==
            avx2->count_or_u8(a.data(), b.data(), n));
    }
    // vote accumulation and application: exact.
    {
      auto mask = random_bits(rng, n);
      std::vector<std::uint8_t> v0(n, 3), v1(n, 3);
      scalar.add_mask_u8(v0.data(), mask.data(), n);
      avx2->add_mask_u8(v1.data(), mask.data(), n);
      CHECK(v0 == v1);

      scalar.increment_u8(v0.data(), n);
      avx2->increment_u8(v1.data(), n);
      CHECK(v0 == v1);

      auto g0 = random_bits(rng, n);
      auto g1 = g0;
      scalar.apply_votes_u8(g0.data(), v0.data(), 4, n);
      avx2->apply_votes_u8(g1.data(), v1.data(), 4, n);
      CHECK(g0 == g1);
    }
    // depth scan and front carving: exact.
    {
      auto occ = random_bits(rng, n);
      std::vector<std::uint32_t> d0(n), d1(n);
      for (std::size_t i = 0; i < n; ++i) {
        d0[i] = rng() % 3;  // mix of unset and already-set pixels
      }
      d1 = d0;
      scalar.odm_scan_u32(d0.data(), occ.data(), 9, n);
      avx2->odm_scan_u32(d1.data(), occ.data(), 9, n);
      CHECK(d0 == d1);

      auto g0 = random_bits(rng, n);
      auto g1 = g0;
      scalar.carve_front_u8(g0.data(), d0.data(), 1, n);
      avx2->carve_front_u8(g1.data(), d1.data(), 1, n);
      CHECK(g0 == g1);
    }
  }
}

TEST_CASE("kernel semantics on small fixed cases") {
  const kernels::Dispatch& k = kernels::active();

  std::vector<double> y = {1.0, 2.0, 3.0};
  const std::vector<double> x = {10.0, 20.0, 30.0};
  k.axpy_f64(y.data(), x.data(), 0.5, 3);
  CHECK(y == std::vector<double>{6.0, 12.0, 18.0});

  CHECK(k.dot_f64(x.data(), x.data(), 3) == doctest::Approx(1400.0));

  const std::vector<std::uint8_t> a = {1, 0, 1, 1, 0};
  const std::vector<std::uint8_t> b = {1, 1, 0, 1, 0};
  CHECK(k.count_u8(a.data(), 5) == 3);
  CHECK(k.count_and_u8(a.data(), b.data(), 5) == 2);
  CHECK(k.count_or_u8(a.data(), b.data(), 5) == 4);

  std::vector<std::uint8_t> votes = {0, 1, 2, 3, 4};
  std::vector<std::uint8_t> grid = {1, 1, 1, 1, 1};
  k.apply_votes_u8(grid.data(), votes.data(), 2, 5);
  CHECK(grid == std::vector<std::uint8_t>{1, 1, 0, 0, 0});

  std::vector<std::uint32_t> depth = {0, 5, 0};
  const std::vector<std::uint8_t> occ = {1, 1, 0};
  k.odm_scan_u32(depth.data(), occ.data(), 7, 3);
  CHECK(depth == std::vector<std::uint32_t>{7, 5, 0});

  std::vector<std::uint8_t> cells = {1, 1, 1};
  const std::vector<std::uint32_t> front = {0, 1, 2};
  k.carve_front_u8(cells.data(), front.data(), 1, 3);
  CHECK(cells == std::vector<std::uint8_t>{1, 1, 0});
}

TEST_CASE("backend selection hooks") {
  kernels::set_backend(kernels::Backend::scalar);
  CHECK(kernels::backend_name() == "scalar");
  if (kernels::avx2_table() != nullptr) {
    kernels::set_backend(kernels::Backend::avx2);
    CHECK(kernels::backend_name() == "avx2");
  }
}
