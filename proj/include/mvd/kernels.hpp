// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mvd::kernels {

// Inner-loop kernels shared by the grid, carving and network code. Every
// entry has a scalar reference implementation; on x86-64 with AVX2+FMA a
// vectorized variant is selected at runtime. Elementwise kernels are
// bit-identical across variants (the scalar axpy uses a fused multiply-add
// to match the vector path); dot_f64 is a reduction and may differ from the
// scalar order in the last ulps.
//
// Byte buffers passed to the counting/vote kernels hold strictly 0 or 1.
struct Dispatch {
  // y[i] += a * x[i]
  void (*axpy_f64)(double* y, const double* x, double a, std::size_t n);
  // sum_i x[i] * y[i]
  double (*dot_f64)(const double* x, const double* y, std::size_t n);
  // number of nonzero bytes
  std::uint64_t (*count_u8)(const std::uint8_t* p, std::size_t n);
  // number of positions where both / either byte is nonzero
  std::uint64_t (*count_and_u8)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
  std::uint64_t (*count_or_u8)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
  // votes[i] += mask[i]
  void (*add_mask_u8)(std::uint8_t* votes, const std::uint8_t* mask, std::size_t n);
  // p[i] += 1
  void (*increment_u8)(std::uint8_t* p, std::size_t n);
  // grid[i] = 0 where votes[i] >= k
  void (*apply_votes_u8)(std::uint8_t* grid, const std::uint8_t* votes, std::uint8_t k,
                         std::size_t n);
  // depth[i] = d where depth[i] == 0 and occ[i] != 0
  void (*odm_scan_u32)(std::uint32_t* depth, const std::uint8_t* occ, std::uint32_t d,
                       std::size_t n);
  // grid[i] = 0 where depth[i] > limit
  void (*carve_front_u8)(std::uint8_t* grid, const std::uint32_t* depth, std::uint32_t limit,
                         std::size_t n);
};

enum class Backend { scalar, avx2 };

const Dispatch& scalar_table();

// nullptr when the AVX2 translation unit is not compiled in or the CPU
// lacks AVX2/FMA.
const Dispatch* avx2_table();

// Active table. Defaults to the best available backend; the MVD_KERNELS
// environment variable ("scalar", "avx2", "auto") overrides the choice at
// first use. The selection is fixed per process unless set_backend is
// called, so results are reproducible within one run.
const Dispatch& active();

void set_backend(Backend b);
std::string_view backend_name();

}  // namespace mvd::kernels
