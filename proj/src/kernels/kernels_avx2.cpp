// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after the runtime CPU check in
// avx2_table().

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "mvd/kernels.hpp"

namespace mvd::kernels {

namespace {

void axpy_f64_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d xv = _mm256_loadu_pd(x + i);
    __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, xv, yv));
  }
  for (; i < n; ++i) {
    y[i] = std::fma(a, x[i], y[i]);
  }
}

double dot_f64_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
  }
  __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double result = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n; ++i) {
    result = std::fma(x[i], y[i], result);
  }
  return result;
}

// Sums 0/1 bytes via the unsigned sum-of-absolute-differences trick.
inline __m256i sad_accumulate(__m256i acc, __m256i bytes) {
  return _mm256_add_epi64(acc, _mm256_sad_epu8(bytes, _mm256_setzero_si256()));
}

inline std::uint64_t sad_reduce(__m256i acc) {
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

std::uint64_t count_u8_avx2(const std::uint8_t* p, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    acc = sad_accumulate(acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i)));
  }
  std::uint64_t count = sad_reduce(acc);
  for (; i < n; ++i) {
    count += p[i];
  }
  return count;
}

std::uint64_t count_and_u8_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = sad_accumulate(acc, _mm256_and_si256(av, bv));
  }
  std::uint64_t count = sad_reduce(acc);
  for (; i < n; ++i) {
    count += static_cast<std::uint8_t>(a[i] & b[i]);
  }
  return count;
}

std::uint64_t count_or_u8_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i av = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i bv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = sad_accumulate(acc, _mm256_or_si256(av, bv));
  }
  std::uint64_t count = sad_reduce(acc);
  for (; i < n; ++i) {
    count += static_cast<std::uint8_t>(a[i] | b[i]);
  }
  return count;
}

void add_mask_u8_avx2(std::uint8_t* votes, const std::uint8_t* mask, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i vv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(votes + i));
    __m256i mv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(mask + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(votes + i), _mm256_add_epi8(vv, mv));
  }
  for (; i < n; ++i) {
    votes[i] = static_cast<std::uint8_t>(votes[i] + mask[i]);
  }
}

void increment_u8_avx2(std::uint8_t* p, std::size_t n) {
  const __m256i one = _mm256_set1_epi8(1);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(p + i), _mm256_add_epi8(v, one));
  }
  for (; i < n; ++i) {
    p[i] = static_cast<std::uint8_t>(p[i] + 1u);
  }
}

void apply_votes_u8_avx2(std::uint8_t* grid, const std::uint8_t* votes, std::uint8_t k,
                         std::size_t n) {
  const __m256i kv = _mm256_set1_epi8(static_cast<char>(k));
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i vv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(votes + i));
    __m256i gv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(grid + i));
    // votes >= k  <=>  max_epu8(votes, k) == votes
    __m256i ge = _mm256_cmpeq_epi8(_mm256_max_epu8(vv, kv), vv);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(grid + i), _mm256_andnot_si256(ge, gv));
  }
  for (; i < n; ++i) {
    if (votes[i] >= k) {
      grid[i] = 0;
    }
  }
}

void odm_scan_u32_avx2(std::uint32_t* depth, const std::uint8_t* occ, std::uint32_t d,
                       std::size_t n) {
  const __m256i dv = _mm256_set1_epi32(static_cast<int>(d));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i depths = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(depth + i));
    __m128i occ8 = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(occ + i));
    __m256i occ32 = _mm256_cvtepu8_epi32(occ8);
    __m256i unset = _mm256_cmpeq_epi32(depths, zero);
    __m256i hit = _mm256_andnot_si256(_mm256_cmpeq_epi32(occ32, zero), unset);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(depth + i),
                        _mm256_blendv_epi8(depths, dv, hit));
  }
  for (; i < n; ++i) {
    if (depth[i] == 0 && occ[i] != 0) {
      depth[i] = d;
    }
  }
}

void carve_front_u8_avx2(std::uint8_t* grid, const std::uint32_t* depth, std::uint32_t limit,
                         std::size_t n) {
  // depth values stay far below 2^31, so the signed compare is safe.
  const __m256i lv = _mm256_set1_epi32(static_cast<int>(limit));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256i depths = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(depth + i));
    int hit = _mm256_movemask_ps(_mm256_castsi256_ps(_mm256_cmpgt_epi32(depths, lv)));
    while (hit != 0) {
      int bit = __builtin_ctz(static_cast<unsigned>(hit));
      grid[i + static_cast<std::size_t>(bit)] = 0;
      hit &= hit - 1;
    }
  }
  for (; i < n; ++i) {
    if (depth[i] > limit) {
      grid[i] = 0;
    }
  }
}

constexpr Dispatch kAvx2Table = {
    axpy_f64_avx2,    dot_f64_avx2,      count_u8_avx2,
    count_and_u8_avx2, count_or_u8_avx2, add_mask_u8_avx2,
    increment_u8_avx2, apply_votes_u8_avx2, odm_scan_u32_avx2,
    carve_front_u8_avx2,
};

}  // namespace

const Dispatch* avx2_table() {
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &kAvx2Table : nullptr;
}

}  // namespace mvd::kernels
