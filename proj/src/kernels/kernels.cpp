// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/kernels.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace mvd::kernels {

namespace {

// ---------------------------------------------------------------------------
// Scalar reference kernels
// ---------------------------------------------------------------------------

void axpy_f64_scalar(double* y, const double* x, double a, std::size_t n) {
  // std::fma keeps the per-element rounding identical to the AVX2 fmadd path.
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = std::fma(a, x[i], y[i]);
  }
}

double dot_f64_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc = std::fma(x[i], y[i], acc);
  }
  return acc;
}

std::uint64_t count_u8_scalar(const std::uint8_t* p, std::size_t n) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += p[i];
  }
  return count;
}

std::uint64_t count_and_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += static_cast<std::uint8_t>(a[i] & b[i]);
  }
  return count;
}

std::uint64_t count_or_u8_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    count += static_cast<std::uint8_t>(a[i] | b[i]);
  }
  return count;
}

void add_mask_u8_scalar(std::uint8_t* votes, const std::uint8_t* mask, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    votes[i] = static_cast<std::uint8_t>(votes[i] + mask[i]);
  }
}

void increment_u8_scalar(std::uint8_t* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = static_cast<std::uint8_t>(p[i] + 1u);
  }
}

void apply_votes_u8_scalar(std::uint8_t* grid, const std::uint8_t* votes, std::uint8_t k,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (votes[i] >= k) {
      grid[i] = 0;
    }
  }
}

void odm_scan_u32_scalar(std::uint32_t* depth, const std::uint8_t* occ, std::uint32_t d,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (depth[i] == 0 && occ[i] != 0) {
      depth[i] = d;
    }
  }
}

void carve_front_u8_scalar(std::uint8_t* grid, const std::uint32_t* depth, std::uint32_t limit,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (depth[i] > limit) {
      grid[i] = 0;
    }
  }
}

constexpr Dispatch kScalarTable = {
    axpy_f64_scalar,    dot_f64_scalar,      count_u8_scalar,
    count_and_u8_scalar, count_or_u8_scalar, add_mask_u8_scalar,
    increment_u8_scalar, apply_votes_u8_scalar, odm_scan_u32_scalar,
    carve_front_u8_scalar,
};

std::atomic<const Dispatch*> g_active{nullptr};

const Dispatch* pick_initial() {
  const char* env = std::getenv("MVD_KERNELS");
  if (env != nullptr) {
    if (std::strcmp(env, "scalar") == 0) {
      return &kScalarTable;
    }
    if (std::strcmp(env, "avx2") == 0) {
      const Dispatch* t = avx2_table();
      if (t == nullptr) {
        throw std::runtime_error("MVD_KERNELS=avx2 but AVX2 is unavailable on this machine");
      }
      return t;
    }
    // anything else, including "auto", falls through to auto-detection
  }
  const Dispatch* t = avx2_table();
  return t != nullptr ? t : &kScalarTable;
}

}  // namespace

const Dispatch& scalar_table() { return kScalarTable; }

#if !defined(MVD_HAVE_AVX2_TU)
const Dispatch* avx2_table() { return nullptr; }
#endif

const Dispatch& active() {
  const Dispatch* t = g_active.load(std::memory_order_acquire);
  if (t == nullptr) {
    t = pick_initial();
    g_active.store(t, std::memory_order_release);
  }
  return *t;
}

void set_backend(Backend b) {
  switch (b) {
    case Backend::scalar:
      g_active.store(&kScalarTable, std::memory_order_release);
      return;
    case Backend::avx2: {
      const Dispatch* t = avx2_table();
      if (t == nullptr) {
        throw std::runtime_error("AVX2 backend unavailable");
      }
      g_active.store(t, std::memory_order_release);
      return;
    }
  }
}

std::string_view backend_name() {
  return &active() == &kScalarTable ? "scalar" : "avx2";
}

}  // namespace mvd::kernels
