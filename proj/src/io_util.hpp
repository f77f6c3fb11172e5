// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Little-endian wire helpers shared by the MVDV/MVDO/MVDM codecs.

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "mvd/errors.hpp"

namespace mvd::wire {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

inline void put_f64(std::vector<std::uint8_t>& out, double v) {
  static_assert(std::endian::native == std::endian::little);
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
}

// Bounds-checked cursor over an input byte stream.
class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size) : data_(data), size_(size) {}

  std::size_t offset() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

  void require(std::size_t n, const char* what) const {
    if (size_ - pos_ < n) {
      throw FormatError(std::string("truncated stream while reading ") + what, pos_);
    }
  }

  std::uint8_t u8(const char* what) {
    require(1, what);
    return data_[pos_++];
  }

  std::uint16_t u16(const char* what) {
    require(2, what);
    std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] | (data_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }

  std::uint32_t u32(const char* what) {
    require(4, what);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<std::uint32_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += 4;
    return v;
  }

  double f64(const char* what) {
    require(8, what);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) {
      bits |= static_cast<std::uint64_t>(data_[pos_ + i]) << (8 * i);
    }
    pos_ += 8;
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }

  void expect_magic(const char magic[4]) {
    require(4, "magic");
    if (std::memcmp(data_ + pos_, magic, 4) != 0) {
      throw FormatError(std::string("bad magic, expected \"") + std::string(magic, 4) + "\"",
                        pos_);
    }
    pos_ += 4;
  }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes);

}  // namespace mvd::wire
