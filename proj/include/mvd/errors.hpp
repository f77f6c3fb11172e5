// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mvd {

// Malformed or truncated binary stream. `offset` is the byte position at
// which decoding failed.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& message, std::size_t offset)
      : std::runtime_error(message + " (byte offset " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// File could not be opened, read or written.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Training produced a non-finite loss. `step` is the optimizer step index.
class TrainingError : public std::runtime_error {
 public:
  TrainingError(const std::string& message, std::uint64_t step)
      : std::runtime_error(message + " (step " + std::to_string(step) + ")"),
        step_(step) {}

  std::uint64_t step() const { return step_; }

 private:
  std::uint64_t step_;
};

}  // namespace mvd
