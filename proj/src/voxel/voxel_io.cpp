// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/voxel_io.hpp"

#include <fstream>

#include "io_util.hpp"
#include "mvd/errors.hpp"

namespace mvd {

namespace {
constexpr char kMagic[4] = {'M', 'V', 'D', 'V'};
constexpr std::uint16_t kVersion = 1;
}  // namespace

std::vector<std::uint8_t> encode_voxels(const VoxelGrid& grid) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  wire::put_u16(out, kVersion);
  wire::put_u32(out, grid.resolution());

  const std::uint8_t* cells = grid.data();
  const std::uint64_t n = grid.cell_count();
  std::uint8_t value = 0;  // runs start with empty
  std::uint64_t i = 0;
  while (i < n) {
    std::uint64_t run = 0;
    while (i < n && cells[i] == value) {
      ++run;
      ++i;
    }
    wire::put_u32(out, static_cast<std::uint32_t>(run));
    value ^= 1;
  }
  if (n == 0) {
    wire::put_u32(out, 0);
  }
  return out;
}

VoxelGrid decode_voxels(const std::vector<std::uint8_t>& bytes) {
  wire::Reader in(bytes.data(), bytes.size());
  in.expect_magic(kMagic);
  const std::size_t version_at = in.offset();
  const std::uint16_t version = in.u16("version");
  if (version != kVersion) {
    throw FormatError("unsupported MVDV version " + std::to_string(version), version_at);
  }
  const std::size_t res_at = in.offset();
  const std::uint32_t resolution = in.u32("resolution");
  if (resolution < 1 || resolution > kMaxResolution) {
    throw FormatError("MVDV resolution " + std::to_string(resolution) + " out of range",
                      res_at);
  }

  VoxelGrid grid(resolution);
  const std::uint64_t n = grid.cell_count();
  std::uint64_t filled = 0;
  std::uint8_t value = 0;
  while (filled < n) {
    const std::size_t run_at = in.offset();
    const std::uint64_t run = in.u32("run length");
    if (filled + run > n) {
      throw FormatError("run lengths sum past " + std::to_string(n) + " cells", run_at);
    }
    if (value != 0) {
      std::fill(grid.data() + filled, grid.data() + filled + run, std::uint8_t{1});
    }
    filled += run;
    value ^= 1;
  }
  if (in.remaining() != 0) {
    throw FormatError("trailing data after " + std::to_string(n) + " cells", in.offset());
  }
  return grid;
}

VoxelGrid load_voxels(const std::string& path) {
  return decode_voxels(wire::read_file(path));
}

void save_voxels(const std::string& path, const VoxelGrid& grid) {
  wire::write_file(path, encode_voxels(grid));
}

namespace wire {

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    throw IoError("error while reading file: " + path);
  }
  return bytes;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open file for writing: " + path);
  }
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("error while writing file: " + path);
  }
}

}  // namespace wire

}  // namespace mvd
