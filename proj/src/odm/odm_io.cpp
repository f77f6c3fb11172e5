// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/odm_io.hpp"

#include <filesystem>
#include <stdexcept>

#include "io_util.hpp"
#include "mvd/errors.hpp"

namespace mvd {

namespace {
constexpr char kMagic[4] = {'M', 'V', 'D', 'O'};
constexpr std::uint16_t kVersion = 1;
}  // namespace

std::vector<std::uint8_t> encode_odm(const Odm& odm) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  wire::put_u16(out, kVersion);
  out.push_back(static_cast<std::uint8_t>(odm.view));
  wire::put_u32(out, odm.resolution);
  for (std::uint32_t d : odm.depth) {
    wire::put_u32(out, d);
  }
  return out;
}

Odm decode_odm(const std::vector<std::uint8_t>& bytes) {
  wire::Reader in(bytes.data(), bytes.size());
  in.expect_magic(kMagic);
  const std::size_t version_at = in.offset();
  const std::uint16_t version = in.u16("version");
  if (version != kVersion) {
    throw FormatError("unsupported MVDO version " + std::to_string(version), version_at);
  }
  const std::size_t view_at = in.offset();
  const std::uint8_t view = in.u8("view id");
  if (view > 5) {
    throw FormatError("MVDO view id " + std::to_string(view) + " out of range", view_at);
  }
  const std::size_t res_at = in.offset();
  const std::uint32_t resolution = in.u32("resolution");
  if (resolution < 1 || resolution > kMaxResolution) {
    throw FormatError("MVDO resolution " + std::to_string(resolution) + " out of range",
                      res_at);
  }

  Odm odm{static_cast<ViewId>(view), resolution, {}};
  odm.depth.resize(static_cast<std::size_t>(resolution) * resolution);
  for (std::size_t i = 0; i < odm.depth.size(); ++i) {
    const std::size_t at = in.offset();
    odm.depth[i] = in.u32("depth value");
    if (odm.depth[i] > resolution) {
      throw FormatError("depth value " + std::to_string(odm.depth[i]) + " exceeds resolution",
                        at);
    }
  }
  if (in.remaining() != 0) {
    throw FormatError("trailing data after depth values", in.offset());
  }
  return odm;
}

Odm load_odm(const std::string& path) { return decode_odm(wire::read_file(path)); }

void save_odm(const std::string& path, const Odm& odm) {
  wire::write_file(path, encode_odm(odm));
}

std::string odm_filename(ViewId view) {
  return "odm_" + std::string(view_name(view)) + ".mvdo";
}

OdmSet load_odm_set(const std::string& dir) {
  OdmSet set;
  for (ViewId v : kAllViews) {
    const std::string path = (std::filesystem::path(dir) / odm_filename(v)).string();
    Odm odm = load_odm(path);
    if (odm.view != v) {
      throw FormatError("view id in " + path + " does not match its filename", 6);
    }
    if (odm.resolution != set.views[0].resolution && v != ViewId::x_pos) {
      throw std::invalid_argument("ODM resolutions in " + dir + " do not match");
    }
    set[v] = std::move(odm);
  }
  return set;
}

void save_odm_set(const std::string& dir, const OdmSet& set) {
  std::filesystem::create_directories(dir);
  for (ViewId v : kAllViews) {
    save_odm((std::filesystem::path(dir) / odm_filename(v)).string(), set[v]);
  }
}

}  // namespace mvd
