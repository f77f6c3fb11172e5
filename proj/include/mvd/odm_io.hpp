// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvd/odm.hpp"

namespace mvd {

// MVDO depth map format (little-endian): magic "MVDO", version u16 = 1,
// view id u8 (0-5 in X+,X-,Y+,Y-,Z+,Z- order), resolution u32, then R^2
// u32 depth values in row-major (u-fastest) order.
std::vector<std::uint8_t> encode_odm(const Odm& odm);
Odm decode_odm(const std::vector<std::uint8_t>& bytes);

Odm load_odm(const std::string& path);
void save_odm(const std::string& path, const Odm& odm);

// Directory layout used by the CLI: one odm_<view>.mvdo file per view.
std::string odm_filename(ViewId view);
OdmSet load_odm_set(const std::string& dir);
void save_odm_set(const std::string& dir, const OdmSet& set);

}  // namespace mvd
