// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mvd/predictor.hpp"

namespace mvd {

// MVDM checkpoint format (little-endian): magic "MVDM", version u16 = 1,
// factor u32, range_r f64, lambda f64, architecture descriptor (layer count
// u32, then per layer: kind u8, in-channels u32, out-channels u32, kernel
// u32), then the f64 parameter arrays in layer order — the silhouette
// network first, the residual-depth network second (both share the
// descriptor). Conv layer parameters are the weights in
// [out][in][ky][kx] order followed by the per-output-channel biases.
std::vector<std::uint8_t> encode_model(const PredictorModel& model);
PredictorModel decode_model(const std::vector<std::uint8_t>& bytes);

PredictorModel load_model(const std::string& path);
void save_model(const std::string& path, const PredictorModel& model);

}  // namespace mvd
