// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/model_io.hpp"

#include <cmath>
#include <stdexcept>

#include "io_util.hpp"
#include "mvd/errors.hpp"

namespace mvd {

namespace {
constexpr char kMagic[4] = {'M', 'V', 'D', 'M'};
constexpr std::uint16_t kVersion = 1;
}  // namespace

std::vector<std::uint8_t> encode_model(const PredictorModel& model) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  wire::put_u16(out, kVersion);
  wire::put_u32(out, model.factor);
  wire::put_f64(out, model.range_r);
  wire::put_f64(out, model.lambda_tv);
  wire::put_u32(out, static_cast<std::uint32_t>(model.arch.size()));
  for (const net::LayerSpec& l : model.arch) {
    out.push_back(static_cast<std::uint8_t>(l.kind));
    wire::put_u32(out, l.in_channels);
    wire::put_u32(out, l.out_channels);
    wire::put_u32(out, l.kernel);
  }
  for (double v : model.sil_params) {
    wire::put_f64(out, v);
  }
  for (double v : model.depth_params) {
    wire::put_f64(out, v);
  }
  return out;
}

PredictorModel decode_model(const std::vector<std::uint8_t>& bytes) {
  wire::Reader in(bytes.data(), bytes.size());
  in.expect_magic(kMagic);
  const std::size_t version_at = in.offset();
  const std::uint16_t version = in.u16("version");
  if (version != kVersion) {
    throw FormatError("unsupported MVDM version " + std::to_string(version), version_at);
  }

  PredictorModel model;
  const std::size_t factor_at = in.offset();
  model.factor = in.u32("factor");
  if (model.factor < 1) {
    throw FormatError("MVDM factor must be >= 1", factor_at);
  }
  const std::size_t range_at = in.offset();
  model.range_r = in.f64("range_r");
  if (!(model.range_r > 0.0) || !std::isfinite(model.range_r)) {
    throw FormatError("MVDM range_r must be positive and finite", range_at);
  }
  model.lambda_tv = in.f64("lambda");

  const std::size_t count_at = in.offset();
  const std::uint32_t layer_count = in.u32("layer count");
  if (layer_count == 0 || layer_count > 1024) {
    throw FormatError("MVDM layer count out of range", count_at);
  }
  for (std::uint32_t i = 0; i < layer_count; ++i) {
    net::LayerSpec l;
    const std::size_t kind_at = in.offset();
    const std::uint8_t kind = in.u8("layer kind");
    if (kind > 2) {
      throw FormatError("unknown layer kind " + std::to_string(kind), kind_at);
    }
    l.kind = static_cast<net::LayerKind>(kind);
    l.in_channels = in.u32("in channels");
    l.out_channels = in.u32("out channels");
    l.kernel = in.u32("kernel");
    model.arch.push_back(l);
  }
  try {
    net::validate_arch(model.arch);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("invalid architecture: ") + e.what(), count_at);
  }

  const std::size_t params = net::total_param_count(model.arch);
  model.sil_params.reserve(params);
  model.depth_params.reserve(params);
  for (std::size_t i = 0; i < params; ++i) {
    model.sil_params.push_back(in.f64("silhouette parameter"));
  }
  for (std::size_t i = 0; i < params; ++i) {
    model.depth_params.push_back(in.f64("depth parameter"));
  }
  if (in.remaining() != 0) {
    throw FormatError("trailing data after parameters", in.offset());
  }
  return model;
}

PredictorModel load_model(const std::string& path) {
  return decode_model(wire::read_file(path));
}

void save_model(const std::string& path, const PredictorModel& model) {
  wire::write_file(path, encode_model(model));
}

}  // namespace mvd
