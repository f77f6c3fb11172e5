// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/predictor.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace mvd {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; avoids the implementation-defined std::normal_distribution so
// checkpoints reproduce across standard libraries.
double gaussian(std::mt19937_64& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u == 0.0);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * 3.141592653589793 * v);
}

std::vector<double> init_params(std::span<const net::LayerSpec> arch, std::mt19937_64& rng) {
  std::vector<double> params;
  params.reserve(net::total_param_count(arch));
  for (const net::LayerSpec& l : arch) {
    if (l.kind != net::LayerKind::conv) {
      continue;
    }
    const std::size_t fan_in = static_cast<std::size_t>(l.in_channels) * l.kernel * l.kernel;
    const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
    const std::size_t wcount = fan_in * l.out_channels;
    for (std::size_t i = 0; i < wcount; ++i) {
      params.push_back(stddev * gaussian(rng));
    }
    for (std::uint32_t i = 0; i < l.out_channels; ++i) {
      params.push_back(0.0);
    }
  }
  return params;
}

void check_pair(const PredictorModel& model, const Odm& low, const Odm& high) {
  if (high.resolution != low.resolution * model.factor) {
    throw std::invalid_argument("ODM pair resolutions " + std::to_string(low.resolution) +
                                "/" + std::to_string(high.resolution) +
                                " do not match model factor " + std::to_string(model.factor));
  }
  if (high.view != low.view) {
    throw std::invalid_argument("ODM pair views do not match");
  }
}

net::Image raw_output(const PredictorModel& model, std::span<const double> params,
                      const Odm& odm_low, std::vector<net::Image>* acts = nullptr) {
  return net::forward(model.arch, params, odm_input(odm_low), acts);
}

std::vector<double> upsampled_depth_real(const Odm& odm_low, std::uint32_t factor) {
  const Odm up = upsample_odm_nn(odm_low, factor);
  return std::vector<double>(up.depth.begin(), up.depth.end());
}

}  // namespace

std::vector<net::LayerSpec> make_sr_arch(std::uint32_t factor, std::uint32_t channels,
                                         std::uint32_t hidden_convs) {
  if (factor < 1 || channels < 1 || hidden_convs < 1) {
    throw std::invalid_argument("architecture needs factor, channels and convs >= 1");
  }
  std::vector<net::LayerSpec> arch;
  arch.push_back({net::LayerKind::conv, 2, channels, 3});
  arch.push_back({net::LayerKind::relu, channels, channels, 0});
  for (std::uint32_t i = 1; i < hidden_convs; ++i) {
    arch.push_back({net::LayerKind::conv, channels, channels, 3});
    arch.push_back({net::LayerKind::relu, channels, channels, 0});
  }
  arch.push_back({net::LayerKind::conv, channels, factor * factor, 3});
  arch.push_back({net::LayerKind::pixel_shuffle, factor * factor, 1, factor});
  net::validate_arch(arch);
  return arch;
}

PredictorModel make_model(std::uint32_t factor, std::uint32_t channels,
                          std::uint32_t hidden_convs, std::uint64_t seed, double range_r,
                          double lambda_tv) {
  PredictorModel model;
  model.factor = factor;
  model.range_r = range_r > 0.0 ? range_r : static_cast<double>(factor);
  model.lambda_tv = lambda_tv;
  model.arch = make_sr_arch(factor, channels, hidden_convs);
  std::mt19937_64 rng(seed);
  model.sil_params = init_params(model.arch, rng);
  model.depth_params = init_params(model.arch, rng);
  return model;
}

net::Image odm_input(const Odm& odm_low) {
  const std::uint32_t r = odm_low.resolution;
  net::Image in = net::Image::zeros(2, r, r);
  const double inv = 1.0 / static_cast<double>(r);
  for (std::size_t i = 0; i < odm_low.depth.size(); ++i) {
    in.data[i] = static_cast<double>(odm_low.depth[i]) * inv;
  }
  const double side = static_cast<double>(odm_low.view) / 5.0;
  std::fill(in.data.begin() + odm_low.depth.size(), in.data.end(), side);
  return in;
}

std::vector<double> predict_sil(const PredictorModel& model, const Odm& odm_low) {
  net::Image raw = raw_output(model, model.sil_params, odm_low);
  std::vector<double> out(raw.data.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = sigmoid(raw.data[i]);
  }
  return out;
}

std::vector<double> predict_depth(const PredictorModel& model, const Odm& odm_low) {
  net::Image raw = raw_output(model, model.depth_params, odm_low);
  std::vector<double> up = upsampled_depth_real(odm_low, model.factor);
  for (std::size_t i = 0; i < up.size(); ++i) {
    up[i] += model.range_r * sigmoid(raw.data[i]);
  }
  return up;
}

Odm compose(const std::vector<double>& sil_prob, const std::vector<double>& constrained_depth,
            std::uint32_t resolution, ViewId view, double threshold) {
  const std::size_t n = static_cast<std::size_t>(resolution) * resolution;
  if (sil_prob.size() != n || constrained_depth.size() != n) {
    throw std::invalid_argument("compose inputs do not match the target resolution");
  }
  Odm out{view, resolution, std::vector<std::uint32_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    if (sil_prob[i] >= threshold) {
      long long d = std::llround(constrained_depth[i]);
      d = std::max(1ll, std::min(static_cast<long long>(resolution), d));
      out.depth[i] = static_cast<std::uint32_t>(d);
    }
  }
  return out;
}

double sil_loss_from(const std::vector<double>& sil_prob, const Odm& odm_high_gt) {
  if (sil_prob.size() != odm_high_gt.depth.size()) {
    throw std::invalid_argument("silhouette prediction size does not match ground truth");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < sil_prob.size(); ++i) {
    const double target = odm_high_gt.depth[i] != 0 ? 1.0 : 0.0;
    const double d = sil_prob[i] - target;
    loss += d * d;
  }
  return loss;
}

double total_variation(std::span<const double> image, std::uint32_t height,
                       std::uint32_t width) {
  double tv = 0.0;
  for (std::uint32_t i = 0; i + 1 < height; ++i) {
    const double* row = image.data() + static_cast<std::size_t>(i) * width;
    for (std::uint32_t j = 0; j + 1 < width; ++j) {
      const double dv = row[width + j] - row[j];
      const double dh = row[j + 1] - row[j];
      tv += std::sqrt(dv * dv + dh * dh);
    }
  }
  return tv;
}

void total_variation_gradient(std::span<const double> image, std::uint32_t height,
                              std::uint32_t width, std::span<double> grad, double scale) {
  for (std::uint32_t i = 0; i + 1 < height; ++i) {
    const std::size_t base = static_cast<std::size_t>(i) * width;
    for (std::uint32_t j = 0; j + 1 < width; ++j) {
      const double dv = image[base + width + j] - image[base + j];
      const double dh = image[base + j + 1] - image[base + j];
      const double norm = std::sqrt(dv * dv + dh * dh);
      if (norm == 0.0) {
        continue;  // flat term, subgradient 0
      }
      const double s = scale / norm;
      grad[base + j] -= s * (dv + dh);
      grad[base + width + j] += s * dv;
      grad[base + j + 1] += s * dh;
    }
  }
}

double depth_loss_from(const std::vector<double>& constrained_depth, const Odm& odm_high_gt,
                       double lambda_tv) {
  if (constrained_depth.size() != odm_high_gt.depth.size()) {
    throw std::invalid_argument("depth prediction size does not match ground truth");
  }
  double loss = 0.0;
  for (std::size_t i = 0; i < constrained_depth.size(); ++i) {
    if (odm_high_gt.depth[i] != 0) {
      const double d = constrained_depth[i] - static_cast<double>(odm_high_gt.depth[i]);
      loss += d * d;
    }
  }
  return loss + lambda_tv * total_variation(constrained_depth, odm_high_gt.resolution,
                                            odm_high_gt.resolution);
}

double loss_sil(const PredictorModel& model, const Odm& odm_low, const Odm& odm_high_gt) {
  check_pair(model, odm_low, odm_high_gt);
  return sil_loss_from(predict_sil(model, odm_low), odm_high_gt);
}

double loss_depth(const PredictorModel& model, const Odm& odm_low, const Odm& odm_high_gt) {
  check_pair(model, odm_low, odm_high_gt);
  return depth_loss_from(predict_depth(model, odm_low), odm_high_gt, model.lambda_tv);
}

LossGrad sil_gradient(const PredictorModel& model, std::span<const OdmPair> batch) {
  LossGrad result;
  result.param_grad.assign(model.sil_params.size(), 0.0);
  std::vector<net::Image> acts;
  for (const OdmPair& pair : batch) {
    check_pair(model, pair.low, pair.high);
    net::Image raw = raw_output(model, model.sil_params, pair.low, &acts);
    net::Image out_grad = net::Image::zeros(1, raw.height, raw.width);
    for (std::size_t i = 0; i < raw.data.size(); ++i) {
      const double p = sigmoid(raw.data[i]);
      const double target = pair.high.depth[i] != 0 ? 1.0 : 0.0;
      const double d = p - target;
      result.loss += d * d;
      out_grad.data[i] = 2.0 * d * p * (1.0 - p);
    }
    net::backward(model.arch, model.sil_params, acts, out_grad, result.param_grad);
  }
  return result;
}

LossGrad depth_gradient(const PredictorModel& model, std::span<const OdmPair> batch) {
  LossGrad result;
  result.param_grad.assign(model.depth_params.size(), 0.0);
  std::vector<net::Image> acts;
  for (const OdmPair& pair : batch) {
    check_pair(model, pair.low, pair.high);
    net::Image raw = raw_output(model, model.depth_params, pair.low, &acts);
    const std::uint32_t fr = pair.high.resolution;
    std::vector<double> c_h = upsampled_depth_real(pair.low, model.factor);
    for (std::size_t i = 0; i < c_h.size(); ++i) {
      c_h[i] += model.range_r * sigmoid(raw.data[i]);
    }
    result.loss += depth_loss_from(c_h, pair.high, model.lambda_tv);

    // dL/dC_H: masked squared error plus the total-variation term.
    std::vector<double> c_grad(c_h.size(), 0.0);
    for (std::size_t i = 0; i < c_h.size(); ++i) {
      if (pair.high.depth[i] != 0) {
        c_grad[i] = 2.0 * (c_h[i] - static_cast<double>(pair.high.depth[i]));
      }
    }
    total_variation_gradient(c_h, fr, fr, c_grad, model.lambda_tv);

    // dC_H/draw = range_r * sigmoid'(raw)
    net::Image out_grad = net::Image::zeros(1, raw.height, raw.width);
    for (std::size_t i = 0; i < c_h.size(); ++i) {
      const double s = sigmoid(raw.data[i]);
      out_grad.data[i] = c_grad[i] * model.range_r * s * (1.0 - s);
    }
    net::backward(model.arch, model.depth_params, acts, out_grad, result.param_grad);
  }
  return result;
}

OdmSet predict_set(const Predictor& predictor, const OdmSet& odms_low) {
  if (const auto* baseline = std::get_if<BaselinePredictor>(&predictor)) {
    OdmSet out;
    for (ViewId v : kAllViews) {
      out[v] = upsample_odm_nn(odms_low[v], baseline->factor);
    }
    return out;
  }
  if (const auto* oracle = std::get_if<OraclePredictor>(&predictor)) {
    return oracle->ground_truth;
  }

  const auto& learned = std::get<LearnedPredictor>(predictor);
  const PredictorModel& model = learned.model;
  OdmSet out;
  for (ViewId v : kAllViews) {
    const Odm& low = odms_low[v];
    const std::uint32_t fr = low.resolution * model.factor;

    std::vector<double> sil;
    if (learned.mode == LearnedMode::depth_only) {
      const Odm up = upsample_odm_nn(low, model.factor);
      sil.assign(up.depth.size(), 0.0);
      for (std::size_t i = 0; i < sil.size(); ++i) {
        sil[i] = up.depth[i] != 0 ? 1.0 : 0.0;
      }
    } else {
      sil = predict_sil(model, low);
    }

    std::vector<double> depth;
    if (learned.mode == LearnedMode::sil_only) {
      depth = upsampled_depth_real(low, model.factor);
      // Hallucinated silhouette pixels have no up-sampled depth to fall
      // back on; compose clamps them to the first layer.
    } else {
      depth = predict_depth(model, low);
    }

    out[v] = compose(sil, depth, fr, v, learned.sil_threshold);
  }
  return out;
}

}  // namespace mvd
