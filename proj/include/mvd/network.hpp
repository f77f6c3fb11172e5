// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace mvd::net {

// A network is a flat sequence of layers acting on channel-major images.
// Kind values double as the wire encoding in MVDM checkpoints.
enum class LayerKind : std::uint8_t {
  conv = 0,           // 2-D convolution, stride 1, zero padding kernel/2
  relu = 1,
  pixel_shuffle = 2,  // (C*f^2, H, W) -> (C, H*f, W*f); `kernel` holds f
};

struct LayerSpec {
  LayerKind kind = LayerKind::conv;
  std::uint32_t in_channels = 0;
  std::uint32_t out_channels = 0;
  std::uint32_t kernel = 0;

  friend bool operator==(const LayerSpec& a, const LayerSpec& b) = default;
};

// Channel-major image tensor: data[(c*H + y)*W + x].
struct Image {
  std::uint32_t channels = 0;
  std::uint32_t height = 0;
  std::uint32_t width = 0;
  std::vector<double> data;

  static Image zeros(std::uint32_t c, std::uint32_t h, std::uint32_t w) {
    return {c, h, w, std::vector<double>(static_cast<std::size_t>(c) * h * w, 0.0)};
  }

  double* plane(std::uint32_t c) {
    return data.data() + static_cast<std::size_t>(c) * height * width;
  }
  const double* plane(std::uint32_t c) const {
    return data.data() + static_cast<std::size_t>(c) * height * width;
  }
  double& at(std::uint32_t c, std::uint32_t y, std::uint32_t x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(std::uint32_t c, std::uint32_t y, std::uint32_t x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
};

// Conv layers own in*out*k*k weights followed by out biases; other layers
// have no parameters.
std::size_t param_count(const LayerSpec& layer);
std::size_t total_param_count(std::span<const LayerSpec> arch);

// Throws std::invalid_argument on inconsistent layer chaining, even kernel
// sizes or a non-positive shuffle factor.
void validate_arch(std::span<const LayerSpec> arch);

// Runs the network. When `activations` is non-null it receives the input
// of every layer plus the final output (arch.size() + 1 images), which
// backward() consumes.
Image forward(std::span<const LayerSpec> arch, std::span<const double> params,
              const Image& input, std::vector<Image>* activations = nullptr);

// Reverse-mode pass. Accumulates (+=) into param_grads, which must hold
// total_param_count zeros-or-partial-sums. When input_grad is non-null the
// gradient with respect to the network input is written there.
void backward(std::span<const LayerSpec> arch, std::span<const double> params,
              const std::vector<Image>& activations, const Image& output_grad,
              std::span<double> param_grads, Image* input_grad = nullptr);

}  // namespace mvd::net
