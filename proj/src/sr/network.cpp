// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/network.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mvd/kernels.hpp"

namespace mvd::net {

namespace {

struct ConvParams {
  const double* weights;  // [out][in][ky][kx]
  const double* bias;     // [out]
};

ConvParams conv_params(const LayerSpec& l, const double* p) {
  const std::size_t wcount = static_cast<std::size_t>(l.in_channels) * l.out_channels *
                             l.kernel * l.kernel;
  return {p, p + wcount};
}

// Valid output-row x range for a kernel column offset dx.
struct XRange {
  std::uint32_t begin;
  std::uint32_t count;
};

XRange x_range(std::uint32_t width, int dx) {
  const int begin = std::max(0, -dx);
  const int end = std::min(static_cast<int>(width), static_cast<int>(width) - dx);
  if (end <= begin) {
    return {0, 0};
  }
  return {static_cast<std::uint32_t>(begin), static_cast<std::uint32_t>(end - begin)};
}

void conv_forward(const LayerSpec& l, const double* p, const Image& in, Image& out) {
  const std::uint32_t h = in.height;
  const std::uint32_t w = in.width;
  const int pad = static_cast<int>(l.kernel) / 2;
  const ConvParams cp = conv_params(l, p);
  const auto& k = kernels::active();

  out = Image::zeros(l.out_channels, h, w);
  for (std::uint32_t oc = 0; oc < l.out_channels; ++oc) {
    std::fill_n(out.plane(oc), static_cast<std::size_t>(h) * w, cp.bias[oc]);
  }
  const double* wp = cp.weights;
  for (std::uint32_t oc = 0; oc < l.out_channels; ++oc) {
    for (std::uint32_t ic = 0; ic < l.in_channels; ++ic) {
      for (std::uint32_t ky = 0; ky < l.kernel; ++ky) {
        const int dy = static_cast<int>(ky) - pad;
        for (std::uint32_t kx = 0; kx < l.kernel; ++kx, ++wp) {
          const double weight = *wp;
          if (weight == 0.0) {
            continue;
          }
          const int dx = static_cast<int>(kx) - pad;
          const XRange xr = x_range(w, dx);
          if (xr.count == 0) {
            continue;
          }
          for (std::uint32_t y = 0; y < h; ++y) {
            const int ys = static_cast<int>(y) + dy;
            if (ys < 0 || ys >= static_cast<int>(h)) {
              continue;
            }
            double* out_row = out.plane(oc) + static_cast<std::size_t>(y) * w + xr.begin;
            const double* in_row = in.plane(ic) + static_cast<std::size_t>(ys) * w +
                                   xr.begin + dx;
            k.axpy_f64(out_row, in_row, weight, xr.count);
          }
        }
      }
    }
  }
}

void conv_backward(const LayerSpec& l, const double* p, const Image& in,
                   const Image& out_grad, double* pgrad, Image* in_grad) {
  const std::uint32_t h = in.height;
  const std::uint32_t w = in.width;
  const int pad = static_cast<int>(l.kernel) / 2;
  const ConvParams cp = conv_params(l, p);
  const std::size_t wcount = static_cast<std::size_t>(l.in_channels) * l.out_channels *
                             l.kernel * l.kernel;
  const auto& k = kernels::active();

  if (in_grad != nullptr) {
    *in_grad = Image::zeros(l.in_channels, h, w);
  }

  const double* wp = cp.weights;
  double* wg = pgrad;
  double* bg = pgrad + wcount;
  for (std::uint32_t oc = 0; oc < l.out_channels; ++oc) {
    const double* og_plane = out_grad.plane(oc);
    double bias_grad = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(h) * w; ++i) {
      bias_grad += og_plane[i];
    }
    bg[oc] += bias_grad;

    for (std::uint32_t ic = 0; ic < l.in_channels; ++ic) {
      for (std::uint32_t ky = 0; ky < l.kernel; ++ky) {
        const int dy = static_cast<int>(ky) - pad;
        for (std::uint32_t kx = 0; kx < l.kernel; ++kx, ++wp, ++wg) {
          const int dx = static_cast<int>(kx) - pad;
          const XRange xr = x_range(w, dx);
          if (xr.count == 0) {
            continue;
          }
          double wgrad = 0.0;
          for (std::uint32_t y = 0; y < h; ++y) {
            const int ys = static_cast<int>(y) + dy;
            if (ys < 0 || ys >= static_cast<int>(h)) {
              continue;
            }
            const double* og_row = og_plane + static_cast<std::size_t>(y) * w + xr.begin;
            const std::size_t in_off = static_cast<std::size_t>(ys) * w + xr.begin + dx;
            wgrad += k.dot_f64(in.plane(ic) + in_off, og_row, xr.count);
            if (in_grad != nullptr && *wp != 0.0) {
              k.axpy_f64(in_grad->plane(ic) + in_off, og_row, *wp, xr.count);
            }
          }
          *wg += wgrad;
        }
      }
    }
  }
}

void shuffle_forward(const LayerSpec& l, const Image& in, Image& out) {
  const std::uint32_t f = l.kernel;
  out = Image::zeros(l.out_channels, in.height * f, in.width * f);
  for (std::uint32_t c = 0; c < l.out_channels; ++c) {
    for (std::uint32_t y = 0; y < out.height; ++y) {
      for (std::uint32_t x = 0; x < out.width; ++x) {
        const std::uint32_t ic = c * f * f + (y % f) * f + (x % f);
        out.at(c, y, x) = in.at(ic, y / f, x / f);
      }
    }
  }
}

void shuffle_backward(const LayerSpec& l, const Image& in, const Image& out_grad,
                      Image* in_grad) {
  if (in_grad == nullptr) {
    return;
  }
  const std::uint32_t f = l.kernel;
  *in_grad = Image::zeros(in.channels, in.height, in.width);
  for (std::uint32_t c = 0; c < l.out_channels; ++c) {
    for (std::uint32_t y = 0; y < out_grad.height; ++y) {
      for (std::uint32_t x = 0; x < out_grad.width; ++x) {
        const std::uint32_t ic = c * f * f + (y % f) * f + (x % f);
        in_grad->at(ic, y / f, x / f) = out_grad.at(c, y, x);
      }
    }
  }
}

}  // namespace

std::size_t param_count(const LayerSpec& layer) {
  if (layer.kind != LayerKind::conv) {
    return 0;
  }
  return static_cast<std::size_t>(layer.in_channels) * layer.out_channels * layer.kernel *
             layer.kernel +
         layer.out_channels;
}

std::size_t total_param_count(std::span<const LayerSpec> arch) {
  std::size_t total = 0;
  for (const LayerSpec& l : arch) {
    total += param_count(l);
  }
  return total;
}

void validate_arch(std::span<const LayerSpec> arch) {
  if (arch.empty()) {
    throw std::invalid_argument("network architecture is empty");
  }
  std::uint32_t channels = arch.front().in_channels;
  for (std::size_t i = 0; i < arch.size(); ++i) {
    const LayerSpec& l = arch[i];
    if (l.in_channels != channels) {
      throw std::invalid_argument("layer " + std::to_string(i) +
                                  " input channels do not chain");
    }
    switch (l.kind) {
      case LayerKind::conv:
        if (l.kernel == 0 || l.kernel % 2 == 0) {
          throw std::invalid_argument("conv layer kernel size must be odd");
        }
        if (l.out_channels == 0) {
          throw std::invalid_argument("conv layer needs output channels");
        }
        break;
      case LayerKind::relu:
        if (l.out_channels != l.in_channels) {
          throw std::invalid_argument("relu layer must preserve channels");
        }
        break;
      case LayerKind::pixel_shuffle:
        if (l.kernel == 0) {
          throw std::invalid_argument("pixel shuffle factor must be >= 1");
        }
        if (l.in_channels != l.out_channels * l.kernel * l.kernel) {
          throw std::invalid_argument("pixel shuffle channel counts do not match factor");
        }
        break;
      default:
        throw std::invalid_argument("unknown layer kind");
    }
    channels = l.out_channels;
  }
}

Image forward(std::span<const LayerSpec> arch, std::span<const double> params,
              const Image& input, std::vector<Image>* activations) {
  if (params.size() != total_param_count(arch)) {
    throw std::invalid_argument("parameter vector size does not match architecture");
  }
  if (input.channels != arch.front().in_channels) {
    throw std::invalid_argument("network input has " + std::to_string(input.channels) +
                                " channels, architecture expects " +
                                std::to_string(arch.front().in_channels));
  }
  if (activations != nullptr) {
    activations->clear();
    activations->reserve(arch.size() + 1);
  }

  Image current = input;
  const double* p = params.data();
  for (const LayerSpec& l : arch) {
    if (activations != nullptr) {
      activations->push_back(current);
    }
    Image next;
    switch (l.kind) {
      case LayerKind::conv:
        conv_forward(l, p, current, next);
        break;
      case LayerKind::relu:
        next = current;
        for (double& v : next.data) {
          v = std::max(v, 0.0);
        }
        break;
      case LayerKind::pixel_shuffle:
        shuffle_forward(l, current, next);
        break;
    }
    p += param_count(l);
    current = std::move(next);
  }
  if (activations != nullptr) {
    activations->push_back(current);
  }
  return current;
}

void backward(std::span<const LayerSpec> arch, std::span<const double> params,
              const std::vector<Image>& activations, const Image& output_grad,
              std::span<double> param_grads, Image* input_grad) {
  if (activations.size() != arch.size() + 1) {
    throw std::invalid_argument("activation stack does not match architecture");
  }
  if (param_grads.size() != total_param_count(arch)) {
    throw std::invalid_argument("gradient vector size does not match architecture");
  }

  // Per-layer parameter offsets.
  std::vector<std::size_t> offsets(arch.size());
  std::size_t off = 0;
  for (std::size_t i = 0; i < arch.size(); ++i) {
    offsets[i] = off;
    off += param_count(arch[i]);
  }

  Image grad = output_grad;
  for (std::size_t i = arch.size(); i-- > 0;) {
    const LayerSpec& l = arch[i];
    const Image& in = activations[i];
    Image next_grad;
    Image* next_ptr = (i == 0) ? input_grad : &next_grad;
    switch (l.kind) {
      case LayerKind::conv:
        conv_backward(l, params.data() + offsets[i], in, grad,
                      param_grads.data() + offsets[i], next_ptr);
        break;
      case LayerKind::relu:
        if (next_ptr != nullptr) {
          *next_ptr = grad;
          for (std::size_t j = 0; j < in.data.size(); ++j) {
            if (in.data[j] <= 0.0) {
              next_ptr->data[j] = 0.0;
            }
          }
        }
        break;
      case LayerKind::pixel_shuffle:
        shuffle_backward(l, in, grad, next_ptr);
        break;
    }
    if (i > 0) {
      grad = std::move(next_grad);
    }
  }
}

}  // namespace mvd::net
