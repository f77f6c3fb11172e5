// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "mvd/network.hpp"
#include "mvd/odm.hpp"

namespace mvd {

// Parameters of the decomposed ODM super-resolution predictor: a silhouette
// network and a residual-depth network sharing one convolutional
// architecture. The residual-depth output is squashed through a sigmoid and
// scaled by range_r, so the constrained depth map stays within range_r of
// the nearest-neighbor up-sampled input depth.
struct PredictorModel {
  std::uint32_t factor = 0;
  double range_r = 0.0;
  double lambda_tv = 0.1;
  std::vector<net::LayerSpec> arch;
  std::vector<double> sil_params;
  std::vector<double> depth_params;

  friend bool operator==(const PredictorModel& a, const PredictorModel& b) = default;
};

// conv(2,C) relu [conv(C,C) relu]x(hidden_convs-1) conv(C,f^2) shuffle(f)
std::vector<net::LayerSpec> make_sr_arch(std::uint32_t factor, std::uint32_t channels,
                                         std::uint32_t hidden_convs);

// Randomly initialized model (He-normal weights, zero biases). range_r <= 0
// selects the default of one low-resolution voxel, i.e. range_r = factor.
PredictorModel make_model(std::uint32_t factor, std::uint32_t channels,
                          std::uint32_t hidden_convs, std::uint64_t seed,
                          double range_r = 0.0, double lambda_tv = 0.1);

// Network input: channel 0 is depth / R_low, channel 1 the constant view
// side channel (view index / 5).
net::Image odm_input(const Odm& odm_low);

// Silhouette probabilities in [0,1], row-major fR x fR.
std::vector<double> predict_sil(const PredictorModel& model, const Odm& odm_low);

// Constrained depth map C_H = range_r * sigmoid(raw) + upsampled depth.
std::vector<double> predict_depth(const PredictorModel& model, const Odm& odm_low);

// Hard-masks the constrained depth map by the thresholded silhouette and
// quantizes to voxel layers: round(C_H) clamped to [1, resolution] where
// sil_prob >= threshold, 0 elsewhere.
Odm compose(const std::vector<double>& sil_prob, const std::vector<double>& constrained_depth,
            std::uint32_t resolution, ViewId view, double threshold);

// --- Losses ----------------------------------------------------------------

// Sum of squared differences between probabilities and the ground-truth
// silhouette indicator.
double sil_loss_from(const std::vector<double>& sil_prob, const Odm& odm_high_gt);

// Masked squared depth error plus lambda times the total variation of the
// constrained depth map.
double depth_loss_from(const std::vector<double>& constrained_depth, const Odm& odm_high_gt,
                       double lambda_tv);

// Total variation over forward differences: sum over (i,j) with i+1 and
// j+1 in range of sqrt((x[i+1,j]-x[i,j])^2 + (x[i,j+1]-x[i,j])^2).
double total_variation(std::span<const double> image, std::uint32_t height,
                       std::uint32_t width);
// Accumulates scale * d(total_variation)/d(image) into grad.
void total_variation_gradient(std::span<const double> image, std::uint32_t height,
                              std::uint32_t width, std::span<double> grad, double scale);

struct OdmPair {
  Odm low;
  Odm high;
};

double loss_sil(const PredictorModel& model, const Odm& odm_low, const Odm& odm_high_gt);
double loss_depth(const PredictorModel& model, const Odm& odm_low, const Odm& odm_high_gt);

// Loss and parameter gradient summed over a batch, computed by reverse-mode
// differentiation through the network.
struct LossGrad {
  double loss = 0.0;
  std::vector<double> param_grad;
};

LossGrad sil_gradient(const PredictorModel& model, std::span<const OdmPair> batch);
LossGrad depth_gradient(const PredictorModel& model, std::span<const OdmPair> batch);

// --- Predictor variants -----------------------------------------------------

// Nearest-neighbor up-sampling only; the Table-1-style comparison floor.
struct BaselinePredictor {
  std::uint32_t factor = 0;
};

// Returns the supplied ground-truth high-resolution ODMs.
struct OraclePredictor {
  OdmSet ground_truth;
};

// Which learned heads drive the composition; the others fall back to the
// up-sampled input (ablation rows of the evaluation protocol).
enum class LearnedMode { both, sil_only, depth_only };

struct LearnedPredictor {
  PredictorModel model;
  LearnedMode mode = LearnedMode::both;
  double sil_threshold = 0.5;
};

using Predictor = std::variant<BaselinePredictor, OraclePredictor, LearnedPredictor>;

// Runs the predictor on all six views.
OdmSet predict_set(const Predictor& predictor, const OdmSet& odms_low);

}  // namespace mvd
