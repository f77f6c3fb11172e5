// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "mvd/predictor.hpp"

namespace mvd {

struct TrainConfig {
  std::uint64_t steps = 2000;
  double learning_rate = 1e-2;
  std::uint32_t batch_size = 8;
  std::uint64_t seed = 1;
  bool train_sil = true;
  bool train_depth = true;
};

// Per-step mean per-sample losses.
struct StepLoss {
  std::uint64_t step = 0;
  double sil = 0.0;
  double depth = 0.0;
};

// Mini-batch SGD with a fixed step size on the two losses independently
// (the update uses the batch-mean gradient). Batches are drawn uniformly
// with replacement from `data` using the seeded generator, so a fixed seed
// reproduces the returned parameters bit for bit. Throws TrainingError when
// a loss stops being finite and std::invalid_argument on an empty dataset.
PredictorModel train(PredictorModel model, const std::vector<OdmPair>& data,
                     const TrainConfig& config, std::vector<StepLoss>* log = nullptr);

}  // namespace mvd
