// SPDX-FileCopyrightText: 2026 mvdvox authors
// SPDX-License-Identifier: Apache-2.0

#include "mvd/train.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "mvd/errors.hpp"
#include "mvd/kernels.hpp"

namespace mvd {

PredictorModel train(PredictorModel model, const std::vector<OdmPair>& data,
                     const TrainConfig& config, std::vector<StepLoss>* log) {
  if (data.empty()) {
    throw std::invalid_argument("training dataset is empty");
  }
  if (config.batch_size < 1) {
    throw std::invalid_argument("batch size must be >= 1");
  }
  for (const OdmPair& pair : data) {
    if (pair.high.resolution != pair.low.resolution * model.factor) {
      throw std::invalid_argument("training pair does not match the model factor");
    }
  }

  std::mt19937_64 rng(config.seed);
  std::vector<OdmPair> batch(config.batch_size);
  const auto& k = kernels::active();

  for (std::uint64_t step = 0; step < config.steps; ++step) {
    for (OdmPair& slot : batch) {
      slot = data[rng() % data.size()];
    }
    const double scale = -config.learning_rate / static_cast<double>(config.batch_size);

    StepLoss entry{step, 0.0, 0.0};
    if (config.train_sil) {
      LossGrad g = sil_gradient(model, batch);
      entry.sil = g.loss / static_cast<double>(config.batch_size);
      if (!std::isfinite(entry.sil)) {
        throw TrainingError("silhouette loss is not finite", step);
      }
      k.axpy_f64(model.sil_params.data(), g.param_grad.data(), scale,
                 model.sil_params.size());
    }
    if (config.train_depth) {
      LossGrad g = depth_gradient(model, batch);
      entry.depth = g.loss / static_cast<double>(config.batch_size);
      if (!std::isfinite(entry.depth)) {
        throw TrainingError("depth loss is not finite", step);
      }
      k.axpy_f64(model.depth_params.data(), g.param_grad.data(), scale,
                 model.depth_params.size());
    }
    if (log != nullptr) {
      log->push_back(entry);
    }
  }
  return model;
}

}  // namespace mvd
