// Copyright 2026 The qsynergy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSYNERGY_TRAIN_H
#define QSYNERGY_TRAIN_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsynergy/cnn.h"
#include "qsynergy/dataset.h"
#include "qsynergy/errors.h"
#include "qsynergy/rng.h"

namespace qsynergy {

inline constexpr uint32_t kModelFileVersion = 1;

struct TrainConfig {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int batch_size = 256;
    int max_epochs = 200;
    int patience = 10;
    int threads = 1;

    void validate() const;
    nlohmann::json to_json() const;
    /// Missing keys keep their defaults.
    static TrainConfig from_json(const nlohmann::json &j);
};

class AdamState {
   public:
    AdamState() = default;
    AdamState(size_t num_parameters, const TrainConfig &config);

    void step(std::span<double> params, std::span<const double> grad);
    int64_t steps() const {
        return t_;
    }
    const std::vector<double> &first_moment() const {
        return m_;
    }
    const std::vector<double> &second_moment() const {
        return v_;
    }

   private:
    std::vector<double> m_;
    std::vector<double> v_;
    int64_t t_ = 0;
    double lr_ = 1e-3;
    double beta1_ = 0.9;
    double beta2_ = 0.999;
    double eps_ = 1e-8;
};

struct EpochStats {
    int epoch = 0;
    double train_loss = 0;
    double validation_loss = 0;  // NaN without a validation set
    double best_loss = 0;        // best monitored loss so far
};

struct TrainHistory {
    std::vector<EpochStats> epochs;
    int best_epoch = 0;
    double best_loss = 0;
    bool monitored_validation = false;
    bool stopped_early = false;

    nlohmann::json to_json() const;
};

struct TrainingDiverged : NumericalError {
    TrainingDiverged(int epoch, const std::string &what) : NumericalError(what), epoch(epoch) {
    }
    int epoch;
};

/// Throws std::invalid_argument when the records do not fit the model
/// (config A needs a 1D model, config B a 2D one; mixed configs rejected).
void check_compatible(const CnnModel &model, std::span<const CircuitRecord> records);

/// Mini-batch Adam on the mean squared error. Batches never mix grid shapes.
/// Leaves the best monitored weights in `model`.
TrainHistory train(
    CnnModel &model,
    std::span<const CircuitRecord> train_records,
    std::span<const CircuitRecord> validation_records,
    const TrainConfig &config,
    Rng &rng);

std::vector<double> predict_batch(const CnnModel &model, std::span<const CircuitRecord> records);

void save_model(const CnnModel &model, const std::string &path);
CnnModel load_model(const std::string &path);

}  // namespace qsynergy

#endif
