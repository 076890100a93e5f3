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

#ifndef QSYNERGY_EXPERIMENT_H
#define QSYNERGY_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qsynergy/chip.h"
#include "qsynergy/cnn.h"
#include "qsynergy/dataset.h"
#include "qsynergy/metrics.h"
#include "qsynergy/noise.h"
#include "qsynergy/train.h"
#include "qsynergy/zne.h"

namespace qsynergy {

enum class InputKind { Hybrid, Classical };

std::string to_string(InputKind kind);
InputKind parse_inputs(const std::string &text);
/// "cnn_hybrid" or "cnn_classical".
std::string method_name(InputKind kind);

/// Parses "6..10", "6,8,10" or "7".
std::vector<int> parse_int_set(const std::string &text);

/// The architecture used when none is given: 1D for config A, 2D for B.
Architecture default_architecture(Config config, InputKind inputs);

struct FitOptions {
    InputKind inputs = InputKind::Hybrid;
    std::optional<Architecture> architecture;
    TrainConfig train;
    /// Fraction of the training records held out for early stopping when no
    /// validation set is passed.
    double validation_fraction = 0.1;
};

struct FitResult {
    CnnModel model;
    TrainHistory history;
};

/// Builds a fresh model from `seed` and trains it. Weight init, the held-out
/// split and batch order use separate substreams of `seed`.
FitResult fit_model(
    std::span<const CircuitRecord> train_records,
    std::span<const CircuitRecord> validation_records,
    const FitOptions &options,
    uint64_t seed);

/// The noise a record was generated under, given the nominal model it came
/// from. Throws if the record asks for more CNOT noise than `base` carries.
NoiseModel noise_for_record(const NoiseModel &base, const CircuitRecord &record);

/// ZNE estimate per record. Each record draws from its own substream, so the
/// result is independent of `threads`.
std::vector<ZneEstimate> zne_records(
    std::span<const CircuitRecord> records, const ChipGraph &graph, const NoiseModel &base, int threads);

struct ScoredModel {
    const CnnModel *model = nullptr;
    std::string method;
    uint64_t seed = 0;
};

struct EvalRow {
    int n = 0;
    std::string method;
    EvalReport report;
    uint64_t seed = 0;
};

/// One row per (N, method, seed). Baselines (noisy, zne, exact) do not depend
/// on a model and are repeated for every seed present among `models`, or
/// emitted once with `baseline_seed` when there are no models.
std::vector<EvalRow> evaluate_methods(
    std::span<const CircuitRecord> test_records,
    std::span<const ScoredModel> models,
    const std::vector<double> *zne_values,
    bool include_exact,
    uint64_t baseline_seed);

struct SummaryRow {
    int n = 0;
    std::string method;
    size_t repeats = 0;
    double mean_one_minus_r2 = 0;
    double std_one_minus_r2 = 0;  // sample standard deviation, 0 for one repeat
};

std::vector<SummaryRow> summarize(std::span<const EvalRow> rows);

}  // namespace qsynergy

#endif
