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

#include "qsynergy/train.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <stdexcept>

#include "qsynergy/parallel.h"

namespace qsynergy {

static_assert(std::endian::native == std::endian::little, "model files are written as little-endian doubles");

namespace {

constexpr char kMagic[8] = {'Q', 'S', 'Y', 'N', 'C', 'N', 'N', '\0'};

// Gradient work is cut into pieces of at most this many grid positions. The
// cut depends only on the batch, so results do not depend on thread count.
constexpr int kChunkPositions = 2048;

using Shape = std::pair<int, int>;

struct Batch {
    std::vector<const InputTensor *> inputs;
    std::vector<double> targets;
};

std::vector<InputTensor> build_inputs(const CnnModel &model, std::span<const CircuitRecord> records) {
    std::vector<InputTensor> inputs;
    inputs.reserve(records.size());
    for (const auto &r : records) {
        inputs.push_back(build_input(r, model.uses_noisy_inputs()));
    }
    return inputs;
}

// Sum of squared errors over the batch; adds the summed gradient into `grad`.
double batch_gradient(const CnnModel &model, const Batch &batch, int threads, std::vector<double> &grad) {
    const size_t n = batch.inputs.size();
    const size_t per_chunk = std::max<size_t>(1, kChunkPositions / std::max(1, batch.inputs[0]->positions()));
    const size_t chunks = (n + per_chunk - 1) / per_chunk;
    // Eigen vectors keep every partial buffer at the same alignment, so the
    // vectorized kernels split work identically in every thread.
    std::vector<Eigen::VectorXd> partial(chunks);
    std::vector<double> sse(chunks, 0.0);
    parallel_for(chunks, threads, [&](size_t c) {
        size_t start = c * per_chunk;
        size_t stop = std::min(n, start + per_chunk);
        partial[c].setZero(static_cast<Eigen::Index>(model.num_parameters()));
        auto inputs = std::span<const InputTensor *const>(batch.inputs).subspan(start, stop - start);
        auto targets = std::span<const double>(batch.targets).subspan(start, stop - start);
        auto pred = model.accumulate_gradient(inputs, targets, std::span<double>(partial[c].data(), partial[c].size()));
        for (size_t k = 0; k < pred.size(); k++) {
            double r = pred[k] - targets[k];
            sse[c] += r * r;
        }
    });
    double total = 0;
    for (size_t c = 0; c < chunks; c++) {
        for (size_t k = 0; k < grad.size(); k++) {
            grad[k] += partial[c][static_cast<Eigen::Index>(k)];
        }
        total += sse[c];
    }
    return total;
}

std::vector<double> predict_inputs(const CnnModel &model, const std::vector<InputTensor> &inputs) {
    // Group by grid shape so every forward pass is rectangular.
    std::map<Shape, std::vector<size_t>> groups;
    for (size_t i = 0; i < inputs.size(); i++) {
        groups[{inputs[i].height, inputs[i].width}].push_back(i);
    }
    std::vector<double> out(inputs.size());
    for (const auto &[shape, idx] : groups) {
        std::vector<const InputTensor *> ptrs;
        ptrs.reserve(idx.size());
        for (size_t i : idx) {
            ptrs.push_back(&inputs[i]);
        }
        auto pred = model.forward(ptrs);
        for (size_t k = 0; k < idx.size(); k++) {
            out[idx[k]] = pred[k];
        }
    }
    return out;
}

double mean_squared(const std::vector<double> &pred, std::span<const CircuitRecord> records) {
    double s = 0;
    for (size_t i = 0; i < pred.size(); i++) {
        double r = pred[i] - records[i].m_z_exact;
        s += r * r;
    }
    return s / static_cast<double>(pred.size());
}

bool all_finite(std::span<const double> values) {
    return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

void TrainConfig::validate() const {
    if (!(learning_rate > 0) || !(epsilon > 0)) {
        throw std::invalid_argument("train config: learning_rate and epsilon must be positive");
    }
    if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1)) {
        throw std::invalid_argument("train config: betas must lie in [0, 1)");
    }
    if (batch_size < 1 || max_epochs < 1 || patience < 1 || threads < 1) {
        throw std::invalid_argument("train config: batch_size, max_epochs, patience and threads must be positive");
    }
}

nlohmann::json TrainConfig::to_json() const {
    return {
        {"learning_rate", learning_rate},
        {"beta1", beta1},
        {"beta2", beta2},
        {"epsilon", epsilon},
        {"batch_size", batch_size},
        {"max_epochs", max_epochs},
        {"patience", patience},
    };
}

TrainConfig TrainConfig::from_json(const nlohmann::json &j) {
    TrainConfig c;
    try {
        c.learning_rate = j.value("learning_rate", c.learning_rate);
        c.beta1 = j.value("beta1", c.beta1);
        c.beta2 = j.value("beta2", c.beta2);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.batch_size = j.value("batch_size", c.batch_size);
        c.max_epochs = j.value("max_epochs", c.max_epochs);
        c.patience = j.value("patience", c.patience);
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("malformed train config: ") + ex.what());
    }
    c.validate();
    return c;
}

AdamState::AdamState(size_t num_parameters, const TrainConfig &config)
    : m_(num_parameters, 0.0),
      v_(num_parameters, 0.0),
      lr_(config.learning_rate),
      beta1_(config.beta1),
      beta2_(config.beta2),
      eps_(config.epsilon) {
}

void AdamState::step(std::span<double> params, std::span<const double> grad) {
    if (params.size() != m_.size() || grad.size() != m_.size()) {
        throw std::invalid_argument("adam: parameter count mismatch");
    }
    t_++;
    const double c1 = 1 - std::pow(beta1_, static_cast<double>(t_));
    const double c2 = 1 - std::pow(beta2_, static_cast<double>(t_));
    for (size_t k = 0; k < params.size(); k++) {
        m_[k] = beta1_ * m_[k] + (1 - beta1_) * grad[k];
        v_[k] = beta2_ * v_[k] + (1 - beta2_) * grad[k] * grad[k];
        params[k] -= lr_ * (m_[k] / c1) / (std::sqrt(v_[k] / c2) + eps_);
    }
}

nlohmann::json TrainHistory::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &e : epochs) {
        rows.push_back({
            {"epoch", e.epoch},
            {"train_loss", number_or_null(e.train_loss)},
            {"validation_loss", number_or_null(e.validation_loss)},
            {"best_loss", number_or_null(e.best_loss)},
        });
    }
    return {
        {"epochs", rows},
        {"best_epoch", best_epoch},
        {"best_loss", number_or_null(best_loss)},
        {"monitor", monitored_validation ? "validation_mse" : "train_mse"},
        {"stopped_early", stopped_early},
    };
}

void check_compatible(const CnnModel &model, std::span<const CircuitRecord> records) {
    if (records.empty()) {
        return;
    }
    const Config config = records[0].config;
    for (const auto &r : records) {
        if (r.config != config) {
            throw std::invalid_argument("records mix configurations A and B");
        }
    }
    const int want = config == Config::A ? 1 : 2;
    if (model.architecture().dims != want) {
        throw std::invalid_argument(
            "config " + to_string(config) + " records need a " + std::to_string(want) + "D model, got " +
            std::to_string(model.architecture().dims) + "D");
    }
}

TrainHistory train(
    CnnModel &model,
    std::span<const CircuitRecord> train_records,
    std::span<const CircuitRecord> validation_records,
    const TrainConfig &config,
    Rng &rng) {
    config.validate();
    if (train_records.empty()) {
        throw std::invalid_argument("train: empty training set");
    }
    check_compatible(model, train_records);
    check_compatible(model, validation_records);
    if (!validation_records.empty() && validation_records[0].config != train_records[0].config) {
        throw std::invalid_argument("train: validation records use a different configuration");
    }

    const auto train_inputs = build_inputs(model, train_records);
    const auto val_inputs = build_inputs(model, validation_records);
    std::map<Shape, std::vector<size_t>> buckets;
    for (size_t i = 0; i < train_inputs.size(); i++) {
        buckets[{train_inputs[i].height, train_inputs[i].width}].push_back(i);
    }

    TrainHistory history;
    history.monitored_validation = !validation_records.empty();
    history.best_loss = std::numeric_limits<double>::infinity();
    std::vector<double> best(model.parameters().begin(), model.parameters().end());
    AdamState adam(model.num_parameters(), config);
    std::vector<double> grad(model.num_parameters());
    int since_best = 0;

    for (int epoch = 1; epoch <= config.max_epochs; epoch++) {
        std::vector<Batch> batches;
        for (auto &[shape, idx] : buckets) {
            std::shuffle(idx.begin(), idx.end(), rng);
            for (size_t start = 0; start < idx.size(); start += config.batch_size) {
                size_t stop = std::min(idx.size(), start + static_cast<size_t>(config.batch_size));
                Batch b;
                for (size_t k = start; k < stop; k++) {
                    b.inputs.push_back(&train_inputs[idx[k]]);
                    b.targets.push_back(train_records[idx[k]].m_z_exact);
                }
                batches.push_back(std::move(b));
            }
        }
        std::shuffle(batches.begin(), batches.end(), rng);

        double sse = 0;
        for (const auto &b : batches) {
            std::fill(grad.begin(), grad.end(), 0.0);
            sse += batch_gradient(model, b, config.threads, grad);
            const double inv = 1.0 / static_cast<double>(b.inputs.size());
            for (double &g : grad) {
                g *= inv;
            }
            if (!all_finite(grad)) {
                throw TrainingDiverged(epoch, "training diverged at epoch " + std::to_string(epoch) + ": non-finite gradient");
            }
            adam.step(model.parameters(), grad);
        }

        EpochStats stats;
        stats.epoch = epoch;
        stats.train_loss = sse / static_cast<double>(train_records.size());
        stats.validation_loss = std::numeric_limits<double>::quiet_NaN();
        if (!std::isfinite(stats.train_loss) || !all_finite(model.parameters())) {
            throw TrainingDiverged(epoch, "training diverged at epoch " + std::to_string(epoch) + ": loss is NaN");
        }
        double monitored = stats.train_loss;
        if (history.monitored_validation) {
            stats.validation_loss = mean_squared(predict_inputs(model, val_inputs), validation_records);
            if (!std::isfinite(stats.validation_loss)) {
                throw TrainingDiverged(
                    epoch, "training diverged at epoch " + std::to_string(epoch) + ": validation loss is NaN");
            }
            monitored = stats.validation_loss;
        }
        if (monitored < history.best_loss) {
            history.best_loss = monitored;
            history.best_epoch = epoch;
            best.assign(model.parameters().begin(), model.parameters().end());
            since_best = 0;
        } else {
            since_best++;
        }
        stats.best_loss = history.best_loss;
        history.epochs.push_back(stats);
        if (since_best >= config.patience) {
            history.stopped_early = epoch < config.max_epochs;
            break;
        }
    }
    std::copy(best.begin(), best.end(), model.parameters().begin());
    return history;
}

std::vector<double> predict_batch(const CnnModel &model, std::span<const CircuitRecord> records) {
    check_compatible(model, records);
    return predict_inputs(model, build_inputs(model, records));
}

void save_model(const CnnModel &model, const std::string &path) {
    nlohmann::json header = {
        {"architecture", model.architecture().to_json()},
        {"num_parameters", model.num_parameters()},
        {"metadata", model.metadata},
    };
    const std::string text = header.dump();
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open model file for writing: " + path);
    }
    const uint32_t version = kModelFileVersion;
    const uint64_t length = text.size();
    out.write(kMagic, sizeof(kMagic));
    out.write(reinterpret_cast<const char *>(&version), sizeof(version));
    out.write(reinterpret_cast<const char *>(&length), sizeof(length));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    auto params = model.parameters();
    out.write(reinterpret_cast<const char *>(params.data()), static_cast<std::streamsize>(params.size_bytes()));
    out.close();
    if (!out) {
        throw IoError("failed writing model file: " + path);
    }
}

CnnModel load_model(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open model file: " + path);
    }
    char magic[sizeof(kMagic)];
    uint32_t version = 0;
    uint64_t length = 0;
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
        throw IoError("not a qsynergy model file: " + path);
    }
    in.read(reinterpret_cast<char *>(&version), sizeof(version));
    if (!in || version != kModelFileVersion) {
        throw IoError(
            "unsupported model file version " + std::to_string(version) + " (expected " +
            std::to_string(kModelFileVersion) + "): " + path);
    }
    in.read(reinterpret_cast<char *>(&length), sizeof(length));
    if (!in || length > (1u << 26)) {
        throw IoError("corrupt model header: " + path);
    }
    std::string text(length, '\0');
    in.read(text.data(), static_cast<std::streamsize>(length));
    if (!in) {
        throw IoError("truncated model header: " + path);
    }
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &ex) {
        throw IoError("corrupt model header in " + path + ": " + ex.what());
    }
    Architecture arch;
    try {
        arch = Architecture::from_json(header.at("architecture"));
    } catch (const std::exception &ex) {
        throw IoError("corrupt model architecture in " + path + ": " + ex.what());
    }
    CnnModel model(arch, 0);
    if (header.value("num_parameters", uint64_t{0}) != model.num_parameters()) {
        throw IoError("model parameter count does not match its architecture: " + path);
    }
    model.metadata = header.value("metadata", nlohmann::json::object());
    auto params = model.parameters();
    in.read(reinterpret_cast<char *>(params.data()), static_cast<std::streamsize>(params.size_bytes()));
    if (in.gcount() != static_cast<std::streamsize>(params.size_bytes())) {
        throw IoError("truncated model weights: " + path);
    }
    if (in.peek() != std::char_traits<char>::eof()) {
        throw IoError("trailing bytes after model weights: " + path);
    }
    return model;
}

}  // namespace qsynergy
