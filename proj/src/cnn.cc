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

#include "qsynergy/cnn.h"

#include <cmath>
#include <random>
#include <stdexcept>

namespace qsynergy {

using Eigen::MatrixXd;
using ConstMap = Eigen::Map<const MatrixXd>;
using MutMap = Eigen::Map<MatrixXd>;

namespace {

// Upper bound on im2col columns per pass, to bound memory in forward().
constexpr int kMaxColumns = 4096;

MatrixXd im2col(const MatrixXd &x, int batch, int height, int width, int kh, int kw) {
    const int c = static_cast<int>(x.rows());
    const int ph = kh / 2;
    const int pw = kw / 2;
    const int hw = height * width;
    MatrixXd cols = MatrixXd::Zero(static_cast<Eigen::Index>(c) * kh * kw, static_cast<Eigen::Index>(batch) * hw);
    for (int b = 0; b < batch; b++) {
        for (int i = 0; i < height; i++) {
            for (int j = 0; j < width; j++) {
                const Eigen::Index col = static_cast<Eigen::Index>(b) * hw + i * width + j;
                for (int dh = 0; dh < kh; dh++) {
                    const int si = i + dh - ph;
                    if (si < 0 || si >= height) {
                        continue;
                    }
                    for (int dw = 0; dw < kw; dw++) {
                        const int sj = j + dw - pw;
                        if (sj < 0 || sj >= width) {
                            continue;
                        }
                        cols.block((dh * kw + dw) * c, col, c, 1) =
                            x.col(static_cast<Eigen::Index>(b) * hw + si * width + sj);
                    }
                }
            }
        }
    }
    return cols;
}

MatrixXd col2im(const MatrixXd &cols, int c, int batch, int height, int width, int kh, int kw) {
    const int ph = kh / 2;
    const int pw = kw / 2;
    const int hw = height * width;
    MatrixXd x = MatrixXd::Zero(c, static_cast<Eigen::Index>(batch) * hw);
    for (int b = 0; b < batch; b++) {
        for (int i = 0; i < height; i++) {
            for (int j = 0; j < width; j++) {
                const Eigen::Index col = static_cast<Eigen::Index>(b) * hw + i * width + j;
                for (int dh = 0; dh < kh; dh++) {
                    const int si = i + dh - ph;
                    if (si < 0 || si >= height) {
                        continue;
                    }
                    for (int dw = 0; dw < kw; dw++) {
                        const int sj = j + dw - pw;
                        if (sj < 0 || sj >= width) {
                            continue;
                        }
                        x.col(static_cast<Eigen::Index>(b) * hw + si * width + sj) +=
                            cols.block((dh * kw + dw) * c, col, c, 1);
                    }
                }
            }
        }
    }
    return x;
}

MatrixXd relu_mask(const MatrixXd &activations) {
    return (activations.array() > 0).cast<double>().matrix();
}

}  // namespace

InputTensor build_input(const CircuitRecord &record, bool with_noisy) {
    validate_record(record);
    InputTensor t;
    t.height = record.n;
    t.width = record.config == Config::A ? 1 : record.p_layers;
    t.channels = with_noisy ? 3 : 2;
    t.data.assign(static_cast<size_t>(t.height) * t.width * t.channels, 0.0);
    for (int h = 0; h < t.height; h++) {
        for (int w = 0; w < t.width; w++) {
            t.at(h, w, 0) = record.q[h] / kQubitIndexScale;
            t.at(h, w, 1) = record.config == Config::A ? record.theta[h] : record.theta[w];
            if (with_noisy) {
                t.at(h, w, 2) = record.z_noisy[h];
            }
        }
    }
    return t;
}

Architecture Architecture::default_1d(int in_channels) {
    Architecture a;
    a.dims = 1;
    a.in_channels = in_channels;
    a.conv_widths = {64, 64, 64, 64};
    a.dense_widths = {64};
    return a;
}

Architecture Architecture::default_2d(int in_channels) {
    Architecture a;
    a.dims = 2;
    a.in_channels = in_channels;
    a.conv_widths = {32, 64, 64, 64};
    a.dense_widths = {64};
    return a;
}

void Architecture::validate() const {
    if (dims != 1 && dims != 2) {
        throw std::invalid_argument("architecture: dims must be 1 or 2");
    }
    if (in_channels != 2 && in_channels != 3) {
        throw std::invalid_argument("architecture: in_channels must be 2 or 3");
    }
    if (kernel < 1 || kernel % 2 == 0) {
        throw std::invalid_argument("architecture: kernel must be odd and positive");
    }
    if (conv_widths.empty()) {
        throw std::invalid_argument("architecture: at least one convolution is required before pooling");
    }
    for (int w : conv_widths) {
        if (w < 1) {
            throw std::invalid_argument("architecture: convolution widths must be positive");
        }
    }
    for (int w : dense_widths) {
        if (w < 1) {
            throw std::invalid_argument("architecture: dense widths must be positive");
        }
    }
}

nlohmann::json Architecture::to_json() const {
    return {
        {"dims", dims},
        {"in_channels", in_channels},
        {"kernel", kernel},
        {"conv_widths", conv_widths},
        {"pooling", "global_average"},
        {"dense_widths", dense_widths},
        {"activation", "relu"},
    };
}

Architecture Architecture::from_json(const nlohmann::json &j) {
    Architecture a;
    try {
        a.dims = j.at("dims").get<int>();
        a.in_channels = j.value("in_channels", 3);
        a.kernel = j.value("kernel", 3);
        a.conv_widths = j.at("conv_widths").get<std::vector<int>>();
        a.dense_widths = j.value("dense_widths", std::vector<int>{64});
        if (j.value("pooling", std::string("global_average")) != "global_average" ||
            j.value("activation", std::string("relu")) != "relu") {
            throw std::invalid_argument("architecture: only relu with global average pooling is supported");
        }
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("malformed architecture: ") + ex.what());
    }
    a.validate();
    return a;
}

MatrixXd global_average_pool(const MatrixXd &features, int batch, int positions) {
    if (features.cols() != static_cast<Eigen::Index>(batch) * positions) {
        throw std::invalid_argument("global_average_pool: shape mismatch");
    }
    MatrixXd pooled(features.rows(), batch);
    for (int b = 0; b < batch; b++) {
        pooled.col(b) = features.middleCols(static_cast<Eigen::Index>(b) * positions, positions).rowwise().sum() /
                        static_cast<double>(positions);
    }
    return pooled;
}

struct CnnModel::Cache {
    int batch = 0;
    int height = 0;
    int width = 0;
    std::vector<MatrixXd> cols;
    std::vector<MatrixXd> acts;
    MatrixXd pooled;
    std::vector<MatrixXd> hidden;
    Eigen::RowVectorXd out;
};

CnnModel::CnnModel(Architecture arch, uint64_t seed) : arch_(std::move(arch)) {
    arch_.validate();
    layout();
    Rng rng(seed);
    auto fill = [&](const Dense &d, double stddev) {
        std::normal_distribution<double> dist(0.0, stddev);
        for (size_t k = 0; k < static_cast<size_t>(d.out) * d.in; k++) {
            params_[d.w + k] = dist(rng);
        }
    };
    for (const auto &c : convs_) {
        fill(c.mat, std::sqrt(2.0 / c.mat.in));
    }
    for (size_t l = 0; l < dense_.size(); l++) {
        bool last = l + 1 == dense_.size();
        fill(dense_[l], std::sqrt((last ? 1.0 : 2.0) / dense_[l].in));
    }
}

void CnnModel::layout() {
    size_t offset = 0;
    auto add = [&](int out, int in) {
        Dense d;
        d.in = in;
        d.out = out;
        d.w = offset;
        offset += static_cast<size_t>(out) * in;
        d.b = offset;
        offset += out;
        return d;
    };
    convs_.clear();
    dense_.clear();
    int channels = arch_.in_channels;
    const int taps = arch_.kernel_height() * arch_.kernel_width();
    for (int width : arch_.conv_widths) {
        Conv c;
        c.in = channels;
        c.mat = add(width, channels * taps);
        convs_.push_back(c);
        channels = width;
    }
    for (int width : arch_.dense_widths) {
        dense_.push_back(add(width, channels));
        channels = width;
    }
    dense_.push_back(add(1, channels));
    params_.assign(offset, 0.0);
}

void CnnModel::check_input(const InputTensor &input) const {
    if (input.channels != arch_.in_channels) {
        throw std::invalid_argument(
            "input has " + std::to_string(input.channels) + " channels, model expects " +
            std::to_string(arch_.in_channels));
    }
    if (arch_.dims == 1 && input.width != 1) {
        throw std::invalid_argument("a 1D model needs (N, C) inputs; got a layered grid");
    }
    if (input.height < 1 || input.width < 1 ||
        input.data.size() != static_cast<size_t>(input.height) * input.width * input.channels) {
        throw std::invalid_argument("malformed input tensor");
    }
}

void CnnModel::run(std::span<const InputTensor *const> inputs, Cache &cache) const {
    const InputTensor &first = *inputs[0];
    cache.batch = static_cast<int>(inputs.size());
    cache.height = first.height;
    cache.width = first.width;
    const int hw = first.positions();
    for (const auto *in : inputs) {
        check_input(*in);
        if (in->height != first.height || in->width != first.width) {
            throw std::invalid_argument("inputs in one pass must share a grid shape");
        }
    }

    MatrixXd x(arch_.in_channels, static_cast<Eigen::Index>(cache.batch) * hw);
    for (int b = 0; b < cache.batch; b++) {
        x.middleCols(static_cast<Eigen::Index>(b) * hw, hw) = ConstMap(inputs[b]->data.data(), arch_.in_channels, hw);
    }

    cache.cols.resize(convs_.size());
    cache.acts.resize(convs_.size());
    const MatrixXd *current = &x;
    for (size_t l = 0; l < convs_.size(); l++) {
        const Dense &m = convs_[l].mat;
        cache.cols[l] =
            im2col(*current, cache.batch, cache.height, cache.width, arch_.kernel_height(), arch_.kernel_width());
        MatrixXd z(m.out, cache.cols[l].cols());
        z.noalias() = ConstMap(params_.data() + m.w, m.out, m.in) * cache.cols[l];
        z.colwise() += Eigen::Map<const Eigen::VectorXd>(params_.data() + m.b, m.out);
        cache.acts[l] = z.cwiseMax(0.0);
        current = &cache.acts[l];
    }

    cache.pooled = global_average_pool(*current, cache.batch, hw);

    cache.hidden.resize(dense_.size() - 1);
    const MatrixXd *h = &cache.pooled;
    for (size_t l = 0; l < dense_.size(); l++) {
        const Dense &d = dense_[l];
        MatrixXd z(d.out, cache.batch);
        z.noalias() = ConstMap(params_.data() + d.w, d.out, d.in) * (*h);
        z.colwise() += Eigen::Map<const Eigen::VectorXd>(params_.data() + d.b, d.out);
        if (l + 1 == dense_.size()) {
            cache.out = z.row(0);
        } else {
            cache.hidden[l] = z.cwiseMax(0.0);
            h = &cache.hidden[l];
        }
    }
}

double CnnModel::forward(const InputTensor &input) const {
    const InputTensor *ptr = &input;
    return forward(std::span<const InputTensor *const>(&ptr, 1))[0];
}

std::vector<double> CnnModel::forward(std::span<const InputTensor *const> inputs) const {
    std::vector<double> out;
    if (inputs.empty()) {
        return out;
    }
    out.reserve(inputs.size());
    const size_t per_pass = std::max<size_t>(1, kMaxColumns / std::max(1, inputs[0]->positions()));
    Cache cache;
    for (size_t start = 0; start < inputs.size(); start += per_pass) {
        size_t stop = std::min(inputs.size(), start + per_pass);
        run(inputs.subspan(start, stop - start), cache);
        for (Eigen::Index b = 0; b < cache.out.size(); b++) {
            out.push_back(cache.out(b));
        }
    }
    return out;
}

std::vector<double> CnnModel::accumulate_gradient(
    std::span<const InputTensor *const> inputs, std::span<const double> targets, std::span<double> grad) const {
    if (inputs.size() != targets.size()) {
        throw std::invalid_argument("accumulate_gradient: inputs and targets differ in length");
    }
    if (grad.size() != params_.size()) {
        throw std::invalid_argument("accumulate_gradient: gradient buffer has the wrong size");
    }
    if (inputs.empty()) {
        return {};
    }
    Cache cache;
    run(inputs, cache);
    const int batch = cache.batch;
    const int hw = cache.height * cache.width;

    MatrixXd delta(1, batch);
    for (int b = 0; b < batch; b++) {
        delta(0, b) = 2 * (cache.out(b) - targets[b]);
    }

    for (size_t l = dense_.size(); l-- > 0;) {
        const Dense &d = dense_[l];
        const MatrixXd &input = l == 0 ? cache.pooled : cache.hidden[l - 1];
        MutMap(grad.data() + d.w, d.out, d.in).noalias() += delta * input.transpose();
        Eigen::Map<Eigen::VectorXd>(grad.data() + d.b, d.out) += delta.rowwise().sum();
        MatrixXd back(d.in, batch);
        back.noalias() = ConstMap(params_.data() + d.w, d.out, d.in).transpose() * delta;
        if (l > 0) {
            back = back.cwiseProduct(relu_mask(cache.hidden[l - 1]));
        }
        delta = std::move(back);
    }

    // Pooling spreads each pooled gradient evenly over the sample's positions.
    MatrixXd d_act(delta.rows(), static_cast<Eigen::Index>(batch) * hw);
    for (int b = 0; b < batch; b++) {
        d_act.middleCols(static_cast<Eigen::Index>(b) * hw, hw) =
            (delta.col(b) / static_cast<double>(hw)).replicate(1, hw);
    }

    for (size_t l = convs_.size(); l-- > 0;) {
        const Dense &m = convs_[l].mat;
        MatrixXd dz = d_act.cwiseProduct(relu_mask(cache.acts[l]));
        MutMap(grad.data() + m.w, m.out, m.in).noalias() += dz * cache.cols[l].transpose();
        Eigen::Map<Eigen::VectorXd>(grad.data() + m.b, m.out) += dz.rowwise().sum();
        if (l > 0) {
            MatrixXd dcols(m.in, dz.cols());
            dcols.noalias() = ConstMap(params_.data() + m.w, m.out, m.in).transpose() * dz;
            d_act = col2im(
                dcols, convs_[l].in, batch, cache.height, cache.width, arch_.kernel_height(), arch_.kernel_width());
        }
    }

    return std::vector<double>(cache.out.data(), cache.out.data() + cache.out.size());
}

std::vector<double> CnnModel::backward(const InputTensor &input, double target) const {
    std::vector<double> grad(params_.size(), 0.0);
    const InputTensor *ptr = &input;
    accumulate_gradient(std::span<const InputTensor *const>(&ptr, 1), std::span<const double>(&target, 1), grad);
    return grad;
}

}  // namespace qsynergy
