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

#ifndef QSYNERGY_CNN_H
#define QSYNERGY_CNN_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qsynergy/dataset.h"

namespace qsynergy {

inline constexpr double kQubitIndexScale = 10.0;

/// Network input on an (N, P) grid with channels [q/10, theta, z_noisy];
/// configuration A uses P = 1. Stored position-major: (h * width + w) * C + c.
struct InputTensor {
    int height = 0;
    int width = 1;
    int channels = 0;
    std::vector<double> data;

    double &at(int h, int w, int c) {
        return data[(static_cast<size_t>(h) * width + w) * channels + c];
    }
    double at(int h, int w, int c) const {
        return data[(static_cast<size_t>(h) * width + w) * channels + c];
    }
    int positions() const {
        return height * width;
    }
};

/// Stacks [q/10, theta, z_noisy] (the last only when with_noisy). For
/// configuration B, theta is tiled along qubits and q, z along layers.
InputTensor build_input(const CircuitRecord &record, bool with_noisy);

/// Convolution stack with same padding and ReLU, one global average pool
/// after the last convolution, then a ReLU dense head ending in one linear
/// output. Works for any grid size.
struct Architecture {
    int dims = 1;  // 1: kernel k x 1, 2: kernel k x k
    int in_channels = 3;
    int kernel = 3;
    std::vector<int> conv_widths = {64, 64, 64, 64};
    std::vector<int> dense_widths = {64};

    static Architecture default_1d(int in_channels);
    static Architecture default_2d(int in_channels);

    int kernel_height() const {
        return kernel;
    }
    int kernel_width() const {
        return dims == 2 ? kernel : 1;
    }
    void validate() const;
    nlohmann::json to_json() const;
    static Architecture from_json(const nlohmann::json &j);
    bool operator==(const Architecture &) const = default;
};

/// Mean over positions for each (channel, sample). `features` has one column
/// per position, samples laid out consecutively.
Eigen::MatrixXd global_average_pool(const Eigen::MatrixXd &features, int batch, int positions);

class CnnModel {
   public:
    CnnModel() = default;
    /// He-normal weights drawn from `seed`, zero biases.
    CnnModel(Architecture arch, uint64_t seed);

    const Architecture &architecture() const {
        return arch_;
    }
    std::span<double> parameters() {
        return params_;
    }
    std::span<const double> parameters() const {
        return params_;
    }
    size_t num_parameters() const {
        return params_.size();
    }
    bool uses_noisy_inputs() const {
        return arch_.in_channels == 3;
    }

    /// Free-form provenance stored alongside the weights (seed, inputs, ...).
    nlohmann::json metadata = nlohmann::json::object();

    double forward(const InputTensor &input) const;
    /// All inputs must share one grid shape.
    std::vector<double> forward(std::span<const InputTensor *const> inputs) const;

    /// Adds the gradient of sum_b (y_hat_b - y_b)^2 to `grad` and returns the
    /// predictions. All inputs must share one grid shape.
    std::vector<double> accumulate_gradient(
        std::span<const InputTensor *const> inputs, std::span<const double> targets, std::span<double> grad) const;

    /// Gradient of (y_hat - y)^2 for a single example.
    std::vector<double> backward(const InputTensor &input, double target) const;

   private:
    struct Dense {
        size_t w = 0;  // offset of the (out x in) column-major weight block
        size_t b = 0;
        int in = 0;
        int out = 0;
    };
    struct Conv {
        Dense mat;  // weights are (out x k*k*in)
        int in = 0;
    };
    struct Cache;

    void layout();
    void check_input(const InputTensor &input) const;
    void run(std::span<const InputTensor *const> inputs, Cache &cache) const;

    Architecture arch_;
    std::vector<double, Eigen::aligned_allocator<double>> params_;  // fixed alignment keeps kernels reproducible
    std::vector<Conv> convs_;
    std::vector<Dense> dense_;  // hidden layers followed by the output layer
};

}  // namespace qsynergy

#endif
