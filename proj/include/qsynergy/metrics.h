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

#ifndef QSYNERGY_METRICS_H
#define QSYNERGY_METRICS_H

#include <span>
#include <string>

#include "json.hpp"

namespace qsynergy {

/// Mean of squared residuals.
double mse(std::span<const double> y, std::span<const double> y_hat);

/// 1 - sum (y - y_hat)^2 / sum (y - mean(y))^2. Throws if y is constant.
double r_squared(std::span<const double> y, std::span<const double> y_hat);

/// Pearson correlation. Throws if either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

struct EvalReport {
    double r_squared = 0;
    double one_minus_r2 = 0;
    double pearson = 0;  // NaN when the predictions are constant
    double mse = 0;
    size_t k_test = 0;

    nlohmann::json to_json() const;
    static std::string csv_header();
    std::string csv_row() const;
};

EvalReport evaluate(std::span<const double> y, std::span<const double> y_hat);

}  // namespace qsynergy

#endif
