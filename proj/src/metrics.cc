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

#include "qsynergy/metrics.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qsynergy {

namespace {

void check_pair(std::span<const double> a, std::span<const double> b, size_t min_len, const char *name) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(name) + ": length mismatch");
    }
    if (a.size() < min_len) {
        throw std::invalid_argument(std::string(name) + ": need at least " + std::to_string(min_len) + " values");
    }
}

double mean(std::span<const double> v) {
    double s = 0;
    for (double x : v) {
        s += x;
    }
    return s / static_cast<double>(v.size());
}

std::string format_double(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

}  // namespace

double mse(std::span<const double> y, std::span<const double> y_hat) {
    check_pair(y, y_hat, 1, "mse");
    double s = 0;
    for (size_t k = 0; k < y.size(); k++) {
        double r = y[k] - y_hat[k];
        s += r * r;
    }
    return s / static_cast<double>(y.size());
}

double r_squared(std::span<const double> y, std::span<const double> y_hat) {
    check_pair(y, y_hat, 2, "r_squared");
    double y_bar = mean(y);
    double ss_res = 0;
    double ss_tot = 0;
    for (size_t k = 0; k < y.size(); k++) {
        ss_res += (y[k] - y_hat[k]) * (y[k] - y_hat[k]);
        ss_tot += (y[k] - y_bar) * (y[k] - y_bar);
    }
    if (ss_tot == 0) {
        throw std::invalid_argument("r_squared: targets have zero variance");
    }
    return 1 - ss_res / ss_tot;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    check_pair(a, b, 2, "pearson");
    double a_bar = mean(a);
    double b_bar = mean(b);
    double sab = 0;
    double saa = 0;
    double sbb = 0;
    for (size_t k = 0; k < a.size(); k++) {
        double da = a[k] - a_bar;
        double db = b[k] - b_bar;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0 || sbb == 0) {
        throw std::invalid_argument("pearson: constant input");
    }
    return sab / std::sqrt(saa * sbb);
}

EvalReport evaluate(std::span<const double> y, std::span<const double> y_hat) {
    EvalReport rep;
    rep.k_test = y.size();
    rep.mse = mse(y, y_hat);
    rep.r_squared = r_squared(y, y_hat);
    rep.one_minus_r2 = 1 - rep.r_squared;
    try {
        rep.pearson = pearson(y, y_hat);
    } catch (const std::invalid_argument &) {
        rep.pearson = std::numeric_limits<double>::quiet_NaN();
    }
    return rep;
}

nlohmann::json EvalReport::to_json() const {
    nlohmann::json j = {
        {"r_squared", r_squared},
        {"one_minus_r2", one_minus_r2},
        {"mse", mse},
        {"k_test", k_test},
    };
    j["pearson"] = std::isnan(pearson) ? nlohmann::json(nullptr) : nlohmann::json(pearson);
    return j;
}

std::string EvalReport::csv_header() {
    return "r2,one_minus_r2,pearson,mse,k_test";
}

std::string EvalReport::csv_row() const {
    return format_double(r_squared) + "," + format_double(one_minus_r2) + "," + format_double(pearson) + "," +
           format_double(mse) + "," + std::to_string(k_test);
}

}  // namespace qsynergy
