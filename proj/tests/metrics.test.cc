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

#include <gtest/gtest.h>

#include <cmath>

#include "qsynergy/rng.h"

using namespace qsynergy;

namespace {

using Vec = std::vector<double>;

Vec random_vec(Rng &rng, size_t n) {
    Vec v(n);
    for (auto &x : v) {
        x = uniform_real(rng, -1, 1);
    }
    return v;
}

}  // namespace

TEST(metrics, mse_examples) {
    ASSERT_EQ(mse(Vec{0.3, 0.4}, Vec{0.3, 0.4}), 0);
    ASSERT_NEAR(mse(Vec{0, 0}, Vec{1, -1}), 1, 1e-15);
    ASSERT_THROW(mse(Vec{}, Vec{}), std::invalid_argument);
    ASSERT_THROW(mse(Vec{1}, Vec{1, 2}), std::invalid_argument);
}

TEST(metrics, mse_matches_naive_sum) {
    Rng rng(1);
    for (int k = 0; k < 20; k++) {
        Vec a = random_vec(rng, 1000);
        Vec b = random_vec(rng, 1000);
        long double s = 0;
        for (size_t i = 0; i < a.size(); i++) {
            s += (long double)(a[i] - b[i]) * (a[i] - b[i]);
        }
        ASSERT_NEAR(mse(a, b), (double)(s / a.size()), 1e-12);
        ASSERT_GT(mse(a, b), 0);
    }
}

TEST(metrics, r_squared_examples) {
    Vec y = {1, 2, 3};
    ASSERT_NEAR(r_squared(y, y), 1, 1e-15);
    ASSERT_NEAR(r_squared(y, Vec{2, 2, 2}), 0, 1e-15);
    ASSERT_NEAR(r_squared(y, Vec{1.1, 2.0, 2.9}), 0.99, 1e-12);
    ASSERT_THROW(r_squared(Vec{1, 1, 1}, Vec{1, 2, 3}), std::invalid_argument);
    ASSERT_THROW(r_squared(Vec{1}, Vec{1}), std::invalid_argument);
}

TEST(metrics, r_squared_at_most_one) {
    Rng rng(2);
    for (int k = 0; k < 50; k++) {
        Vec y = random_vec(rng, 30);
        Vec p = random_vec(rng, 30);
        ASSERT_LE(r_squared(y, p), 1);
    }
}

TEST(metrics, pearson_examples) {
    Rng rng(3);
    Vec a = random_vec(rng, 50);
    Vec b;
    Vec c;
    for (double x : a) {
        b.push_back(2 * x + 3);
        c.push_back(-x);
    }
    ASSERT_NEAR(pearson(a, b), 1, 1e-12);
    ASSERT_NEAR(pearson(a, c), -1, 1e-12);
    ASSERT_THROW(pearson(a, Vec(50, 0.5)), std::invalid_argument);
    ASSERT_THROW(pearson(Vec{1}, Vec{2}), std::invalid_argument);
}

TEST(metrics, pearson_symmetry_and_affine_invariance) {
    Rng rng(4);
    for (int k = 0; k < 20; k++) {
        Vec a = random_vec(rng, 40);
        Vec b = random_vec(rng, 40);
        double r = pearson(a, b);
        ASSERT_GE(r, -1 - 1e-12);
        ASSERT_LE(r, 1 + 1e-12);
        ASSERT_NEAR(pearson(b, a), r, 1e-12);
        Vec a2;
        for (double x : a) {
            a2.push_back(3.5 * x - 7);
        }
        ASSERT_NEAR(pearson(a2, b), r, 1e-12);
    }
}

TEST(metrics, eval_report) {
    Vec y = {1, 2, 3, 4};
    Vec p = {1.2, 1.9, 3.1, 3.7};
    EvalReport e = evaluate(y, p);
    ASSERT_NEAR(e.one_minus_r2, 1 - e.r_squared, 1e-12);
    ASSERT_NEAR(e.r_squared, r_squared(y, p), 1e-15);
    ASSERT_NEAR(e.pearson, pearson(y, p), 1e-15);
    ASSERT_NEAR(e.mse, mse(y, p), 1e-15);
    ASSERT_EQ(e.k_test, 4u);
    ASSERT_EQ(EvalReport::csv_header(), "r2,one_minus_r2,pearson,mse,k_test");
    auto j = e.to_json();
    ASSERT_EQ(j.at("k_test").get<size_t>(), 4u);
    ASSERT_EQ(j.at("r_squared").get<double>(), e.r_squared);

    EvalReport flat = evaluate(y, Vec(4, 2.5));
    ASSERT_NEAR(flat.r_squared, 0, 1e-15);
    ASSERT_TRUE(std::isnan(flat.pearson));
}
