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

#ifndef QSYNERGY_ZNE_H
#define QSYNERGY_ZNE_H

#include <span>
#include <vector>

#include "qsynergy/circuits.h"
#include "qsynergy/noise.h"
#include "qsynergy/rng.h"
#include "qsynergy/simulator.h"

namespace qsynergy {

struct ZneEstimate {
    std::vector<double> scale_factors;
    std::vector<double> values;  // noisy m_z at each scale factor
    double extrapolated = 0;
};

/// Unitary folding G -> G G^dagger G. lambda = 1 leaves the circuit alone,
/// lambda = 3 folds every gate and lambda = 2 folds floor(g/2) gates chosen
/// uniformly without replacement.
Circuit fold_circuit(const Circuit &circuit, int lambda, Rng &rng);

/// Value at zero of the Lagrange polynomial through (scale_factors, values).
/// For (1, 2, 3) this is 3 v1 - 3 v2 + v3.
double richardson(std::span<const double> scale_factors, std::span<const double> values);

/// Folds the circuit at each scale factor, estimates m_z with the same
/// estimator and budget, and extrapolates to zero noise.
ZneEstimate zne_estimate(
    const Circuit &circuit,
    const NoiseModel &noise,
    const EstimatorSettings &settings,
    Rng &rng,
    const std::vector<int> &scale_factors = {1, 2, 3});

}  // namespace qsynergy

#endif
