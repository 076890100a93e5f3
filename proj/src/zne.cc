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

#include "qsynergy/zne.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace qsynergy {

Circuit fold_circuit(const Circuit &circuit, int lambda, Rng &rng) {
    if (lambda != 1 && lambda != 2 && lambda != 3) {
        throw std::invalid_argument("fold_circuit: supported scale factors are 1, 2 and 3");
    }
    if (!circuit.transpiled) {
        throw std::invalid_argument("fold_circuit: circuit must be transpiled");
    }
    if (circuit.noise_scale != 1) {
        throw std::invalid_argument("fold_circuit: circuit is already folded");
    }
    if (lambda == 1) {
        return circuit;
    }
    const size_t g = circuit.gates.size();
    std::vector<char> fold(g, lambda == 3);
    if (lambda == 2) {
        std::vector<size_t> order(g);
        std::iota(order.begin(), order.end(), size_t{0});
        std::shuffle(order.begin(), order.end(), rng);
        for (size_t k = 0; k < g / 2; k++) {
            fold[order[k]] = 1;
        }
    }
    Circuit out = circuit;
    out.noise_scale = lambda;
    out.gates.clear();
    out.gates.reserve(g * 3);
    for (size_t k = 0; k < g; k++) {
        const Gate &gate = circuit.gates[k];
        out.gates.push_back(gate);
        if (fold[k]) {
            out.gates.push_back(gate.inverse());
            out.gates.push_back(gate);
        }
    }
    return out;
}

double richardson(std::span<const double> scale_factors, std::span<const double> values) {
    if (scale_factors.size() != values.size()) {
        throw std::invalid_argument("richardson: scale factors and values differ in length");
    }
    if (scale_factors.size() < 2) {
        throw std::invalid_argument("richardson: need at least two points");
    }
    const size_t n = scale_factors.size();
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            if (scale_factors[i] == scale_factors[j]) {
                throw std::invalid_argument("richardson: duplicate scale factors");
            }
        }
    }
    double total = 0;
    for (size_t i = 0; i < n; i++) {
        // Lagrange basis polynomial l_i evaluated at zero.
        double weight = 1;
        for (size_t j = 0; j < n; j++) {
            if (j != i) {
                weight *= scale_factors[j] / (scale_factors[j] - scale_factors[i]);
            }
        }
        total += weight * values[i];
    }
    return total;
}

ZneEstimate zne_estimate(
    const Circuit &circuit,
    const NoiseModel &noise,
    const EstimatorSettings &settings,
    Rng &rng,
    const std::vector<int> &scale_factors) {
    if (!circuit.transpiled) {
        throw std::invalid_argument("zne_estimate: circuit must be transpiled");
    }
    for (size_t k = 0; k < scale_factors.size(); k++) {
        if (scale_factors[k] < 1 || (k > 0 && scale_factors[k] <= scale_factors[k - 1])) {
            throw std::invalid_argument("zne_estimate: scale factors must be increasing and >= 1");
        }
    }
    ZneEstimate est;
    uint64_t base = rng();
    for (int lambda : scale_factors) {
        Rng sub(derive_seed(base, static_cast<uint64_t>(lambda)));
        Circuit folded = fold_circuit(circuit, lambda, sub);
        est.scale_factors.push_back(lambda);
        est.values.push_back(estimate_noisy(folded, noise, settings, sub).m_z);
    }
    est.extrapolated = richardson(est.scale_factors, est.values);
    return est;
}

}  // namespace qsynergy
