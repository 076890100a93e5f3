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

#ifndef QSYNERGY_CIRCUITS_H
#define QSYNERGY_CIRCUITS_H

#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qsynergy/chip.h"
#include "qsynergy/rng.h"

namespace qsynergy {

using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;

inline constexpr double kDefaultPhi = -std::numbers::pi / 2;
inline constexpr double kMaxTheta = std::numbers::pi / 2;

enum class GateKind { RX, RZ, RZZ, CNOT };

/// Configuration A: one angle per qubit, reused in every layer.
/// Configuration B: one angle per layer, shared by all qubits.
enum class Config { A, B };

std::string to_string(GateKind kind);
std::string to_string(Config config);
Config parse_config(const std::string &text);

/// A gate on physical qubits. For CNOT, q0 is the control.
struct Gate {
    GateKind kind = GateKind::RX;
    int q0 = 0;
    int q1 = -1;
    double angle = 0;

    int arity() const {
        return kind == GateKind::RX || kind == GateKind::RZ ? 1 : 2;
    }
    Gate inverse() const;
    bool operator==(const Gate &) const = default;
};

Matrix2 rx_matrix(double theta);
Matrix2 rz_matrix(double phi);
Matrix4 rzz_matrix(double phi);
Matrix4 cnot_matrix();

/// Matrix of a gate. Two-qubit matrices use the basis index 2*x(q0) + x(q1).
Eigen::MatrixXcd gate_matrix(const Gate &gate);

/// Transverse-field Ising parameters for a first-order Trotter product.
struct TrotterSpec {
    double coupling = 0;    // J
    double field = 0;       // h
    double delta_t = 1;
    double total_time = 1;  // T
};

struct TrotterAngles {
    double phi = 0;    // RZZ angle, -2 J dt
    double theta = 0;  // RX angle, 2 h dt
};

TrotterAngles trotter_angles(const TrotterSpec &spec);

/// Number of Trotter layers T / dt; throws unless it is a positive integer.
int trotter_layers(const TrotterSpec &spec);

struct Circuit {
    Config config = Config::A;
    QubitSection section;
    int p_layers = 0;
    std::vector<double> theta;  // length N (A) or P (B)
    double phi = kDefaultPhi;
    uint64_t seed = 0;
    bool transpiled = false;
    int noise_scale = 1;  // unitary folding factor applied to the gates
    std::vector<Gate> gates;

    int num_qubits() const {
        return section.size();
    }
};

/// Logical Trotter circuit: per layer, RX on every section qubit followed by
/// RZZ(phi) on every induced edge in lexicographic order.
Circuit make_circuit(
    QubitSection section, int p_layers, Config config, std::vector<double> theta, double phi = kDefaultPhi);

/// As make_circuit with angles drawn uniformly from [0, pi/2].
Circuit build_circuit(QubitSection section, int p_layers, Config config, Rng &rng, double phi = kDefaultPhi);

/// Rewrites RZZ(phi) on (i, j), i < j, as CNOT(i -> j), RZ(phi) on j, CNOT(i -> j).
Circuit transpile(const Circuit &circuit);

size_t count_gates(const Circuit &circuit, GateKind kind);

/// {config, q, p_layers, theta, phi, seed, transpiled}. Gates are rebuilt on load.
nlohmann::json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &j, const ChipGraph &graph);

}  // namespace qsynergy

#endif
