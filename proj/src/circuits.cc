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

#include "qsynergy/circuits.h"

#include <cmath>
#include <stdexcept>

namespace qsynergy {

using cd = std::complex<double>;

std::string to_string(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
            return "RX";
        case GateKind::RZ:
            return "RZ";
        case GateKind::RZZ:
            return "RZZ";
        case GateKind::CNOT:
            return "CNOT";
    }
    return "?";
}

std::string to_string(Config config) {
    return config == Config::A ? "A" : "B";
}

Config parse_config(const std::string &text) {
    if (text == "A" || text == "a") {
        return Config::A;
    }
    if (text == "B" || text == "b") {
        return Config::B;
    }
    throw std::invalid_argument("unknown circuit configuration '" + text + "' (expected A or B)");
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (kind != GateKind::CNOT) {
        g.angle = -angle;
    }
    return g;
}

Matrix2 rx_matrix(double theta) {
    double c = std::cos(theta / 2);
    double s = std::sin(theta / 2);
    Matrix2 m;
    m << cd(c, 0), cd(0, -s), cd(0, -s), cd(c, 0);
    return m;
}

Matrix2 rz_matrix(double phi) {
    Matrix2 m = Matrix2::Zero();
    m(0, 0) = std::polar(1.0, -phi / 2);
    m(1, 1) = std::polar(1.0, phi / 2);
    return m;
}

Matrix4 rzz_matrix(double phi) {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = std::polar(1.0, -phi / 2);
    m(1, 1) = std::polar(1.0, phi / 2);
    m(2, 2) = std::polar(1.0, phi / 2);
    m(3, 3) = std::polar(1.0, -phi / 2);
    return m;
}

Matrix4 cnot_matrix() {
    Matrix4 m = Matrix4::Zero();
    m(0, 0) = 1;
    m(1, 1) = 1;
    m(2, 3) = 1;
    m(3, 2) = 1;
    return m;
}

Eigen::MatrixXcd gate_matrix(const Gate &gate) {
    switch (gate.kind) {
        case GateKind::RX:
            return rx_matrix(gate.angle);
        case GateKind::RZ:
            return rz_matrix(gate.angle);
        case GateKind::RZZ:
            return rzz_matrix(gate.angle);
        case GateKind::CNOT:
            return cnot_matrix();
    }
    throw std::logic_error("gate_matrix: unknown kind");
}

TrotterAngles trotter_angles(const TrotterSpec &spec) {
    if (!(spec.delta_t > 0)) {
        throw std::invalid_argument("trotter_angles: delta_t must be positive");
    }
    return {-2 * spec.coupling * spec.delta_t, 2 * spec.field * spec.delta_t};
}

int trotter_layers(const TrotterSpec &spec) {
    if (!(spec.delta_t > 0) || !(spec.total_time > 0)) {
        throw std::invalid_argument("trotter_layers: times must be positive");
    }
    double ratio = spec.total_time / spec.delta_t;
    double rounded = std::round(ratio);
    if (rounded < 1 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
        throw std::invalid_argument("trotter_layers: T / dt must be a positive integer");
    }
    return static_cast<int>(rounded);
}

Circuit make_circuit(QubitSection section, int p_layers, Config config, std::vector<double> theta, double phi) {
    if (p_layers < 1) {
        throw std::invalid_argument("circuit needs at least one layer");
    }
    if (section.size() < 2) {
        throw std::invalid_argument("circuit needs a section of at least 2 qubits");
    }
    size_t expected = config == Config::A ? section.qubits.size() : static_cast<size_t>(p_layers);
    if (theta.size() != expected) {
        throw std::invalid_argument(
            "configuration " + to_string(config) + " needs " + std::to_string(expected) + " angles, got " +
            std::to_string(theta.size()));
    }
    for (double t : theta) {
        if (!(t >= 0 && t <= kMaxTheta)) {
            throw std::invalid_argument("rotation angles must lie in [0, pi/2]");
        }
    }
    if (!std::isfinite(phi)) {
        throw std::invalid_argument("phi must be finite");
    }

    Circuit c;
    c.config = config;
    c.p_layers = p_layers;
    c.phi = phi;
    c.gates.reserve(static_cast<size_t>(p_layers) * (section.qubits.size() + section.edges.size()));
    for (int p = 0; p < p_layers; p++) {
        for (size_t n = 0; n < section.qubits.size(); n++) {
            double angle = config == Config::A ? theta[n] : theta[p];
            c.gates.push_back({GateKind::RX, section.qubits[n], -1, angle});
        }
        for (const auto &e : section.edges) {
            c.gates.push_back({GateKind::RZZ, e.a, e.b, phi});
        }
    }
    c.section = std::move(section);
    c.theta = std::move(theta);
    return c;
}

Circuit build_circuit(QubitSection section, int p_layers, Config config, Rng &rng, double phi) {
    size_t count = config == Config::A ? section.qubits.size() : static_cast<size_t>(std::max(p_layers, 0));
    std::vector<double> theta(count);
    for (auto &t : theta) {
        t = uniform_real(rng, 0, kMaxTheta);
    }
    return make_circuit(std::move(section), p_layers, config, std::move(theta), phi);
}

Circuit transpile(const Circuit &circuit) {
    if (circuit.transpiled) {
        throw std::invalid_argument("circuit is already transpiled");
    }
    Circuit out = circuit;
    out.transpiled = true;
    out.gates.clear();
    out.gates.reserve(circuit.gates.size() * 2);
    for (const auto &g : circuit.gates) {
        if (g.kind == GateKind::RZZ) {
            int control = std::min(g.q0, g.q1);
            int target = std::max(g.q0, g.q1);
            out.gates.push_back({GateKind::CNOT, control, target, 0});
            out.gates.push_back({GateKind::RZ, target, -1, g.angle});
            out.gates.push_back({GateKind::CNOT, control, target, 0});
        } else {
            out.gates.push_back(g);
        }
    }
    return out;
}

size_t count_gates(const Circuit &circuit, GateKind kind) {
    size_t n = 0;
    for (const auto &g : circuit.gates) {
        n += g.kind == kind;
    }
    return n;
}

nlohmann::json circuit_to_json(const Circuit &circuit) {
    if (circuit.noise_scale != 1) {
        throw std::invalid_argument("folded circuits are not serializable");
    }
    return {
        {"config", to_string(circuit.config)},
        {"q", circuit.section.qubits},
        {"p_layers", circuit.p_layers},
        {"theta", circuit.theta},
        {"phi", circuit.phi},
        {"seed", circuit.seed},
        {"transpiled", circuit.transpiled},
    };
}

Circuit circuit_from_json(const nlohmann::json &j, const ChipGraph &graph) {
    try {
        auto section = make_section(graph, j.at("q").get<std::vector<int>>());
        Circuit c = make_circuit(
            std::move(section),
            j.at("p_layers").get<int>(),
            parse_config(j.at("config").get<std::string>()),
            j.at("theta").get<std::vector<double>>(),
            j.value("phi", kDefaultPhi));
        c.seed = j.value("seed", uint64_t{0});
        if (j.value("transpiled", false)) {
            c = transpile(c);
        }
        return c;
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("malformed circuit json: ") + ex.what());
    }
}

}  // namespace qsynergy
