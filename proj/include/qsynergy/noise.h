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

#ifndef QSYNERGY_NOISE_H
#define QSYNERGY_NOISE_H

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"
#include "qsynergy/chip.h"
#include "qsynergy/circuits.h"

namespace qsynergy {

/// Pauli string with a probability, e.g. {"XZ", 2.7e-4} is X on the first
/// qubit of a pair and Z on the second.
struct PauliTerm {
    std::string ops;
    double prob = 0;
};

/// Kraus representation rho -> sum_k K_k rho K_k^dagger of a 1- or 2-qubit map.
/// Branch weights are folded into the operators. Two-qubit operators act on
/// the basis index 2*x(first) + x(second).
class KrausChannel {
   public:
    KrausChannel() = default;
    KrausChannel(int num_qubits, std::vector<Eigen::MatrixXcd> ops);

    static KrausChannel identity(int num_qubits);
    /// rho -> (1 - p) rho + p I/d.
    static KrausChannel depolarizing(int num_qubits, double p);
    /// Pauli terms with their probabilities; the identity carries the rest.
    static KrausChannel pauli(int num_qubits, const std::vector<PauliTerm> &terms);

    int num_qubits() const {
        return num_qubits_;
    }
    int dim() const {
        return 1 << num_qubits_;
    }
    const std::vector<Eigen::MatrixXcd> &ops() const {
        return ops_;
    }

    /// sum_k K_k^dagger K_k
    Eigen::MatrixXcd completeness() const;
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &rho) const;

   private:
    int num_qubits_ = 1;
    std::vector<Eigen::MatrixXcd> ops_;
};

bool validate_cptp(const KrausChannel &channel, double tol = 1e-10);

/// Channel applying `first` and then `second`.
KrausChannel compose(const KrausChannel &first, const KrausChannel &second);

/// (1 - p) rho + p E(rho), realized as an identity branch of weight 1 - p next
/// to the branches of E scaled by p. p = 1 returns E unchanged.
KrausChannel mix_with_identity(const KrausChannel &channel, double p);

/// Same map with the roles of the two qubits exchanged.
KrausChannel swap_qubits(const KrausChannel &channel);

/// Measurement bit flips: p01 = P(read 1 | 0), p10 = P(read 0 | 1).
struct Readout {
    double p01 = 0;
    double p10 = 0;

    /// Effect on an expectation value: (1 - p01 - p10) z + (p10 - p01).
    double apply(double z) const {
        return (1 - p01 - p10) * z + (p10 - p01);
    }
    double scale() const {
        return 1 - p01 - p10;
    }
};

/// Parameters of the default device-like model. None of them are calibration
/// data; they sit near typical superconducting-qubit medians.
struct NoiseDefaults {
    double two_qubit_depolarizing = 1e-2;
    double single_qubit_depolarizing = 3e-4;
    double readout_p01 = 2e-2;
    double readout_p10 = 2e-2;
    std::vector<std::pair<Edge, PauliTerm>> pauli_terms = {{Edge{12, 15}, PauliTerm{"XZ", 2.7e-4}}};
};

/// Gate and readout errors. A channel is attached after every CNOT (by edge)
/// and every single-qubit rotation (by kind and qubit). Immutable once built.
class NoiseModel {
   public:
    explicit NoiseModel(int num_qubits = 0);

    static NoiseModel ideal(const ChipGraph &graph);
    static NoiseModel from_defaults(const ChipGraph &graph, const NoiseDefaults &defaults);
    /// Parses the noise configuration schema; missing sections keep defaults.
    static NoiseModel from_json(const nlohmann::json &j, const ChipGraph &graph);
    static NoiseModel load(const std::string &path, const ChipGraph &graph);

    void set_cnot_channel(Edge edge, KrausChannel channel);
    void set_single_qubit_channel(GateKind kind, int qubit, KrausChannel channel);
    void set_readout(int qubit, Readout readout);
    void set_readout_all(Readout readout);

    /// nullptr when the gate is noiseless.
    const KrausChannel *cnot_channel(Edge edge) const;
    const KrausChannel *single_qubit_channel(GateKind kind, int qubit) const;
    const KrausChannel *channel_for(const Gate &gate) const;
    const Readout &readout(int qubit) const;

    const std::map<Edge, KrausChannel> &cnot_channels() const {
        return cnot_;
    }
    const std::map<std::pair<GateKind, int>, KrausChannel> &single_qubit_channels() const {
        return single_;
    }
    int num_qubits() const {
        return static_cast<int>(readout_.size());
    }
    double p_noise() const {
        return p_noise_;
    }

    /// Throws std::invalid_argument naming the first non-CPTP channel.
    void validate(double tol = 1e-10) const;

   private:
    friend NoiseModel scale_cnot_noise(const NoiseModel &model, double p_noise);

    std::map<Edge, KrausChannel> cnot_;
    std::map<std::pair<GateKind, int>, KrausChannel> single_;
    std::vector<Readout> readout_;
    double p_noise_ = 1;
};

NoiseModel default_noise_model(const ChipGraph &graph);

/// Mixes every CNOT channel with the identity at weight 1 - p_noise. Scaling
/// twice multiplies the factors; the recorded p_noise follows.
NoiseModel scale_cnot_noise(const NoiseModel &model, double p_noise);

}  // namespace qsynergy

#endif
