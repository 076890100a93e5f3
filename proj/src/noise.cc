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

#include "qsynergy/noise.h"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qsynergy/errors.h"

namespace qsynergy {

using cd = std::complex<double>;
using Eigen::MatrixXcd;

namespace {

MatrixXcd pauli_matrix(char op) {
    MatrixXcd m = MatrixXcd::Zero(2, 2);
    switch (op) {
        case 'I':
            m(0, 0) = 1;
            m(1, 1) = 1;
            break;
        case 'X':
            m(0, 1) = 1;
            m(1, 0) = 1;
            break;
        case 'Y':
            m(0, 1) = cd(0, -1);
            m(1, 0) = cd(0, 1);
            break;
        case 'Z':
            m(0, 0) = 1;
            m(1, 1) = -1;
            break;
        default:
            throw std::invalid_argument(std::string("unknown Pauli operator '") + op + "'");
    }
    return m;
}

MatrixXcd kron(const MatrixXcd &first, const MatrixXcd &second) {
    MatrixXcd out(first.rows() * second.rows(), first.cols() * second.cols());
    for (Eigen::Index i = 0; i < first.rows(); i++) {
        for (Eigen::Index j = 0; j < first.cols(); j++) {
            out.block(i * second.rows(), j * second.cols(), second.rows(), second.cols()) = first(i, j) * second;
        }
    }
    return out;
}

MatrixXcd pauli_string(const std::string &ops) {
    MatrixXcd m = pauli_matrix(ops.at(0));
    for (size_t k = 1; k < ops.size(); k++) {
        m = kron(m, pauli_matrix(ops[k]));
    }
    return m;
}

std::vector<std::string> all_pauli_strings(int num_qubits) {
    std::vector<std::string> out = {""};
    for (int q = 0; q < num_qubits; q++) {
        std::vector<std::string> next;
        for (const auto &s : out) {
            for (char c : std::string("IXYZ")) {
                next.push_back(s + c);
            }
        }
        out = std::move(next);
    }
    return out;
}

void check_probability(double p, const char *what) {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

MatrixXcd swap_matrix() {
    MatrixXcd s = MatrixXcd::Zero(4, 4);
    s(0, 0) = 1;
    s(1, 2) = 1;
    s(2, 1) = 1;
    s(3, 3) = 1;
    return s;
}

MatrixXcd parse_complex_matrix(const nlohmann::json &j, int dim) {
    if (!j.is_array() || static_cast<int>(j.size()) != dim) {
        throw std::invalid_argument("kraus matrix must have " + std::to_string(dim) + " rows");
    }
    MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; r++) {
        if (!j[r].is_array() || static_cast<int>(j[r].size()) != dim) {
            throw std::invalid_argument("kraus matrix row has the wrong length");
        }
        for (int c = 0; c < dim; c++) {
            const auto &entry = j[r][c];
            if (!entry.is_array() || entry.size() != 2) {
                throw std::invalid_argument("kraus matrix entries must be [re, im] pairs");
            }
            m(r, c) = cd(entry[0].get<double>(), entry[1].get<double>());
        }
    }
    return m;
}

}  // namespace

KrausChannel::KrausChannel(int num_qubits, std::vector<MatrixXcd> ops) : num_qubits_(num_qubits), ops_(std::move(ops)) {
    if (num_qubits != 1 && num_qubits != 2) {
        throw std::invalid_argument("KrausChannel: only 1- and 2-qubit channels are supported");
    }
    if (ops_.empty()) {
        throw std::invalid_argument("KrausChannel: no operators");
    }
    for (const auto &k : ops_) {
        if (k.rows() != dim() || k.cols() != dim()) {
            throw std::invalid_argument("KrausChannel: operator has the wrong dimension");
        }
    }
}

KrausChannel KrausChannel::identity(int num_qubits) {
    int d = 1 << num_qubits;
    return KrausChannel(num_qubits, {MatrixXcd::Identity(d, d)});
}

KrausChannel KrausChannel::depolarizing(int num_qubits, double p) {
    check_probability(p, "depolarizing probability");
    auto strings = all_pauli_strings(num_qubits);
    double d2 = static_cast<double>(strings.size());
    std::vector<PauliTerm> terms;
    for (size_t k = 1; k < strings.size(); k++) {
        terms.push_back({strings[k], p / d2});
    }
    return pauli(num_qubits, terms);
}

KrausChannel KrausChannel::pauli(int num_qubits, const std::vector<PauliTerm> &terms) {
    double rest = 1;
    std::vector<MatrixXcd> ops;
    ops.push_back(MatrixXcd());
    for (const auto &t : terms) {
        if (static_cast<int>(t.ops.size()) != num_qubits) {
            throw std::invalid_argument("Pauli term '" + t.ops + "' has the wrong length");
        }
        check_probability(t.prob, "Pauli term probability");
        rest -= t.prob;
        if (t.prob > 0) {
            ops.push_back(std::sqrt(t.prob) * pauli_string(t.ops));
        }
    }
    if (rest < -1e-12) {
        throw std::invalid_argument("Pauli term probabilities exceed 1");
    }
    rest = std::max(rest, 0.0);
    int d = 1 << num_qubits;
    ops[0] = std::sqrt(rest) * MatrixXcd::Identity(d, d);
    if (rest == 0) {
        ops.erase(ops.begin());
    }
    return KrausChannel(num_qubits, std::move(ops));
}

MatrixXcd KrausChannel::completeness() const {
    MatrixXcd sum = MatrixXcd::Zero(dim(), dim());
    for (const auto &k : ops_) {
        sum += k.adjoint() * k;
    }
    return sum;
}

MatrixXcd KrausChannel::apply(const MatrixXcd &rho) const {
    if (rho.rows() != dim() || rho.cols() != dim()) {
        throw std::invalid_argument("KrausChannel::apply: density matrix has the wrong dimension");
    }
    MatrixXcd out = MatrixXcd::Zero(dim(), dim());
    for (const auto &k : ops_) {
        out += k * rho * k.adjoint();
    }
    return out;
}

bool validate_cptp(const KrausChannel &channel, double tol) {
    if (channel.ops().empty()) {
        return false;
    }
    MatrixXcd diff = channel.completeness() - MatrixXcd::Identity(channel.dim(), channel.dim());
    return diff.cwiseAbs().maxCoeff() <= tol;
}

KrausChannel compose(const KrausChannel &first, const KrausChannel &second) {
    if (first.num_qubits() != second.num_qubits()) {
        throw std::invalid_argument("compose: channels act on different qubit counts");
    }
    std::vector<MatrixXcd> ops;
    for (const auto &s : second.ops()) {
        for (const auto &f : first.ops()) {
            MatrixXcd k = s * f;
            if (k.cwiseAbs().maxCoeff() > 0) {
                ops.push_back(std::move(k));
            }
        }
    }
    return KrausChannel(first.num_qubits(), std::move(ops));
}

KrausChannel mix_with_identity(const KrausChannel &channel, double p) {
    check_probability(p, "p_noise");
    if (p == 1) {
        return channel;
    }
    std::vector<MatrixXcd> ops;
    ops.push_back(std::sqrt(1 - p) * MatrixXcd::Identity(channel.dim(), channel.dim()));
    if (p > 0) {
        double amp = std::sqrt(p);
        for (const auto &k : channel.ops()) {
            ops.push_back(amp * k);
        }
    }
    return KrausChannel(channel.num_qubits(), std::move(ops));
}

KrausChannel swap_qubits(const KrausChannel &channel) {
    if (channel.num_qubits() != 2) {
        return channel;
    }
    MatrixXcd s = swap_matrix();
    std::vector<MatrixXcd> ops;
    for (const auto &k : channel.ops()) {
        ops.push_back(s * k * s);
    }
    return KrausChannel(2, std::move(ops));
}

NoiseModel::NoiseModel(int num_qubits) : readout_(num_qubits) {
}

NoiseModel NoiseModel::ideal(const ChipGraph &graph) {
    return NoiseModel(graph.num_qubits());
}

NoiseModel NoiseModel::from_defaults(const ChipGraph &graph, const NoiseDefaults &defaults) {
    NoiseModel model(graph.num_qubits());
    auto depol2 = KrausChannel::depolarizing(2, defaults.two_qubit_depolarizing);
    for (const auto &e : graph.edges()) {
        std::vector<PauliTerm> terms;
        for (const auto &[edge, term] : defaults.pauli_terms) {
            if (Edge::make(edge.a, edge.b) == e) {
                PauliTerm t = term;
                if (edge.a > edge.b) {
                    std::swap(t.ops[0], t.ops[1]);
                }
                terms.push_back(t);
            }
        }
        KrausChannel channel = depol2;
        if (!terms.empty()) {
            channel = compose(channel, KrausChannel::pauli(2, terms));
        }
        model.set_cnot_channel(e, std::move(channel));
    }
    if (defaults.single_qubit_depolarizing > 0) {
        auto depol1 = KrausChannel::depolarizing(1, defaults.single_qubit_depolarizing);
        for (int q = 0; q < graph.num_qubits(); q++) {
            model.set_single_qubit_channel(GateKind::RX, q, depol1);
            model.set_single_qubit_channel(GateKind::RZ, q, depol1);
        }
    }
    model.set_readout_all({defaults.readout_p01, defaults.readout_p10});
    model.validate();
    return model;
}

NoiseModel NoiseModel::from_json(const nlohmann::json &j, const ChipGraph &graph) {
    try {
        NoiseDefaults defaults;
        std::map<Edge, nlohmann::json> edge_specs;
        if (j.contains("two_qubit")) {
            const auto &tq = j.at("two_qubit");
            defaults.two_qubit_depolarizing = tq.value("default_depolarizing", defaults.two_qubit_depolarizing);
            if (tq.contains("edges")) {
                defaults.pauli_terms.clear();
                for (const auto &spec : tq.at("edges")) {
                    auto pair = spec.at("pair").get<std::vector<int>>();
                    if (pair.size() != 2 || !graph.contains_edge(pair[0], pair[1])) {
                        throw std::invalid_argument("noise config names a pair that is not a chip edge");
                    }
                    edge_specs[Edge::make(pair[0], pair[1])] = spec;
                }
            }
        }
        if (j.contains("single_qubit")) {
            defaults.single_qubit_depolarizing =
                j.at("single_qubit").value("depolarizing", defaults.single_qubit_depolarizing);
        }
        if (j.contains("readout")) {
            defaults.readout_p01 = j.at("readout").value("p01", defaults.readout_p01);
            defaults.readout_p10 = j.at("readout").value("p10", defaults.readout_p10);
        }
        check_probability(defaults.readout_p01, "readout p01");
        check_probability(defaults.readout_p10, "readout p10");

        NoiseModel model = from_defaults(graph, defaults);
        for (const auto &[edge, spec] : edge_specs) {
            auto pair = spec.at("pair").get<std::vector<int>>();
            bool reversed = pair[0] > pair[1];
            double p2 = spec.value("depolarizing", defaults.two_qubit_depolarizing);
            KrausChannel channel = KrausChannel::depolarizing(2, p2);
            if (spec.contains("pauli_terms")) {
                std::vector<PauliTerm> terms;
                for (const auto &t : spec.at("pauli_terms")) {
                    terms.push_back({t.at("ops").get<std::string>(), t.at("prob").get<double>()});
                }
                KrausChannel pauli = KrausChannel::pauli(2, terms);
                channel = compose(channel, reversed ? swap_qubits(pauli) : pauli);
            }
            if (spec.contains("kraus") && !spec.at("kraus").empty()) {
                std::vector<MatrixXcd> ops;
                for (const auto &m : spec.at("kraus")) {
                    ops.push_back(parse_complex_matrix(m, 4));
                }
                KrausChannel kraus(2, std::move(ops));
                channel = compose(channel, reversed ? swap_qubits(kraus) : kraus);
            }
            model.set_cnot_channel(edge, std::move(channel));
        }
        model.validate();
        double p_noise = j.value("p_noise", 1.0);
        if (p_noise != 1) {
            model = scale_cnot_noise(model, p_noise);
        }
        return model;
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("malformed noise config: ") + ex.what());
    }
}

NoiseModel NoiseModel::load(const std::string &path, const ChipGraph &graph) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open noise config " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument("noise config " + path + ": " + ex.what());
    }
    return from_json(j, graph);
}

void NoiseModel::set_cnot_channel(Edge edge, KrausChannel channel) {
    if (channel.num_qubits() != 2) {
        throw std::invalid_argument("CNOT channels must act on 2 qubits");
    }
    edge = Edge::make(edge.a, edge.b);
    if (edge.a < 0 || edge.b >= num_qubits()) {
        throw std::invalid_argument("CNOT channel edge out of range");
    }
    cnot_[edge] = std::move(channel);
}

void NoiseModel::set_single_qubit_channel(GateKind kind, int qubit, KrausChannel channel) {
    if (channel.num_qubits() != 1) {
        throw std::invalid_argument("single-qubit channels must act on 1 qubit");
    }
    if (kind != GateKind::RX && kind != GateKind::RZ) {
        throw std::invalid_argument("single-qubit channels attach to RX or RZ");
    }
    if (qubit < 0 || qubit >= num_qubits()) {
        throw std::invalid_argument("single-qubit channel index out of range");
    }
    single_[{kind, qubit}] = std::move(channel);
}

void NoiseModel::set_readout(int qubit, Readout readout) {
    check_probability(readout.p01, "readout p01");
    check_probability(readout.p10, "readout p10");
    readout_.at(qubit) = readout;
}

void NoiseModel::set_readout_all(Readout readout) {
    for (int q = 0; q < num_qubits(); q++) {
        set_readout(q, readout);
    }
}

const KrausChannel *NoiseModel::cnot_channel(Edge edge) const {
    auto it = cnot_.find(Edge::make(edge.a, edge.b));
    return it == cnot_.end() ? nullptr : &it->second;
}

const KrausChannel *NoiseModel::single_qubit_channel(GateKind kind, int qubit) const {
    auto it = single_.find({kind, qubit});
    return it == single_.end() ? nullptr : &it->second;
}

const KrausChannel *NoiseModel::channel_for(const Gate &gate) const {
    switch (gate.kind) {
        case GateKind::RX:
        case GateKind::RZ:
            return single_qubit_channel(gate.kind, gate.q0);
        case GateKind::CNOT:
            return cnot_channel(Edge::make(gate.q0, gate.q1));
        case GateKind::RZZ:
            return nullptr;
    }
    return nullptr;
}

const Readout &NoiseModel::readout(int qubit) const {
    return readout_.at(qubit);
}

void NoiseModel::validate(double tol) const {
    if (!(p_noise_ >= 0 && p_noise_ <= 1)) {
        throw std::invalid_argument("p_noise must lie in [0, 1]");
    }
    for (const auto &[edge, channel] : cnot_) {
        if (!validate_cptp(channel, tol)) {
            throw std::invalid_argument(
                "CNOT channel on (" + std::to_string(edge.a) + "," + std::to_string(edge.b) + ") is not CPTP");
        }
    }
    for (const auto &[key, channel] : single_) {
        if (!validate_cptp(channel, tol)) {
            throw std::invalid_argument(
                to_string(key.first) + " channel on qubit " + std::to_string(key.second) + " is not CPTP");
        }
    }
}

NoiseModel default_noise_model(const ChipGraph &graph) {
    return NoiseModel::from_defaults(graph, NoiseDefaults{});
}

NoiseModel scale_cnot_noise(const NoiseModel &model, double p_noise) {
    check_probability(p_noise, "p_noise");
    NoiseModel out = model;
    for (auto &[edge, channel] : out.cnot_) {
        channel = mix_with_identity(channel, p_noise);
    }
    out.p_noise_ = model.p_noise_ * p_noise;
    return out;
}

}  // namespace qsynergy
