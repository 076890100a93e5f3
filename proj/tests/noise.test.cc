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

#include <gtest/gtest.h>

#include <fstream>

#include "qsynergy/errors.h"
#include "qsynergy/simulator.h"
#include "test_util.h"

using namespace qsynergy;
using namespace qsynergy::testing;

namespace {

MatrixXcd pauli(char c) {
    MatrixXcd m(2, 2);
    switch (c) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m = MatrixXcd::Identity(2, 2);
    }
    return m;
}

MatrixXcd kron(const MatrixXcd &a, const MatrixXcd &b) {
    MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double map_distance(const KrausChannel &a, const KrausChannel &b, Rng &rng, int trials = 10) {
    double worst = 0;
    for (int t = 0; t < trials; t++) {
        MatrixXcd rho = random_density(a.dim(), rng);
        worst = std::max(worst, (a.apply(rho) - b.apply(rho)).cwiseAbs().maxCoeff());
    }
    return worst;
}

// (1 - p) rho + p I / d, written out directly.
MatrixXcd depolarize(const MatrixXcd &rho, double p) {
    const auto d = rho.rows();
    return (1 - p) * rho + p * MatrixXcd::Identity(d, d) / static_cast<double>(d);
}

}  // namespace

TEST(noise, cptp_check) {
    ASSERT_TRUE(validate_cptp(KrausChannel::identity(1)));
    ASSERT_TRUE(validate_cptp(KrausChannel::identity(2)));
    MatrixXcd id = MatrixXcd::Identity(2, 2);
    ASSERT_FALSE(validate_cptp(KrausChannel(1, {id, id})));
    ASSERT_THROW(KrausChannel(1, {}), std::invalid_argument);
    ASSERT_THROW(KrausChannel(2, {id}), std::invalid_argument);
}

TEST(noise, depolarizing_action) {
    Rng rng(1);
    for (int nq : {1, 2}) {
        for (double p : {0.0, 0.02, 0.5, 1.0}) {
            KrausChannel ch = KrausChannel::depolarizing(nq, p);
            ASSERT_TRUE(validate_cptp(ch));
            for (int t = 0; t < 5; t++) {
                MatrixXcd rho = random_density(1 << nq, rng);
                ASSERT_LT((ch.apply(rho) - depolarize(rho, p)).cwiseAbs().maxCoeff(), 1e-12);
            }
        }
    }
    ASSERT_THROW(KrausChannel::depolarizing(1, 1.5), std::invalid_argument);
}

TEST(noise, pauli_channel_action) {
    Rng rng(2);
    KrausChannel ch = KrausChannel::pauli(2, {{"XZ", 0.1}, {"YI", 0.05}});
    ASSERT_TRUE(validate_cptp(ch));
    for (int t = 0; t < 5; t++) {
        MatrixXcd rho = random_density(4, rng);
        MatrixXcd xz = kron(pauli('X'), pauli('Z'));
        MatrixXcd yi = kron(pauli('Y'), pauli('I'));
        MatrixXcd expected = 0.85 * rho + 0.1 * xz * rho * xz.adjoint() + 0.05 * yi * rho * yi.adjoint();
        ASSERT_LT((ch.apply(rho) - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
    ASSERT_THROW(KrausChannel::pauli(2, {{"XQ", 0.1}}), std::invalid_argument);
    ASSERT_THROW(KrausChannel::pauli(2, {{"X", 0.1}}), std::invalid_argument);
    ASSERT_THROW(KrausChannel::pauli(1, {{"X", 0.7}, {"Z", 0.7}}), std::invalid_argument);
}

TEST(noise, compose_applies_first_then_second) {
    Rng rng(3);
    KrausChannel a = KrausChannel::pauli(1, {{"X", 0.2}});
    Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(2, 2);
    Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
    k0(0, 0) = 1;
    k0(1, 1) = std::sqrt(0.7);
    k1(0, 1) = std::sqrt(0.3);
    KrausChannel b(1, {k0, k1});
    KrausChannel ab = compose(a, b);
    for (int t = 0; t < 5; t++) {
        MatrixXcd rho = random_density(2, rng);
        ASSERT_LT((ab.apply(rho) - b.apply(a.apply(rho))).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(noise, swap_qubits_reverses_pauli_order) {
    Rng rng(4);
    KrausChannel xz = KrausChannel::pauli(2, {{"XZ", 0.3}});
    KrausChannel zx = KrausChannel::pauli(2, {{"ZX", 0.3}});
    ASSERT_LT(map_distance(swap_qubits(xz), zx, rng), 1e-12);
}

TEST(noise, default_model_structure) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = default_noise_model(g);
    ASSERT_EQ(m.cnot_channels().size(), 15u);
    for (const auto &[edge, ch] : m.cnot_channels()) {
        ASSERT_TRUE(validate_cptp(ch)) << edge.a << "-" << edge.b;
    }
    for (const auto &[key, ch] : m.single_qubit_channels()) {
        ASSERT_TRUE(validate_cptp(ch));
    }
    ASSERT_EQ(m.p_noise(), 1.0);
    for (int q = 0; q < 16; q++) {
        ASSERT_EQ(m.readout(q).p01, 2e-2);
        ASSERT_EQ(m.readout(q).p10, 2e-2);
    }
    Rng rng(5);
    // Plain edges are two-qubit depolarizing at 1e-2.
    ASSERT_LT(map_distance(*m.cnot_channel(Edge{0, 1}), KrausChannel::depolarizing(2, 1e-2), rng), 1e-12);
    // Single-qubit gates carry depolarizing 3e-4.
    const KrausChannel *rx = m.single_qubit_channel(GateKind::RX, 3);
    const KrausChannel *rz = m.single_qubit_channel(GateKind::RZ, 3);
    ASSERT_NE(rx, nullptr);
    ASSERT_NE(rz, nullptr);
    ASSERT_LT(map_distance(*rx, KrausChannel::depolarizing(1, 3e-4), rng), 1e-12);
    ASSERT_EQ(m.channel_for(Gate{GateKind::RZZ, 0, 1, 0.1}), nullptr);
}

TEST(noise, default_model_has_xz_term_on_12_15) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseDefaults no_depol;
    no_depol.two_qubit_depolarizing = 0;
    NoiseModel bare = NoiseModel::from_defaults(g, no_depol);
    const KrausChannel *ch = bare.cnot_channel(Edge{12, 15});
    ASSERT_NE(ch, nullptr);
    // The channel must carry X (on 12) tensor Z (on 15) with weight 2.7e-4.
    MatrixXcd xz = kron(pauli('X'), pauli('Z'));
    double weight = 0;
    for (const auto &k : ch->ops()) {
        std::complex<double> overlap = (xz.adjoint() * k).trace() / 4.0;
        weight += std::norm(overlap);
    }
    ASSERT_NEAR(weight, 2.7e-4, 1e-15);

    NoiseModel full = default_noise_model(g);
    KrausChannel expected =
        compose(KrausChannel::depolarizing(2, 1e-2), KrausChannel::pauli(2, {{"XZ", 2.7e-4}}));
    Rng rng(6);
    ASSERT_LT(map_distance(*full.cnot_channel(Edge{12, 15}), expected, rng), 1e-12);
}

TEST(noise, scale_one_leaves_channels_unchanged) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = default_noise_model(g);
    NoiseModel s = scale_cnot_noise(m, 1.0);
    for (const auto &[edge, ch] : m.cnot_channels()) {
        const auto &a = ch.ops();
        const auto &b = s.cnot_channel(edge)->ops();
        ASSERT_EQ(a.size(), b.size());
        for (size_t k = 0; k < a.size(); k++) {
            ASSERT_LT((a[k] - b[k]).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(noise, scale_zero_turns_cnot_noise_off_but_keeps_readout) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel s = scale_cnot_noise(default_noise_model(g), 0.0);
    Rng rng(7);
    for (const auto &[edge, ch] : s.cnot_channels()) {
        for (int t = 0; t < 3; t++) {
            MatrixXcd rho = random_density(4, rng);
            ASSERT_LT((ch.apply(rho) - rho).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
    ASSERT_EQ(s.readout(0).p01, 2e-2);
    ASSERT_NE(s.single_qubit_channel(GateKind::RX, 0), nullptr);
    ASSERT_EQ(s.p_noise(), 0.0);
}

TEST(noise, scale_quarter_of_depolarizing) {
    Rng rng(8);
    KrausChannel scaled = mix_with_identity(KrausChannel::depolarizing(2, 0.02), 0.25);
    ASSERT_TRUE(validate_cptp(scaled));
    ASSERT_LT(map_distance(scaled, KrausChannel::depolarizing(2, 0.005), rng), 1e-12);
}

TEST(noise, scaling_interpolates_linearly) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = default_noise_model(g);
    Rng rng(9);
    for (double p : {0.0, 0.25, 0.5, 1.0}) {
        NoiseModel s = scale_cnot_noise(m, p);
        for (const auto &[edge, ch] : m.cnot_channels()) {
            MatrixXcd rho = random_density(4, rng);
            MatrixXcd expected = (1 - p) * rho + p * ch.apply(rho);
            ASSERT_LT((s.cnot_channel(edge)->apply(rho) - expected).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(noise, scaling_composes_multiplicatively) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = default_noise_model(g);
    NoiseModel twice = scale_cnot_noise(scale_cnot_noise(m, 0.5), 0.3);
    NoiseModel once = scale_cnot_noise(m, 0.15);
    ASSERT_NEAR(twice.p_noise(), 0.15, 1e-15);
    Rng rng(10);
    for (const auto &[edge, ch] : once.cnot_channels()) {
        ASSERT_LT(map_distance(*twice.cnot_channel(edge), ch, rng, 3), 1e-12);
    }
}

TEST(noise, scaling_rejects_out_of_range) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = default_noise_model(g);
    ASSERT_THROW(scale_cnot_noise(m, -0.1), std::invalid_argument);
    ASSERT_THROW(scale_cnot_noise(m, 1.1), std::invalid_argument);
}

TEST(noise, noisy_error_grows_with_p_noise) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = default_noise_model(g);
    std::vector<NoiseModel> models = {scale_cnot_noise(m, 0.0), scale_cnot_noise(m, 0.5), m};
    std::vector<double> err(3, 0.0);
    Rng rng(11);
    for (int k = 0; k < 50; k++) {
        Circuit c = transpile(build_circuit(sample_section(g, 4, rng), 8, Config::A, rng));
        double exact = run_exact(c).m_z;
        for (int j = 0; j < 3; j++) {
            err[j] += std::abs(run_density(c, models[j]).m_z - exact) / 50;
        }
    }
    ASSERT_LE(err[0], err[1]);
    ASSERT_LE(err[1], err[2]);
}

TEST(noise, readout_map) {
    Readout r{0.02, 0.05};
    ASSERT_NEAR(r.apply(1.0), 1 - 0.02 * 2, 1e-15);
    ASSERT_NEAR(r.apply(-1.0), -1 + 0.05 * 2, 1e-15);
    ASSERT_NEAR(r.scale(), 0.93, 1e-15);
}

TEST(noise, json_config) {
    ChipGraph g = ChipGraph::guadalupe();
    auto j = nlohmann::json::parse(R"({
        "p_noise": 0.5,
        "two_qubit": {
            "default_depolarizing": 0.03,
            "edges": [
                {"pair": [15, 12], "pauli_terms": [{"ops": "XZ", "prob": 0.01}]},
                {"pair": [0, 1], "depolarizing": 0.0,
                 "kraus": [[[[1,0],[0,0],[0,0],[0,0]], [[0,0],[1,0],[0,0],[0,0]], [[0,0],[0,0],[0,0],[1,0]], [[0,0],[0,0],[1,0],[0,0]]]]}
            ]
        },
        "single_qubit": {"depolarizing": 0.001},
        "readout": {"p01": 0.01, "p10": 0.03}
    })");
    NoiseModel m = NoiseModel::from_json(j, g);
    ASSERT_EQ(m.p_noise(), 0.5);
    ASSERT_EQ(m.readout(5).p01, 0.01);
    ASSERT_EQ(m.readout(5).p10, 0.03);
    Rng rng(12);
    // Pair given as (15, 12): "XZ" means X on 15 and Z on 12.
    KrausChannel e1215 = compose(KrausChannel::depolarizing(2, 0.03), KrausChannel::pauli(2, {{"ZX", 0.01}}));
    ASSERT_LT(map_distance(*m.cnot_channel(Edge{12, 15}), mix_with_identity(e1215, 0.5), rng), 1e-12);
    // A unitary Kraus map (a CNOT-like permutation) mixed at p_noise 0.5.
    MatrixXcd perm = MatrixXcd::Zero(4, 4);
    perm(0, 0) = perm(1, 1) = perm(3, 2) = perm(2, 3) = 1;
    MatrixXcd rho = random_density(4, rng);
    MatrixXcd expected = 0.5 * rho + 0.5 * perm * rho * perm.adjoint();
    ASSERT_LT((m.cnot_channel(Edge{0, 1})->apply(rho) - expected).cwiseAbs().maxCoeff(), 1e-12);
    // Other edges use the default depolarizing value.
    ASSERT_LT(
        map_distance(*m.cnot_channel(Edge{2, 3}), mix_with_identity(KrausChannel::depolarizing(2, 0.03), 0.5), rng),
        1e-12);
    ASSERT_LT(map_distance(*m.single_qubit_channel(GateKind::RX, 0), KrausChannel::depolarizing(1, 0.001), rng), 1e-12);
}

TEST(noise, json_errors) {
    ChipGraph g = ChipGraph::guadalupe();
    ASSERT_THROW(
        NoiseModel::from_json(nlohmann::json::parse(R"({"two_qubit": {"edges": [{"pair": [1, 4]}]}})"), g),
        std::invalid_argument);
    ASSERT_THROW(
        NoiseModel::from_json(
            nlohmann::json::parse(R"({"two_qubit": {"edges": [{"pair": [0, 1], "kraus": [[[[2,0]]]]}]}})"), g),
        std::invalid_argument);
    ASSERT_THROW(NoiseModel::from_json(nlohmann::json::parse(R"({"readout": {"p01": 2}})"), g), std::invalid_argument);
    ASSERT_THROW(NoiseModel::from_json(nlohmann::json::parse(R"({"p_noise": 3})"), g), std::invalid_argument);
    ASSERT_THROW(NoiseModel::load("/nonexistent/noise.json", g), IoError);
}

TEST(noise, validate_reports_non_cptp) {
    ChipGraph g = ChipGraph::guadalupe();
    NoiseModel m = NoiseModel::ideal(g);
    MatrixXcd id = MatrixXcd::Identity(4, 4);
    m.set_cnot_channel(Edge{0, 1}, KrausChannel(2, {id, id}));
    ASSERT_THROW(m.validate(), std::invalid_argument);
}
