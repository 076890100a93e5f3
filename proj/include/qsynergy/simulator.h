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

#ifndef QSYNERGY_SIMULATOR_H
#define QSYNERGY_SIMULATOR_H

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qsynergy/circuits.h"
#include "qsynergy/noise.h"
#include "qsynergy/rng.h"

namespace qsynergy {

using Complex = std::complex<double>;

inline constexpr int kDefaultMaxQubits = 20;
inline constexpr int kMaxDensityQubits = 8;
inline constexpr int kDefaultTrajectories = 512;

/// Pure state over N tensor positions; bit k of an amplitude index is the
/// value of position k. Positions are the section qubits in ascending order.
class StateVector {
   public:
    explicit StateVector(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    size_t dim() const {
        return amps_.size();
    }
    std::span<Complex> amplitudes() {
        return amps_;
    }
    std::span<const Complex> amplitudes() const {
        return amps_;
    }

    void apply_rx(int pos, double theta);
    void apply_rz(int pos, double phi);
    void apply_cnot(int control, int target);
    void apply_rzz(int pos0, int pos1, double phi);
    void apply_matrix(int pos, const Matrix2 &m);
    /// Matrix indexed by 2*x(pos0) + x(pos1).
    void apply_matrix(int pos0, int pos1, const Matrix4 &m);
    void apply_matrix(std::span<const int> positions, const Eigen::MatrixXcd &m);

    double norm_squared() const;
    void scale(double factor);
    std::vector<double> z_expectations() const;

   private:
    int num_qubits_;
    std::vector<Complex> amps_;
};

/// Density matrix stored as a 2N-position vector: entry (i, j) sits at index
/// i + (j << N), so a Kraus operator acts as K on the first N positions and
/// conj(K) on the last N.
class DensityMatrix {
   public:
    explicit DensityMatrix(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    void apply_unitary(std::span<const int> positions, const Eigen::MatrixXcd &u);
    void apply_channel(std::span<const int> positions, const KrausChannel &channel);

    Complex trace() const;
    Eigen::MatrixXcd matrix() const;
    std::vector<double> z_expectations() const;

   private:
    int num_qubits_;
    StateVector vec_;
};

/// Per-qubit <Z_n> in section order and their mean.
struct ExpectationSet {
    std::vector<double> z;
    double m_z = 0;
    /// Standard errors of the sampled estimators; zero for exact methods.
    std::vector<double> z_stderr;
    double m_z_stderr = 0;

    static ExpectationSet from_z(std::vector<double> z);
};

enum class EstimatorKind { Trajectory, Shots };

std::string to_string(EstimatorKind kind);
EstimatorKind parse_estimator(const std::string &text);

struct EstimatorSettings {
    EstimatorKind kind = EstimatorKind::Trajectory;
    int samples = kDefaultTrajectories;  // trajectories or shots
};

/// Noiseless statevector simulation from |0...0>.
ExpectationSet run_exact(const Circuit &circuit, int max_qubits = kDefaultMaxQubits);
StateVector simulate_statevector(const Circuit &circuit, int max_qubits = kDefaultMaxQubits);

/// Monte Carlo wavefunction average over n_traj trajectories of a transpiled
/// circuit. After each gate one Kraus branch of its channel is drawn with
/// probability ||K psi||^2; readout errors are applied to the averaged <Z>.
ExpectationSet run_trajectory(const Circuit &circuit, const NoiseModel &noise, int n_traj, Rng &rng);

/// Exact channel evolution (N <= 8).
ExpectationSet run_density(const Circuit &circuit, const NoiseModel &noise);
DensityMatrix evolve_density(const Circuit &circuit, const NoiseModel &noise);

/// Finite-shot estimate: one trajectory per shot, a sampled bitstring, and
/// independent readout flips per bit.
ExpectationSet sample_shots(const Circuit &circuit, const NoiseModel &noise, int n_shots, Rng &rng);

ExpectationSet estimate_noisy(
    const Circuit &circuit, const NoiseModel &noise, const EstimatorSettings &settings, Rng &rng);

}  // namespace qsynergy

#endif
