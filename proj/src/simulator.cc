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

#include "qsynergy/simulator.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsynergy {

using Eigen::MatrixXcd;

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw std::invalid_argument("StateVector: qubit count out of range");
    }
    amps_.assign(size_t{1} << num_qubits, Complex(0, 0));
    amps_[0] = 1;
}

void StateVector::apply_rx(int pos, double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const size_t step = size_t{1} << pos;
    const size_t n = amps_.size();
    for (size_t base = 0; base < n; base += 2 * step) {
        for (size_t i = base; i < base + step; i++) {
            Complex a = amps_[i];
            Complex b = amps_[i + step];
            // -i s x = (s x.im, -s x.re)
            amps_[i] = Complex(c * a.real() + s * b.imag(), c * a.imag() - s * b.real());
            amps_[i + step] = Complex(c * b.real() + s * a.imag(), c * b.imag() - s * a.real());
        }
    }
}

void StateVector::apply_rz(int pos, double phi) {
    const Complex p0 = std::polar(1.0, -phi / 2);
    const Complex p1 = std::polar(1.0, phi / 2);
    const size_t step = size_t{1} << pos;
    const size_t n = amps_.size();
    for (size_t base = 0; base < n; base += 2 * step) {
        for (size_t i = base; i < base + step; i++) {
            amps_[i] *= p0;
            amps_[i + step] *= p1;
        }
    }
}

void StateVector::apply_cnot(int control, int target) {
    const size_t cbit = size_t{1} << control;
    const size_t tbit = size_t{1} << target;
    const size_t lo = std::min(cbit, tbit);
    const size_t hi = std::max(cbit, tbit);
    const size_t n = amps_.size();
    // Walk the indices with both bits clear, then swap the control-set pair.
    for (size_t a = 0; a < n; a += 2 * hi) {
        for (size_t b = a; b < a + hi; b += 2 * lo) {
            for (size_t i = b; i < b + lo; i++) {
                std::swap(amps_[i | cbit], amps_[i | cbit | tbit]);
            }
        }
    }
}

void StateVector::apply_rzz(int pos0, int pos1, double phi) {
    const Complex even = std::polar(1.0, -phi / 2);
    const Complex odd = std::polar(1.0, phi / 2);
    const size_t n = amps_.size();
    for (size_t i = 0; i < n; i++) {
        bool parity = ((i >> pos0) ^ (i >> pos1)) & 1;
        amps_[i] *= parity ? odd : even;
    }
}

void StateVector::apply_matrix(int pos, const Matrix2 &m) {
    const size_t step = size_t{1} << pos;
    const size_t n = amps_.size();
    for (size_t base = 0; base < n; base += 2 * step) {
        for (size_t i = base; i < base + step; i++) {
            Complex a = amps_[i];
            Complex b = amps_[i + step];
            amps_[i] = m(0, 0) * a + m(0, 1) * b;
            amps_[i + step] = m(1, 0) * a + m(1, 1) * b;
        }
    }
}

void StateVector::apply_matrix(int pos0, int pos1, const Matrix4 &m) {
    if (pos0 == pos1) {
        throw std::invalid_argument("two-qubit matrix on a repeated position");
    }
    const size_t b0 = size_t{1} << pos0;
    const size_t b1 = size_t{1} << pos1;
    const size_t n = amps_.size();
    for (size_t i = 0; i < n; i++) {
        if (i & (b0 | b1)) {
            continue;
        }
        const size_t idx[4] = {i, i | b1, i | b0, i | b0 | b1};
        Complex v[4] = {amps_[idx[0]], amps_[idx[1]], amps_[idx[2]], amps_[idx[3]]};
        for (int r = 0; r < 4; r++) {
            amps_[idx[r]] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
        }
    }
}

void StateVector::apply_matrix(std::span<const int> positions, const MatrixXcd &m) {
    if (positions.size() == 1 && m.rows() == 2) {
        apply_matrix(positions[0], Matrix2(m));
    } else if (positions.size() == 2 && m.rows() == 4) {
        apply_matrix(positions[0], positions[1], Matrix4(m));
    } else {
        throw std::invalid_argument("apply_matrix: unsupported operator size");
    }
}

double StateVector::norm_squared() const {
    double total = 0;
    for (const auto &a : amps_) {
        total += std::norm(a);
    }
    return total;
}

void StateVector::scale(double factor) {
    for (auto &a : amps_) {
        a *= factor;
    }
}

std::vector<double> StateVector::z_expectations() const {
    std::vector<double> z(num_qubits_, 0.0);
    const size_t n = amps_.size();
    for (size_t i = 0; i < n; i++) {
        double p = std::norm(amps_[i]);
        for (int k = 0; k < num_qubits_; k++) {
            z[k] += ((i >> k) & 1) ? -p : p;
        }
    }
    return z;
}

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits), vec_(2 * num_qubits) {
}

void DensityMatrix::apply_unitary(std::span<const int> positions, const MatrixXcd &u) {
    std::vector<int> bra(positions.begin(), positions.end());
    for (auto &p : bra) {
        p += num_qubits_;
    }
    vec_.apply_matrix(positions, u);
    vec_.apply_matrix(bra, u.conjugate());
}

void DensityMatrix::apply_channel(std::span<const int> positions, const KrausChannel &channel) {
    if (static_cast<int>(positions.size()) != channel.num_qubits()) {
        throw std::invalid_argument("apply_channel: position count does not match the channel");
    }
    if (channel.ops().size() == 1) {
        apply_unitary(positions, channel.ops()[0]);
        return;
    }
    std::vector<Complex> acc(vec_.dim(), Complex(0, 0));
    const DensityMatrix original = *this;
    for (const auto &k : channel.ops()) {
        DensityMatrix branch = original;
        branch.apply_unitary(positions, k);
        auto src = branch.vec_.amplitudes();
        for (size_t i = 0; i < acc.size(); i++) {
            acc[i] += src[i];
        }
    }
    std::copy(acc.begin(), acc.end(), vec_.amplitudes().begin());
}

Complex DensityMatrix::trace() const {
    Complex t = 0;
    const size_t d = size_t{1} << num_qubits_;
    auto a = vec_.amplitudes();
    for (size_t i = 0; i < d; i++) {
        t += a[i + (i << num_qubits_)];
    }
    return t;
}

MatrixXcd DensityMatrix::matrix() const {
    const size_t d = size_t{1} << num_qubits_;
    MatrixXcd m(d, d);
    auto a = vec_.amplitudes();
    for (size_t j = 0; j < d; j++) {
        for (size_t i = 0; i < d; i++) {
            m(i, j) = a[i + (j << num_qubits_)];
        }
    }
    return m;
}

std::vector<double> DensityMatrix::z_expectations() const {
    const size_t d = size_t{1} << num_qubits_;
    auto a = vec_.amplitudes();
    std::vector<double> z(num_qubits_, 0.0);
    for (size_t i = 0; i < d; i++) {
        double p = a[i + (i << num_qubits_)].real();
        for (int k = 0; k < num_qubits_; k++) {
            z[k] += ((i >> k) & 1) ? -p : p;
        }
    }
    return z;
}

ExpectationSet ExpectationSet::from_z(std::vector<double> z) {
    ExpectationSet out;
    double sum = 0;
    for (auto &v : z) {
        v = std::clamp(v, -1.0, 1.0);
        sum += v;
    }
    out.m_z = z.empty() ? 0 : sum / static_cast<double>(z.size());
    out.z_stderr.assign(z.size(), 0.0);
    out.z = std::move(z);
    return out;
}

std::string to_string(EstimatorKind kind) {
    return kind == EstimatorKind::Trajectory ? "trajectory" : "shots";
}

EstimatorKind parse_estimator(const std::string &text) {
    if (text == "trajectory") {
        return EstimatorKind::Trajectory;
    }
    if (text == "shots") {
        return EstimatorKind::Shots;
    }
    throw std::invalid_argument("unknown estimator '" + text + "' (expected trajectory or shots)");
}

namespace {

/// Sampling plan for one channel. Branches whose K^dagger K is a multiple of
/// the identity have state-independent probabilities and are stored as
/// weighted unitaries; anything else falls back to norm evaluation.
struct ChannelPlan {
    const KrausChannel *channel = nullptr;
    bool mixed_unitary = true;
    std::vector<double> cumulative;
    std::vector<MatrixXcd> unitaries;
    std::vector<char> trivial;
};

ChannelPlan make_plan(const KrausChannel &channel) {
    constexpr double tol = 1e-12;
    ChannelPlan plan;
    plan.channel = &channel;
    double total = 0;
    for (const auto &k : channel.ops()) {
        MatrixXcd kk = k.adjoint() * k;
        double w = kk(0, 0).real();
        MatrixXcd residual = kk - w * MatrixXcd::Identity(kk.rows(), kk.cols());
        if (w <= 0 || residual.cwiseAbs().maxCoeff() > tol) {
            plan.mixed_unitary = false;
            break;
        }
        MatrixXcd u = k / std::sqrt(w);
        MatrixXcd off = u - u(0, 0) * MatrixXcd::Identity(u.rows(), u.cols());
        total += w;
        plan.cumulative.push_back(total);
        plan.trivial.push_back(off.cwiseAbs().maxCoeff() <= tol);
        plan.unitaries.push_back(std::move(u));
    }
    if (plan.mixed_unitary) {
        for (auto &c : plan.cumulative) {
            c /= total;
        }
    } else {
        plan.cumulative.clear();
        plan.unitaries.clear();
        plan.trivial.clear();
    }
    return plan;
}

struct Op {
    GateKind kind;
    int p0;
    int p1;
    double angle;
    int plan;  // -1 when noiseless
};

struct Program {
    int num_qubits = 0;
    std::vector<Op> ops;
    std::vector<ChannelPlan> plans;
};

Program compile(const Circuit &circuit, const NoiseModel *noise) {
    Program prog;
    prog.num_qubits = circuit.num_qubits();
    std::vector<const KrausChannel *> seen;
    for (const auto &g : circuit.gates) {
        Op op{g.kind, circuit.section.position_of(g.q0), -1, g.angle, -1};
        if (op.p0 < 0) {
            throw std::invalid_argument("gate acts on a qubit outside the circuit section");
        }
        if (g.arity() == 2) {
            op.p1 = circuit.section.position_of(g.q1);
            if (op.p1 < 0 || op.p1 == op.p0) {
                throw std::invalid_argument("two-qubit gate has an invalid target");
            }
        }
        if (noise != nullptr) {
            const KrausChannel *ch = noise->channel_for(g);
            if (ch != nullptr) {
                if (!validate_cptp(*ch)) {
                    throw std::invalid_argument("noise channel attached to " + to_string(g.kind) + " is not CPTP");
                }
                auto it = std::find(seen.begin(), seen.end(), ch);
                if (it == seen.end()) {
                    seen.push_back(ch);
                    prog.plans.push_back(make_plan(*ch));
                    op.plan = static_cast<int>(prog.plans.size()) - 1;
                } else {
                    op.plan = static_cast<int>(it - seen.begin());
                }
            }
        }
        prog.ops.push_back(op);
    }
    return prog;
}

void apply_gate(StateVector &psi, const Op &op) {
    switch (op.kind) {
        case GateKind::RX:
            psi.apply_rx(op.p0, op.angle);
            break;
        case GateKind::RZ:
            psi.apply_rz(op.p0, op.angle);
            break;
        case GateKind::CNOT:
            psi.apply_cnot(op.p0, op.p1);
            break;
        case GateKind::RZZ:
            psi.apply_rzz(op.p0, op.p1, op.angle);
            break;
    }
}

void apply_branch(StateVector &psi, const Op &op, const MatrixXcd &k) {
    if (op.p1 < 0) {
        psi.apply_matrix(op.p0, Matrix2(k));
    } else {
        psi.apply_matrix(op.p0, op.p1, Matrix4(k));
    }
}

void sample_channel(StateVector &psi, const Op &op, const ChannelPlan &plan, Rng &rng) {
    double r = uniform01(rng);
    if (plan.mixed_unitary) {
        size_t k = std::upper_bound(plan.cumulative.begin(), plan.cumulative.end(), r) - plan.cumulative.begin();
        k = std::min(k, plan.cumulative.size() - 1);
        if (!plan.trivial[k]) {
            apply_branch(psi, op, plan.unitaries[k]);
        }
        return;
    }
    const auto &ops = plan.channel->ops();
    double acc = 0;
    StateVector chosen = psi;
    double chosen_p = 0;
    for (size_t k = 0; k < ops.size(); k++) {
        StateVector branch = psi;
        apply_branch(branch, op, ops[k]);
        double p = branch.norm_squared();
        acc += p;
        if (p > 0) {
            chosen = std::move(branch);
            chosen_p = p;
        }
        if (r < acc && chosen_p > 0) {
            break;
        }
    }
    chosen.scale(1 / std::sqrt(chosen_p));
    psi = std::move(chosen);
}

void reset(StateVector &psi) {
    auto a = psi.amplitudes();
    std::fill(a.begin(), a.end(), Complex(0, 0));
    a[0] = 1;
}

void run_one_trajectory(StateVector &psi, const Program &prog, Rng &rng) {
    reset(psi);
    for (const auto &op : prog.ops) {
        apply_gate(psi, op);
        if (op.plan >= 0) {
            sample_channel(psi, op, prog.plans[op.plan], rng);
        }
    }
}

/// Runs trajectories of one program. When every channel is a mixed unitary
/// the branch choices do not depend on the state, so they are drawn first and
/// each trajectory resumes from a cached noiseless state just before its first
/// non-identity branch. Random draws are consumed in the same order either way.
class TrajectoryRunner {
   public:
    explicit TrajectoryRunner(const Program &prog) : prog_(prog), psi_(prog.num_qubits) {
        presample_ = std::all_of(prog.plans.begin(), prog.plans.end(), [](const ChannelPlan &p) {
            return p.mixed_unitary;
        });
        if (!presample_) {
            return;
        }
        constexpr size_t kCacheBytes = size_t{64} << 20;
        const size_t state_bytes = psi_.dim() * sizeof(Complex);
        const size_t n_ops = prog.ops.size();
        stride_ = std::max<size_t>(1, (n_ops + 1) * state_bytes / kCacheBytes + 1);
        StateVector psi(prog.num_qubits);
        for (size_t k = 0; k < n_ops; k++) {
            if (k % stride_ == 0) {
                checkpoints_.push_back(psi);
            }
            apply_gate(psi, prog.ops[k]);
        }
        noiseless_ = std::move(psi);
    }

    const StateVector &run(Rng &rng) {
        if (!presample_) {
            run_one_trajectory(psi_, prog_, rng);
            return psi_;
        }
        events_.clear();
        for (size_t k = 0; k < prog_.ops.size(); k++) {
            const Op &op = prog_.ops[k];
            if (op.plan < 0) {
                continue;
            }
            const ChannelPlan &plan = prog_.plans[op.plan];
            double r = uniform01(rng);
            size_t b = std::upper_bound(plan.cumulative.begin(), plan.cumulative.end(), r) - plan.cumulative.begin();
            b = std::min(b, plan.cumulative.size() - 1);
            if (!plan.trivial[b]) {
                events_.emplace_back(k, b);
            }
        }
        if (events_.empty()) {
            return noiseless_;
        }
        const size_t first = events_[0].first;
        const size_t start = first / stride_ * stride_;
        psi_ = checkpoints_[start / stride_];
        size_t next = 0;
        for (size_t k = start; k < prog_.ops.size(); k++) {
            const Op &op = prog_.ops[k];
            apply_gate(psi_, op);
            if (next < events_.size() && events_[next].first == k) {
                apply_branch(psi_, op, prog_.plans[op.plan].unitaries[events_[next].second]);
                next++;
            }
        }
        return psi_;
    }

   private:
    const Program &prog_;
    StateVector psi_;
    bool presample_ = false;
    size_t stride_ = 1;
    std::vector<StateVector> checkpoints_;
    StateVector noiseless_{1};
    std::vector<std::pair<size_t, size_t>> events_;
};

std::vector<Readout> section_readout(const Circuit &circuit, const NoiseModel &noise) {
    std::vector<Readout> out;
    for (int q : circuit.section.qubits) {
        out.push_back(q < noise.num_qubits() ? noise.readout(q) : Readout{});
    }
    return out;
}

void check_noise_target(const Circuit &circuit, const NoiseModel &noise) {
    if (!circuit.transpiled) {
        throw std::invalid_argument("noisy simulation needs a transpiled circuit");
    }
    if (!circuit.section.qubits.empty() && circuit.section.qubits.back() >= noise.num_qubits()) {
        throw std::invalid_argument("noise model does not cover the circuit's qubits");
    }
}

/// Accumulates per-sample <Z_n> vectors into means and standard errors.
class Accumulator {
   public:
    explicit Accumulator(std::vector<Readout> readout)
        : readout_(std::move(readout)), sum_(readout_.size(), 0.0), sumsq_(readout_.size(), 0.0) {
    }

    void add(std::span<const double> z) {
        double m = 0;
        for (size_t k = 0; k < z.size(); k++) {
            double v = readout_[k].apply(z[k]);
            sum_[k] += v;
            sumsq_[k] += v * v;
            m += v;
        }
        m /= static_cast<double>(z.size());
        msum_ += m;
        msumsq_ += m * m;
        count_++;
    }

    ExpectationSet finish() const {
        const double n = static_cast<double>(count_);
        std::vector<double> z(sum_.size());
        for (size_t k = 0; k < z.size(); k++) {
            z[k] = sum_[k] / n;
        }
        ExpectationSet out = ExpectationSet::from_z(std::move(z));
        for (size_t k = 0; k < out.z.size(); k++) {
            out.z_stderr[k] = stderr_of(sum_[k], sumsq_[k]);
        }
        out.m_z_stderr = stderr_of(msum_, msumsq_);
        return out;
    }

   private:
    double stderr_of(double sum, double sumsq) const {
        if (count_ < 2) {
            return 0;
        }
        const double n = static_cast<double>(count_);
        double mean = sum / n;
        double var = std::max(0.0, (sumsq / n - mean * mean) * n / (n - 1));
        return std::sqrt(var / n);
    }

    std::vector<Readout> readout_;
    std::vector<double> sum_;
    std::vector<double> sumsq_;
    double msum_ = 0;
    double msumsq_ = 0;
    size_t count_ = 0;
};

}  // namespace

StateVector simulate_statevector(const Circuit &circuit, int max_qubits) {
    if (circuit.num_qubits() > max_qubits) {
        throw std::invalid_argument(
            "circuit has " + std::to_string(circuit.num_qubits()) + " qubits, above the statevector cap of " +
            std::to_string(max_qubits));
    }
    Program prog = compile(circuit, nullptr);
    StateVector psi(prog.num_qubits);
    for (const auto &op : prog.ops) {
        apply_gate(psi, op);
    }
    return psi;
}

ExpectationSet run_exact(const Circuit &circuit, int max_qubits) {
    return ExpectationSet::from_z(simulate_statevector(circuit, max_qubits).z_expectations());
}

ExpectationSet run_trajectory(const Circuit &circuit, const NoiseModel &noise, int n_traj, Rng &rng) {
    if (n_traj < 1) {
        throw std::invalid_argument("run_trajectory: n_traj must be at least 1");
    }
    check_noise_target(circuit, noise);
    Program prog = compile(circuit, &noise);
    TrajectoryRunner runner(prog);
    Accumulator acc(section_readout(circuit, noise));
    for (int t = 0; t < n_traj; t++) {
        acc.add(runner.run(rng).z_expectations());
    }
    return acc.finish();
}

DensityMatrix evolve_density(const Circuit &circuit, const NoiseModel &noise) {
    if (circuit.num_qubits() > kMaxDensityQubits) {
        throw std::invalid_argument(
            "density-matrix simulation is limited to " + std::to_string(kMaxDensityQubits) + " qubits");
    }
    if (!circuit.section.qubits.empty() && circuit.section.qubits.back() >= noise.num_qubits()) {
        throw std::invalid_argument("noise model does not cover the circuit's qubits");
    }
    Program prog = compile(circuit, &noise);
    DensityMatrix rho(prog.num_qubits);
    for (size_t k = 0; k < prog.ops.size(); k++) {
        const Op &op = prog.ops[k];
        const Gate &g = circuit.gates[k];
        std::vector<int> pos = {op.p0};
        if (op.p1 >= 0) {
            pos.push_back(op.p1);
        }
        rho.apply_unitary(pos, gate_matrix(g));
        if (op.plan >= 0) {
            rho.apply_channel(pos, *prog.plans[op.plan].channel);
        }
    }
    return rho;
}

ExpectationSet run_density(const Circuit &circuit, const NoiseModel &noise) {
    DensityMatrix rho = evolve_density(circuit, noise);
    std::vector<double> z = rho.z_expectations();
    auto readout = section_readout(circuit, noise);
    for (size_t k = 0; k < z.size(); k++) {
        z[k] = readout[k].apply(z[k]);
    }
    return ExpectationSet::from_z(std::move(z));
}

ExpectationSet sample_shots(const Circuit &circuit, const NoiseModel &noise, int n_shots, Rng &rng) {
    if (n_shots < 1) {
        throw std::invalid_argument("sample_shots: n_shots must be at least 1");
    }
    check_noise_target(circuit, noise);
    Program prog = compile(circuit, &noise);
    TrajectoryRunner runner(prog);
    auto readout = section_readout(circuit, noise);
    // Readout is applied per bit below, so the accumulator sees ideal maps.
    Accumulator acc(std::vector<Readout>(readout.size()));
    std::vector<double> outcome(prog.num_qubits);
    for (int s = 0; s < n_shots; s++) {
        const StateVector &psi = runner.run(rng);
        auto amps = psi.amplitudes();
        double r = uniform01(rng) * psi.norm_squared();
        size_t index = amps.size() - 1;
        double cum = 0;
        for (size_t i = 0; i < amps.size(); i++) {
            cum += std::norm(amps[i]);
            if (r < cum) {
                index = i;
                break;
            }
        }
        for (int k = 0; k < prog.num_qubits; k++) {
            bool bit = (index >> k) & 1;
            double flip = bit ? readout[k].p10 : readout[k].p01;
            if (flip > 0 && uniform01(rng) < flip) {
                bit = !bit;
            }
            outcome[k] = bit ? -1.0 : 1.0;
        }
        acc.add(outcome);
    }
    return acc.finish();
}

ExpectationSet estimate_noisy(
    const Circuit &circuit, const NoiseModel &noise, const EstimatorSettings &settings, Rng &rng) {
    switch (settings.kind) {
        case EstimatorKind::Trajectory:
            return run_trajectory(circuit, noise, settings.samples, rng);
        case EstimatorKind::Shots:
            return sample_shots(circuit, noise, settings.samples, rng);
    }
    throw std::logic_error("estimate_noisy: unknown estimator");
}

}  // namespace qsynergy
