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

#include "qsynergy/dataset.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qsynergy/errors.h"

namespace qsynergy {

bool CircuitRecord::operator==(const CircuitRecord &o) const {
    return id == o.id && config == o.config && n == o.n && p_layers == o.p_layers && q == o.q && theta == o.theta &&
           z_noisy == o.z_noisy && m_z_exact == o.m_z_exact && m_z_noisy == o.m_z_noisy && p_noise == o.p_noise &&
           estimator.kind == o.estimator.kind && estimator.samples == o.estimator.samples && seed == o.seed;
}

void validate_record(const CircuitRecord &r) {
    auto fail = [&](const std::string &what) {
        throw std::invalid_argument("record " + std::to_string(r.id) + ": " + what);
    };
    if (r.n < 2 || static_cast<int>(r.q.size()) != r.n) {
        fail("len(q) must equal n >= 2");
    }
    if (static_cast<int>(r.z_noisy.size()) != r.n) {
        fail("len(z_noisy) must equal n");
    }
    if (r.p_layers < 1) {
        fail("p_layers must be positive");
    }
    size_t expected_theta = r.config == Config::A ? static_cast<size_t>(r.n) : static_cast<size_t>(r.p_layers);
    if (r.theta.size() != expected_theta) {
        fail("theta has the wrong length for its configuration");
    }
    for (size_t k = 1; k < r.q.size(); k++) {
        if (r.q[k] <= r.q[k - 1]) {
            fail("q must be strictly ascending");
        }
    }
    for (double t : r.theta) {
        if (!(t >= 0 && t <= kMaxTheta)) {
            fail("theta outside [0, pi/2]");
        }
    }
    double sum = 0;
    for (double z : r.z_noisy) {
        if (!(std::abs(z) <= 1)) {
            fail("|z_noisy| exceeds 1");
        }
        sum += z;
    }
    if (std::abs(sum / r.n - r.m_z_noisy) > 1e-10) {
        fail("m_z_noisy differs from mean(z_noisy)");
    }
    if (!(std::abs(r.m_z_exact) <= 1)) {
        fail("|m_z_exact| exceeds 1");
    }
    if (!(r.p_noise >= 0 && r.p_noise <= 1)) {
        fail("p_noise outside [0, 1]");
    }
}

nlohmann::json record_to_json(const CircuitRecord &r) {
    nlohmann::json est = {{"kind", to_string(r.estimator.kind)}};
    est[r.estimator.kind == EstimatorKind::Trajectory ? "n_traj" : "n_shots"] = r.estimator.samples;
    return {
        {"id", r.id},
        {"config", to_string(r.config)},
        {"n", r.n},
        {"p_layers", r.p_layers},
        {"q", r.q},
        {"theta", r.theta},
        {"z_noisy", r.z_noisy},
        {"m_z_exact", r.m_z_exact},
        {"m_z_noisy", r.m_z_noisy},
        {"p_noise", r.p_noise},
        {"estimator", est},
        {"seed", r.seed},
    };
}

CircuitRecord record_from_json(const nlohmann::json &j) {
    CircuitRecord r;
    try {
        r.id = j.at("id").get<int64_t>();
        r.config = parse_config(j.at("config").get<std::string>());
        r.n = j.at("n").get<int>();
        r.p_layers = j.at("p_layers").get<int>();
        r.q = j.at("q").get<std::vector<int>>();
        r.theta = j.at("theta").get<std::vector<double>>();
        r.z_noisy = j.at("z_noisy").get<std::vector<double>>();
        r.m_z_exact = j.at("m_z_exact").get<double>();
        r.m_z_noisy = j.at("m_z_noisy").get<double>();
        r.p_noise = j.at("p_noise").get<double>();
        const auto &est = j.at("estimator");
        r.estimator.kind = parse_estimator(est.at("kind").get<std::string>());
        r.estimator.samples =
            est.at(r.estimator.kind == EstimatorKind::Trajectory ? "n_traj" : "n_shots").get<int>();
        r.seed = j.at("seed").get<uint64_t>();
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("malformed record: ") + ex.what());
    }
    validate_record(r);
    return r;
}

Circuit record_circuit(const CircuitRecord &record, const ChipGraph &graph) {
    Circuit c = make_circuit(make_section(graph, record.q), record.p_layers, record.config, record.theta);
    c.seed = record.seed;
    return c;
}

CircuitRecord simulate_record(
    const Circuit &logical, const NoiseModel &noise, const EstimatorSettings &estimator, Rng &rng) {
    CircuitRecord r;
    r.config = logical.config;
    r.n = logical.num_qubits();
    r.p_layers = logical.p_layers;
    r.q = logical.section.qubits;
    r.theta = logical.theta;
    r.seed = logical.seed;
    r.p_noise = noise.p_noise();
    r.estimator = estimator;
    r.m_z_exact = run_exact(logical).m_z;
    Circuit compiled = logical.transpiled ? logical : transpile(logical);
    ExpectationSet noisy = estimate_noisy(compiled, noise, estimator, rng);
    r.z_noisy = noisy.z;
    double sum = 0;
    for (double z : r.z_noisy) {
        sum += z;
    }
    r.m_z_noisy = sum / static_cast<double>(r.n);
    return r;
}

CircuitRecord generate_record(
    const ChipGraph &graph, const NoiseModel &noise, const GenerateOptions &options, int64_t index) {
    if (options.n_values.empty()) {
        throw std::invalid_argument("generate: empty qubit-count set");
    }
    uint64_t seed = derive_seed(options.seed, static_cast<uint64_t>(index));
    Rng rng(seed);
    int n = options.n_values[uniform_index(rng, options.n_values.size())];
    QubitSection section = sample_section(graph, n, rng);
    Circuit logical = build_circuit(std::move(section), options.p_layers, options.config, rng);
    logical.seed = seed;
    CircuitRecord r = simulate_record(logical, noise, options.estimator, rng);
    r.id = index;
    return r;
}

void generate(
    const ChipGraph &graph,
    const NoiseModel &noise,
    const GenerateOptions &options,
    const std::function<void(const CircuitRecord &)> &sink) {
    if (options.count < 1) {
        throw std::invalid_argument("generate: count must be at least 1");
    }
    if (options.p_layers < 1) {
        throw std::invalid_argument("generate: p_layers must be at least 1");
    }
    for (int n : options.n_values) {
        if (n < 2 || n > graph.num_qubits()) {
            throw std::invalid_argument("generate: qubit count " + std::to_string(n) + " does not fit the chip");
        }
    }
    noise.validate();
    const int threads = std::max(1, options.threads);
    if (threads == 1) {
        for (int64_t i = 0; i < options.count; i++) {
            sink(generate_record(graph, noise, options, i));
        }
        return;
    }
    const int64_t block = 16 * static_cast<int64_t>(threads);
    std::vector<CircuitRecord> buffer;
    for (int64_t start = 0; start < options.count; start += block) {
        int64_t stop = std::min(options.count, start + block);
        buffer.assign(static_cast<size_t>(stop - start), CircuitRecord{});
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> workers;
        for (int t = 0; t < threads; t++) {
            workers.emplace_back([&, t] {
                try {
                    for (int64_t i = start + t; i < stop; i += threads) {
                        buffer[static_cast<size_t>(i - start)] = generate_record(graph, noise, options, i);
                    }
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto &w : workers) {
            w.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
        for (const auto &r : buffer) {
            sink(r);
        }
    }
}

std::vector<CircuitRecord> generate(const ChipGraph &graph, const NoiseModel &noise, const GenerateOptions &options) {
    std::vector<CircuitRecord> out;
    generate(graph, noise, options, [&](const CircuitRecord &r) { out.push_back(r); });
    return out;
}

JsonlWriter::JsonlWriter(const std::string &path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) {
        throw IoError("cannot open " + path + " for writing");
    }
    out_ << nlohmann::json{{"schema", kDatasetSchema}}.dump() << '\n';
}

void JsonlWriter::write(const CircuitRecord &record) {
    out_ << record_to_json(record).dump() << '\n';
    if (!out_) {
        throw IoError("write failed on " + path_);
    }
}

void JsonlWriter::close() {
    out_.close();
    if (!out_) {
        throw IoError("closing " + path_ + " failed");
    }
}

JsonlReader::JsonlReader(const std::string &path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) {
        throw IoError("cannot open " + path);
    }
    std::string header;
    if (!std::getline(in_, header)) {
        throw IoError(path + ": missing schema header");
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(header);
    } catch (const nlohmann::json::exception &) {
        throw IoError(path + ": unreadable schema header");
    }
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kDatasetSchema) {
        throw IoError(
            path + ": unsupported dataset schema (expected " + std::to_string(kDatasetSchema) + ")");
    }
}

std::optional<CircuitRecord> JsonlReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        line_++;
        if (line.empty()) {
            continue;
        }
        try {
            return record_from_json(nlohmann::json::parse(line));
        } catch (const nlohmann::json::exception &ex) {
            throw IoError(path_ + ":" + std::to_string(line_) + ": " + ex.what());
        } catch (const std::invalid_argument &ex) {
            throw IoError(path_ + ":" + std::to_string(line_) + ": " + ex.what());
        }
    }
    if (in_.bad()) {
        throw IoError("read failed on " + path_);
    }
    return std::nullopt;
}

void write_jsonl(std::span<const CircuitRecord> records, const std::string &path) {
    JsonlWriter writer(path);
    for (const auto &r : records) {
        writer.write(r);
    }
    writer.close();
}

std::vector<CircuitRecord> read_jsonl(const std::string &path) {
    JsonlReader reader(path);
    std::vector<CircuitRecord> out;
    while (auto r = reader.next()) {
        out.push_back(std::move(*r));
    }
    return out;
}

Split split(std::span<const CircuitRecord> records, std::array<double, 3> fractions, Rng &rng) {
    double total = 0;
    for (double f : fractions) {
        if (!(f >= 0)) {
            throw std::invalid_argument("split: fractions must be non-negative");
        }
        total += f;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument("split: fractions must sum to 1");
    }
    const size_t n = records.size();
    size_t n_train = static_cast<size_t>(std::llround(fractions[0] * static_cast<double>(n)));
    size_t n_val = static_cast<size_t>(std::llround(fractions[1] * static_cast<double>(n)));
    n_train = std::min(n_train, n);
    n_val = std::min(n_val, n - n_train);
    size_t n_test = n - n_train - n_val;
    const size_t sizes[3] = {n_train, n_val, n_test};
    for (int k = 0; k < 3; k++) {
        if (fractions[k] > 0 && sizes[k] == 0) {
            throw std::invalid_argument("split: input too small for a nonzero fraction");
        }
    }
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    Split out;
    for (size_t k = 0; k < n; k++) {
        const auto &r = records[order[k]];
        if (k < n_train) {
            out.train.push_back(r);
        } else if (k < n_train + n_val) {
            out.validation.push_back(r);
        } else {
            out.test.push_back(r);
        }
    }
    return out;
}

}  // namespace qsynergy
