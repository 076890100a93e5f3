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

#ifndef QSYNERGY_DATASET_H
#define QSYNERGY_DATASET_H

#include <array>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsynergy/chip.h"
#include "qsynergy/circuits.h"
#include "qsynergy/noise.h"
#include "qsynergy/simulator.h"

namespace qsynergy {

inline constexpr int kDatasetSchema = 1;

/// One supervised example: circuit descriptors, noisy per-qubit <Z> and the
/// exact target magnetization.
struct CircuitRecord {
    int64_t id = 0;
    Config config = Config::A;
    int n = 0;
    int p_layers = 0;
    std::vector<int> q;
    std::vector<double> theta;
    std::vector<double> z_noisy;
    double m_z_exact = 0;
    double m_z_noisy = 0;
    double p_noise = 1;
    EstimatorSettings estimator;
    uint64_t seed = 0;

    bool operator==(const CircuitRecord &other) const;
};

/// Throws std::invalid_argument if the record breaks a shape or range invariant.
void validate_record(const CircuitRecord &record);

nlohmann::json record_to_json(const CircuitRecord &record);
CircuitRecord record_from_json(const nlohmann::json &j);

/// The logical circuit a record describes (phi fixed at -pi/2).
Circuit record_circuit(const CircuitRecord &record, const ChipGraph &graph);

struct GenerateOptions {
    Config config = Config::A;
    std::vector<int> n_values = {6, 7, 8, 9, 10};
    int p_layers = 20;
    int64_t count = 1;
    EstimatorSettings estimator;
    uint64_t seed = 0;
    int threads = 1;
};

/// Simulates an already-built logical circuit into a record.
CircuitRecord simulate_record(
    const Circuit &logical, const NoiseModel &noise, const EstimatorSettings &estimator, Rng &rng);

/// Record `index` of a corpus. Its random stream depends only on
/// (options.seed, index), so any record can be regenerated on its own.
CircuitRecord generate_record(
    const ChipGraph &graph, const NoiseModel &noise, const GenerateOptions &options, int64_t index);

/// Emits records 0..count-1 in index order whatever the thread count.
void generate(
    const ChipGraph &graph,
    const NoiseModel &noise,
    const GenerateOptions &options,
    const std::function<void(const CircuitRecord &)> &sink);
std::vector<CircuitRecord> generate(const ChipGraph &graph, const NoiseModel &noise, const GenerateOptions &options);

/// JSON Lines writer; the first line is {"schema": 1}.
class JsonlWriter {
   public:
    explicit JsonlWriter(const std::string &path);
    void write(const CircuitRecord &record);
    void close();

   private:
    std::string path_;
    std::ofstream out_;
};

/// Streaming reader that checks the schema header before yielding records.
class JsonlReader {
   public:
    explicit JsonlReader(const std::string &path);
    std::optional<CircuitRecord> next();

   private:
    std::string path_;
    std::ifstream in_;
    size_t line_ = 1;
};

void write_jsonl(std::span<const CircuitRecord> records, const std::string &path);
std::vector<CircuitRecord> read_jsonl(const std::string &path);

struct Split {
    std::vector<CircuitRecord> train;
    std::vector<CircuitRecord> validation;
    std::vector<CircuitRecord> test;
};

/// Seeded disjoint partition with sizes round(f * n) for the first two parts.
Split split(std::span<const CircuitRecord> records, std::array<double, 3> fractions, Rng &rng);

}  // namespace qsynergy

#endif
