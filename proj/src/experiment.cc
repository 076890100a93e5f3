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

#include "qsynergy/experiment.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "qsynergy/parallel.h"

namespace qsynergy {

namespace {

// Substream tags under a fit seed or a record seed.
constexpr uint64_t kInitStream = 0;
constexpr uint64_t kTrainStream = 1;
constexpr uint64_t kSplitStream = 2;
constexpr uint64_t kZneStream = 0x7a6e65;

int parse_int(const std::string &text) {
    size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    return v;
}

std::map<int, std::vector<size_t>> group_by_n(std::span<const CircuitRecord> records) {
    std::map<int, std::vector<size_t>> groups;
    for (size_t i = 0; i < records.size(); i++) {
        groups[records[i].n].push_back(i);
    }
    return groups;
}

}  // namespace

std::string to_string(InputKind kind) {
    return kind == InputKind::Hybrid ? "hybrid" : "classical";
}

InputKind parse_inputs(const std::string &text) {
    if (text == "hybrid") {
        return InputKind::Hybrid;
    }
    if (text == "classical") {
        return InputKind::Classical;
    }
    throw std::invalid_argument("unknown input variant '" + text + "' (expected hybrid or classical)");
}

std::string method_name(InputKind kind) {
    return "cnn_" + to_string(kind);
}

std::vector<int> parse_int_set(const std::string &text) {
    std::vector<int> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        int lo = parse_int(text.substr(0, dots));
        int hi = parse_int(text.substr(dots + 2));
        if (hi < lo) {
            throw std::invalid_argument("empty range '" + text + "'");
        }
        for (int v = lo; v <= hi; v++) {
            out.push_back(v);
        }
        return out;
    }
    size_t start = 0;
    while (start <= text.size()) {
        size_t comma = text.find(',', start);
        if (comma == std::string::npos) {
            comma = text.size();
        }
        out.push_back(parse_int(text.substr(start, comma - start)));
        start = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Architecture default_architecture(Config config, InputKind inputs) {
    const int channels = inputs == InputKind::Hybrid ? 3 : 2;
    return config == Config::A ? Architecture::default_1d(channels) : Architecture::default_2d(channels);
}

FitResult fit_model(
    std::span<const CircuitRecord> train_records,
    std::span<const CircuitRecord> validation_records,
    const FitOptions &options,
    uint64_t seed) {
    if (train_records.empty()) {
        throw std::invalid_argument("fit_model: empty training set");
    }
    Architecture arch = options.architecture.value_or(default_architecture(train_records[0].config, options.inputs));
    arch.in_channels = options.inputs == InputKind::Hybrid ? 3 : 2;

    std::vector<CircuitRecord> held_train;
    std::vector<CircuitRecord> held_val;
    if (validation_records.empty() && options.validation_fraction > 0) {
        Rng split_rng(derive_seed(seed, kSplitStream));
        Split parts =
            split(train_records, {1 - options.validation_fraction, options.validation_fraction, 0.0}, split_rng);
        held_train = std::move(parts.train);
        held_val = std::move(parts.validation);
        train_records = held_train;
        validation_records = held_val;
    }

    FitResult result{CnnModel(arch, derive_seed(seed, kInitStream)), {}};
    Rng rng(derive_seed(seed, kTrainStream));
    result.history = train(result.model, train_records, validation_records, options.train, rng);
    result.model.metadata = {
        {"inputs", to_string(options.inputs)},
        {"method", method_name(options.inputs)},
        {"seed", seed},
        {"config", to_string(train_records[0].config)},
        {"k_train", train_records.size()},
        {"k_validation", validation_records.size()},
        {"best_epoch", result.history.best_epoch},
    };
    return result;
}

NoiseModel noise_for_record(const NoiseModel &base, const CircuitRecord &record) {
    const double have = base.p_noise();
    const double want = record.p_noise;
    if (std::abs(have - want) <= 1e-12) {
        return base;
    }
    if (want > have || have <= 0) {
        throw std::invalid_argument(
            "record " + std::to_string(record.id) + " was generated with p_noise " + std::to_string(want) +
            ", which the noise model (p_noise " + std::to_string(have) + ") cannot reach");
    }
    return scale_cnot_noise(base, want / have);
}

std::vector<ZneEstimate> zne_records(
    std::span<const CircuitRecord> records, const ChipGraph &graph, const NoiseModel &base, int threads) {
    std::vector<ZneEstimate> out(records.size());
    parallel_for(records.size(), threads, [&](size_t i) {
        const CircuitRecord &r = records[i];
        Circuit c = transpile(record_circuit(r, graph));
        Rng rng(derive_seed(r.seed, kZneStream));
        out[i] = zne_estimate(c, noise_for_record(base, r), r.estimator, rng);
    });
    return out;
}

std::vector<EvalRow> evaluate_methods(
    std::span<const CircuitRecord> test_records,
    std::span<const ScoredModel> models,
    const std::vector<double> *zne_values,
    bool include_exact,
    uint64_t baseline_seed) {
    if (test_records.empty()) {
        throw std::invalid_argument("evaluate: empty test set");
    }
    if (zne_values != nullptr && zne_values->size() != test_records.size()) {
        throw std::invalid_argument("evaluate: ZNE values do not match the test set");
    }
    std::vector<std::vector<double>> predictions;
    std::vector<uint64_t> seeds;
    for (const auto &m : models) {
        predictions.push_back(predict_batch(*m.model, test_records));
        if (std::find(seeds.begin(), seeds.end(), m.seed) == seeds.end()) {
            seeds.push_back(m.seed);
        }
    }
    if (seeds.empty()) {
        seeds.push_back(baseline_seed);
    }

    std::vector<EvalRow> rows;
    for (const auto &[n, idx] : group_by_n(test_records)) {
        std::vector<double> y;
        std::vector<double> noisy;
        std::vector<double> zne;
        for (size_t i : idx) {
            y.push_back(test_records[i].m_z_exact);
            noisy.push_back(test_records[i].m_z_noisy);
            if (zne_values != nullptr) {
                zne.push_back((*zne_values)[i]);
            }
        }
        auto score = [&](const std::vector<double> &y_hat) {
            try {
                return evaluate(y, y_hat);
            } catch (const std::invalid_argument &ex) {
                throw std::invalid_argument("cannot score N = " + std::to_string(n) + ": " + ex.what());
            }
        };
        for (size_t m = 0; m < models.size(); m++) {
            std::vector<double> y_hat;
            for (size_t i : idx) {
                y_hat.push_back(predictions[m][i]);
            }
            rows.push_back({n, models[m].method, score(y_hat), models[m].seed});
        }
        const EvalReport noisy_report = score(noisy);
        std::optional<EvalReport> zne_report;
        if (zne_values != nullptr) {
            zne_report = score(zne);
        }
        std::optional<EvalReport> exact_report;
        if (include_exact) {
            exact_report = score(y);
        }
        for (uint64_t seed : seeds) {
            rows.push_back({n, "noisy", noisy_report, seed});
            if (zne_report) {
                rows.push_back({n, "zne", *zne_report, seed});
            }
            if (exact_report) {
                rows.push_back({n, "exact", *exact_report, seed});
            }
        }
    }
    return rows;
}

std::vector<SummaryRow> summarize(std::span<const EvalRow> rows) {
    std::vector<SummaryRow> out;
    std::map<std::pair<int, std::string>, std::vector<double>> groups;
    std::vector<std::pair<int, std::string>> order;
    for (const auto &r : rows) {
        auto key = std::make_pair(r.n, r.method);
        auto [it, fresh] = groups.try_emplace(key);
        if (fresh) {
            order.push_back(key);
        }
        it->second.push_back(r.report.one_minus_r2);
    }
    for (const auto &key : order) {
        const auto &v = groups[key];
        SummaryRow s;
        s.n = key.first;
        s.method = key.second;
        s.repeats = v.size();
        double sum = 0;
        for (double x : v) {
            sum += x;
        }
        s.mean_one_minus_r2 = sum / static_cast<double>(v.size());
        if (v.size() > 1) {
            double ss = 0;
            for (double x : v) {
                ss += (x - s.mean_one_minus_r2) * (x - s.mean_one_minus_r2);
            }
            s.std_one_minus_r2 = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace qsynergy
