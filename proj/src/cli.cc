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

#include "qsynergy/cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "qsynergy/errors.h"
#include "qsynergy/experiment.h"

namespace qsynergy {

namespace {

struct Globals {
    uint64_t seed = 0;
    int threads = 1;
    std::string noise_config;
    std::string chip;
    std::string out;
};

struct EstimatorFlags {
    std::string kind = "trajectory";
    int n_traj = kDefaultTrajectories;
    int n_shots = 4096;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--estimator", kind, "Noisy estimator: trajectory or shots")->capture_default_str();
        cmd->add_option("--n-traj", n_traj, "Trajectories per circuit")->capture_default_str();
        cmd->add_option("--n-shots", n_shots, "Shots per circuit")->capture_default_str();
    }

    EstimatorSettings settings() const {
        EstimatorSettings s;
        s.kind = parse_estimator(kind);
        s.samples = s.kind == EstimatorKind::Trajectory ? n_traj : n_shots;
        if (s.samples < 1) {
            throw std::invalid_argument("sample count must be at least 1");
        }
        return s;
    }
};

struct TrainFlags {
    std::string inputs = "hybrid";
    std::string train_config;
    std::string arch;
    int epochs = 0;
    int patience = 0;
    int batch = 0;
    double lr = 0;

    void add_to(CLI::App *cmd, bool with_inputs) {
        if (with_inputs) {
            cmd->add_option("--inputs", inputs, "hybrid (q, theta, z_noisy) or classical (q, theta)")
                ->capture_default_str();
        }
        cmd->add_option("--train-config", train_config, "JSON file with optimizer settings");
        cmd->add_option("--arch", arch, "JSON file with a network architecture");
        cmd->add_option("--epochs", epochs, "Maximum epochs");
        cmd->add_option("--patience", patience, "Early-stopping patience in epochs");
        cmd->add_option("--batch", batch, "Mini-batch size");
        cmd->add_option("--lr", lr, "Adam learning rate");
    }

    FitOptions options(InputKind kind, int threads) const {
        FitOptions o;
        o.inputs = kind;
        if (!train_config.empty()) {
            o.train = TrainConfig::from_json(read_json(train_config));
        }
        if (!arch.empty()) {
            o.architecture = Architecture::from_json(read_json(arch));
        }
        if (epochs != 0) {
            o.train.max_epochs = epochs;
        }
        if (patience != 0) {
            o.train.patience = patience;
        }
        if (batch != 0) {
            o.train.batch_size = batch;
        }
        if (lr != 0) {
            o.train.learning_rate = lr;
        }
        o.train.threads = threads;
        o.train.validate();
        return o;
    }

    static nlohmann::json read_json(const std::string &path) {
        std::ifstream in(path);
        if (!in) {
            throw IoError("cannot open " + path);
        }
        try {
            return nlohmann::json::parse(in);
        } catch (const nlohmann::json::exception &ex) {
            throw std::invalid_argument(path + ": " + ex.what());
        }
    }
};

class Timer {
   public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

   private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

std::string require_out(const Globals &g, const std::string &command) {
    if (g.out.empty()) {
        throw std::invalid_argument(command + ": --out is required");
    }
    return g.out;
}

std::ofstream open_out(const std::string &path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path + " for writing");
    }
    return out;
}

void finish(std::ofstream &out, const std::string &path) {
    out.close();
    if (!out) {
        throw IoError("failed writing " + path);
    }
}

std::string summary_path(const std::string &path) {
    const std::string ext = ".csv";
    if (path.size() > ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0) {
        return path.substr(0, path.size() - ext.size()) + ".summary.csv";
    }
    return path + ".summary.csv";
}

ChipGraph load_chip(const Globals &g) {
    return g.chip.empty() ? ChipGraph::guadalupe() : ChipGraph::load(g.chip);
}

NoiseModel load_noise(const Globals &g, const ChipGraph &graph) {
    return g.noise_config.empty() ? default_noise_model(graph) : NoiseModel::load(g.noise_config, graph);
}

Config parse_config_flag(const std::string &text) {
    return parse_config(text);
}

std::vector<CircuitRecord> read_all(const std::vector<std::string> &paths) {
    std::vector<CircuitRecord> out;
    for (const auto &p : paths) {
        auto part = read_jsonl(p);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

std::string eval_header() {
    return "n,method," + EvalReport::csv_header() + ",seed";
}

std::string eval_line(const EvalRow &r) {
    return std::to_string(r.n) + "," + r.method + "," + r.report.csv_row() + "," + std::to_string(r.seed);
}

std::string summary_line(const SummaryRow &s) {
    return std::to_string(s.n) + "," + s.method + "," + std::to_string(s.repeats) + "," + fmt(s.mean_one_minus_r2) +
           "," + fmt(s.std_one_minus_r2);
}

const std::string kSummaryHeader = "n,method,repeats,mean_one_minus_r2,std_one_minus_r2";

struct LoadedModel {
    std::unique_ptr<CnnModel> model;
    std::string method;
    uint64_t seed = 0;
};

LoadedModel load_scored(const std::string &path, uint64_t fallback_seed) {
    LoadedModel m;
    m.model = std::make_unique<CnnModel>(load_model(path));
    const auto &meta = m.model->metadata;
    m.method = meta.value(
        "method", method_name(m.model->uses_noisy_inputs() ? InputKind::Hybrid : InputKind::Classical));
    m.seed = meta.value("seed", fallback_seed);
    return m;
}

// Reads extrapolated values from a `zne` output file, keyed by record seed.
std::vector<double> read_zne_file(const std::string &path, std::span<const CircuitRecord> records) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path);
    }
    std::map<std::pair<uint64_t, int64_t>, double> by_key;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (line.empty()) {
            continue;
        }
        try {
            auto j = nlohmann::json::parse(line);
            by_key[{j.at("seed").get<uint64_t>(), j.at("id").get<int64_t>()}] = j.at("extrapolated").get<double>();
        } catch (const nlohmann::json::exception &ex) {
            throw IoError(path + ":" + std::to_string(lineno) + ": " + ex.what());
        }
    }
    std::vector<double> out;
    for (const auto &r : records) {
        auto it = by_key.find({r.seed, r.id});
        if (it == by_key.end()) {
            throw std::invalid_argument(path + " has no ZNE value for record " + std::to_string(r.id));
        }
        out.push_back(it->second);
    }
    return out;
}

std::vector<double> extrapolated(const std::vector<ZneEstimate> &estimates) {
    std::vector<double> out;
    for (const auto &e : estimates) {
        out.push_back(e.extrapolated);
    }
    return out;
}

// ---- gen ----

struct GenCommand {
    std::string config = "A";
    std::string n = "6..10";
    int layers = 20;
    int64_t k = 0;
    double p_noise = 1.0;
    EstimatorFlags estimator;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--config", config, "Circuit family A or B")->capture_default_str();
        cmd->add_option("--n", n, "Qubit counts, as 6..10 or 6,8,10")->capture_default_str();
        cmd->add_option("--layers", layers, "Trotter layers P")->capture_default_str();
        cmd->add_option("--k", k, "Number of records")->required();
        cmd->add_option("--p-noise", p_noise, "CNOT noise scale in [0, 1]")->capture_default_str();
        estimator.add_to(cmd);
    }

    int run(const Globals &g, std::ostream &err) const {
        const std::string path = require_out(g, "gen");
        if (k < 1) {
            throw std::invalid_argument("gen: --k must be at least 1");
        }
        Timer timer;
        ChipGraph graph = load_chip(g);
        NoiseModel noise = scale_cnot_noise(load_noise(g, graph), p_noise);
        GenerateOptions o;
        o.config = parse_config_flag(config);
        o.n_values = parse_int_set(n);
        o.p_layers = layers;
        o.count = k;
        o.estimator = estimator.settings();
        o.seed = g.seed;
        o.threads = g.threads;
        JsonlWriter writer(path);
        generate(graph, noise, o, [&](const CircuitRecord &r) { writer.write(r); });
        writer.close();
        err << "gen: wrote " << k << " records to " << path << " in " << std::fixed << std::setprecision(2)
            << timer.seconds() << " s\n";
        return kExitOk;
    }
};

// ---- train ----

struct TrainCommand {
    std::string train_path;
    std::string val_path;
    std::string history_path;
    TrainFlags flags;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--train", train_path, "Training records (JSONL)")->required();
        cmd->add_option("--val", val_path, "Validation records; default holds out 10% of --train");
        cmd->add_option("--history", history_path, "History JSON path; default <out>.history.json");
        flags.add_to(cmd, true);
    }

    int run(const Globals &g, std::ostream &err) const {
        const std::string path = require_out(g, "train");
        Timer timer;
        auto train_records = read_jsonl(train_path);
        std::vector<CircuitRecord> val_records;
        if (!val_path.empty()) {
            val_records = read_jsonl(val_path);
        }
        FitOptions o = flags.options(parse_inputs(flags.inputs), g.threads);
        FitResult fit = fit_model(train_records, val_records, o, g.seed);
        save_model(fit.model, path);
        const std::string hist = history_path.empty() ? path + ".history.json" : history_path;
        auto out = open_out(hist);
        nlohmann::json doc = fit.history.to_json();
        doc["train_config"] = o.train.to_json();
        doc["architecture"] = fit.model.architecture().to_json();
        doc["metadata"] = fit.model.metadata;
        out << doc.dump(2) << "\n";
        finish(out, hist);
        err << "train: " << fit.history.epochs.size() << " epochs, best epoch " << fit.history.best_epoch
            << " (mse " << fit.history.best_loss << "), wrote " << path << " in " << std::fixed
            << std::setprecision(2) << timer.seconds() << " s\n";
        return kExitOk;
    }
};

// ---- eval ----

struct EvalCommand {
    std::vector<std::string> models;
    std::vector<std::string> tests;
    bool zne = false;
    std::string zne_file;
    bool include_exact = false;
    std::string summary;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--model", models, "Model files (repeatable)");
        cmd->add_option("--test", tests, "Test record files (repeatable)")->required();
        cmd->add_flag("--zne", zne, "Compute the ZNE baseline");
        cmd->add_option("--zne-file", zne_file, "Read the ZNE baseline from a `zne` output file");
        cmd->add_flag("--include-exact", include_exact, "Add a row scoring the exact targets against themselves");
        cmd->add_option("--summary", summary, "Summary CSV path; default <out>.summary.csv");
    }

    int run(const Globals &g, std::ostream &err) const {
        const std::string path = require_out(g, "eval");
        Timer timer;
        auto records = read_all(tests);
        std::vector<LoadedModel> loaded;
        for (size_t i = 0; i < models.size(); i++) {
            loaded.push_back(load_scored(models[i], i));
        }
        std::vector<ScoredModel> scored;
        for (const auto &m : loaded) {
            scored.push_back({m.model.get(), m.method, m.seed});
        }
        std::optional<std::vector<double>> zne_values;
        if (!zne_file.empty()) {
            zne_values = read_zne_file(zne_file, records);
        } else if (zne) {
            ChipGraph graph = load_chip(g);
            zne_values = extrapolated(zne_records(records, graph, load_noise(g, graph), g.threads));
        }
        auto rows =
            evaluate_methods(records, scored, zne_values ? &*zne_values : nullptr, include_exact, g.seed);

        auto out = open_out(path);
        out << eval_header() << "\n";
        for (const auto &r : rows) {
            out << eval_line(r) << "\n";
        }
        finish(out, path);
        const std::string spath = summary.empty() ? summary_path(path) : summary;
        auto sout = open_out(spath);
        sout << kSummaryHeader << "\n";
        for (const auto &s : summarize(rows)) {
            sout << summary_line(s) << "\n";
        }
        finish(sout, spath);
        err << "eval: " << rows.size() << " rows to " << path << " in " << std::fixed << std::setprecision(2)
            << timer.seconds() << " s\n";
        return kExitOk;
    }
};

// ---- zne ----

struct ZneCommand {
    std::vector<std::string> tests;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--test", tests, "Record files (repeatable)")->required();
    }

    int run(const Globals &g, std::ostream &err) const {
        const std::string path = require_out(g, "zne");
        Timer timer;
        auto records = read_all(tests);
        ChipGraph graph = load_chip(g);
        auto estimates = zne_records(records, graph, load_noise(g, graph), g.threads);
        auto out = open_out(path);
        for (size_t i = 0; i < records.size(); i++) {
            nlohmann::json values = nlohmann::json::object();
            for (size_t k = 0; k < estimates[i].scale_factors.size(); k++) {
                values[std::to_string(static_cast<int>(estimates[i].scale_factors[k]))] = estimates[i].values[k];
            }
            nlohmann::json line = {
                {"id", records[i].id},
                {"seed", records[i].seed},
                {"n", records[i].n},
                {"values", values},
                {"extrapolated", estimates[i].extrapolated},
            };
            out << line.dump() << "\n";
        }
        finish(out, path);
        err << "zne: " << records.size() << " circuits to " << path << " in " << std::fixed << std::setprecision(2)
            << timer.seconds() << " s\n";
        return kExitOk;
    }
};

// ---- scatter ----

struct ScatterCommand {
    std::string model;
    std::vector<std::string> tests;
    std::string zne_file;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--model", model, "Model file")->required();
        cmd->add_option("--test", tests, "Test record files (repeatable)")->required();
        cmd->add_option("--zne-file", zne_file, "Read ZNE values from a `zne` output file instead of computing them");
    }

    int run(const Globals &g, std::ostream &err) const {
        const std::string path = require_out(g, "scatter");
        Timer timer;
        auto records = read_all(tests);
        CnnModel m = load_model(model);
        auto cnn = predict_batch(m, records);
        std::vector<double> zne;
        if (!zne_file.empty()) {
            zne = read_zne_file(zne_file, records);
        } else {
            ChipGraph graph = load_chip(g);
            zne = extrapolated(zne_records(records, graph, load_noise(g, graph), g.threads));
        }
        auto out = open_out(path);
        out << "id,n,target,cnn,noisy,zne\n";
        for (size_t i = 0; i < records.size(); i++) {
            const auto &r = records[i];
            out << r.id << "," << r.n << "," << fmt(r.m_z_exact) << "," << fmt(cnn[i]) << "," << fmt(r.m_z_noisy)
                << "," << fmt(zne[i]) << "\n";
        }
        finish(out, path);
        err << "scatter: " << records.size() << " rows to " << path << " in " << std::fixed << std::setprecision(2)
            << timer.seconds() << " s\n";
        return kExitOk;
    }
};

// ---- sweep ----

struct SweepCommand {
    std::string var;
    std::vector<std::string> values;
    std::string config = "A";
    std::string n_train = "4..7";
    std::string n_test = "10";
    int layers = 8;
    int64_t k_train = 5000;
    int64_t k_test = 500;
    int repeats = 3;
    double p_noise = 1.0;
    std::vector<std::string> inputs = {"hybrid", "classical"};
    bool zne = false;
    std::string summary;
    EstimatorFlags estimator;
    TrainFlags flags;

    void add_to(CLI::App *cmd) {
        cmd->add_option("--var", var, "Swept variable: p_noise or k_train")
            ->required()
            ->check(CLI::IsMember({"p_noise", "k_train"}));
        cmd->add_option("--values", values, "Comma-separated values")->required()->delimiter(',');
        cmd->add_option("--config", config, "Circuit family A or B")->capture_default_str();
        cmd->add_option("--n-train", n_train, "Training qubit counts")->capture_default_str();
        cmd->add_option("--n-test", n_test, "Test qubit counts")->capture_default_str();
        cmd->add_option("--layers", layers, "Trotter layers P")->capture_default_str();
        cmd->add_option("--k-train", k_train, "Training records (ignored when sweeping k_train)")
            ->capture_default_str();
        cmd->add_option("--k-test", k_test, "Test records")->capture_default_str();
        cmd->add_option("--repeats", repeats, "Training repetitions per value")->capture_default_str();
        cmd->add_option("--p-noise", p_noise, "CNOT noise scale (ignored when sweeping p_noise)")
            ->capture_default_str();
        cmd->add_option("--inputs", inputs, "Network variants to train")->delimiter(',')->capture_default_str();
        cmd->add_flag("--zne", zne, "Include the ZNE baseline");
        cmd->add_option("--summary", summary, "Summary CSV path; default <out>.summary.csv");
        estimator.add_to(cmd);
        flags.add_to(cmd, false);
    }

    int run(const Globals &g, std::ostream &err) const {
        const std::string path = require_out(g, "sweep");
        if (values.empty() || (values.size() == 1 && values[0].empty())) {
            throw std::invalid_argument("sweep: --values must list at least one value");
        }
        if (repeats < 1) {
            throw std::invalid_argument("sweep: --repeats must be at least 1");
        }
        std::vector<double> parsed;
        for (const auto &v : values) {
            size_t used = 0;
            double x = 0;
            try {
                x = std::stod(v, &used);
            } catch (const std::exception &) {
                used = 0;
            }
            if (used == 0 || used != v.size()) {
                throw std::invalid_argument("sweep: bad value '" + v + "'");
            }
            if (var == "k_train" && (x < 1 || x != std::floor(x))) {
                throw std::invalid_argument("sweep: k_train values must be positive integers");
            }
            parsed.push_back(x);
        }
        std::vector<InputKind> kinds;
        for (const auto &s : inputs) {
            kinds.push_back(parse_inputs(s));
        }

        Timer timer;
        ChipGraph graph = load_chip(g);
        const NoiseModel base = load_noise(g, graph);
        GenerateOptions train_opts;
        train_opts.config = parse_config_flag(config);
        train_opts.n_values = parse_int_set(n_train);
        train_opts.p_layers = layers;
        train_opts.estimator = estimator.settings();
        train_opts.seed = derive_seed(g.seed, 1);
        train_opts.threads = g.threads;
        GenerateOptions test_opts = train_opts;
        test_opts.n_values = parse_int_set(n_test);
        test_opts.count = k_test;
        test_opts.seed = derive_seed(g.seed, 2);

        std::vector<CircuitRecord> shared_train;
        std::vector<CircuitRecord> shared_test;
        std::optional<std::vector<double>> shared_zne;
        if (var == "k_train") {
            NoiseModel noise = scale_cnot_noise(base, p_noise);
            train_opts.count = static_cast<int64_t>(*std::max_element(parsed.begin(), parsed.end()));
            shared_train = generate(graph, noise, train_opts);
            shared_test = generate(graph, noise, test_opts);
            if (zne) {
                shared_zne = extrapolated(zne_records(shared_test, graph, noise, g.threads));
            }
        }

        auto out = open_out(path);
        out << "var,value," << eval_header() << "\n";
        std::vector<std::pair<std::string, SummaryRow>> summaries;
        for (size_t vi = 0; vi < parsed.size(); vi++) {
            const double value = parsed[vi];
            const std::string label = var == "k_train" ? std::to_string(static_cast<int64_t>(value)) : fmt(value);
            std::vector<CircuitRecord> train_records;
            std::vector<CircuitRecord> test_records;
            std::optional<std::vector<double>> zne_values;
            if (var == "k_train") {
                train_records.assign(shared_train.begin(), shared_train.begin() + static_cast<int64_t>(value));
                test_records = shared_test;
                zne_values = shared_zne;
            } else {
                NoiseModel noise = scale_cnot_noise(base, value);
                train_opts.count = k_train;
                train_records = generate(graph, noise, train_opts);
                test_records = generate(graph, noise, test_opts);
                if (zne) {
                    zne_values = extrapolated(zne_records(test_records, graph, noise, g.threads));
                }
            }
            std::vector<CnnModel> trained;
            std::vector<ScoredModel> scored;
            trained.reserve(static_cast<size_t>(repeats) * kinds.size());
            for (int r = 0; r < repeats; r++) {
                const uint64_t seed = derive_seed(g.seed, 1000 + static_cast<uint64_t>(r));
                for (InputKind kind : kinds) {
                    trained.push_back(fit_model(train_records, {}, flags.options(kind, g.threads), seed).model);
                    scored.push_back({&trained.back(), method_name(kind), seed});
                }
            }
            auto rows =
                evaluate_methods(test_records, scored, zne_values ? &*zne_values : nullptr, false, g.seed);
            for (const auto &row : rows) {
                out << var << "," << label << "," << eval_line(row) << "\n";
            }
            for (const auto &s : summarize(rows)) {
                summaries.emplace_back(label, s);
            }
            err << "sweep: " << var << " = " << label << " done at " << std::fixed << std::setprecision(2)
                << timer.seconds() << " s\n";
        }
        finish(out, path);
        const std::string spath = summary.empty() ? summary_path(path) : summary;
        auto sout = open_out(spath);
        sout << "var,value," << kSummaryHeader << "\n";
        for (const auto &[label, s] : summaries) {
            sout << var << "," << label << "," << summary_line(s) << "\n";
        }
        finish(sout, spath);
        return kExitOk;
    }
};

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Noisy-circuit surrogate experiments: datasets, CNN training, ZNE baselines"};
    app.name(args.empty() ? "qsynergy" : args[0]);
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
    app.add_option("--threads", g.threads, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--noise-config", g.noise_config, "Noise model JSON (default: built-in model)");
    app.add_option("--chip", g.chip, "Coupling graph JSON (default: 16-qubit heavy-hex device)");
    app.add_option("-o,--out", g.out, "Output path");

    GenCommand gen;
    TrainCommand train_cmd;
    EvalCommand eval;
    SweepCommand sweep;
    ScatterCommand scatter;
    ZneCommand zne;
    gen.add_to(app.add_subcommand("gen", "Generate a dataset of simulated circuits"));
    train_cmd.add_to(app.add_subcommand("train", "Train a CNN on a dataset"));
    eval.add_to(app.add_subcommand("eval", "Score models and baselines on test sets"));
    sweep.add_to(app.add_subcommand("sweep", "Generate, train and evaluate over p_noise or k_train"));
    scatter.add_to(app.add_subcommand("scatter", "Per-circuit target, CNN, noisy and ZNE values"));
    zne.add_to(app.add_subcommand("zne", "Zero-noise extrapolation per circuit"));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        auto *cmd = app.get_subcommands().front();
        const std::string name = cmd->get_name();
        if (name == "gen") {
            return gen.run(g, err);
        }
        if (name == "train") {
            return train_cmd.run(g, err);
        }
        if (name == "eval") {
            return eval.run(g, err);
        }
        if (name == "sweep") {
            return sweep.run(g, err);
        }
        if (name == "scatter") {
            return scatter.run(g, err);
        }
        return zne.run(g, err);
    } catch (const TrainingDiverged &e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalError &e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const IoError &e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument &e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_cli(int argc, char **argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace qsynergy
