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

#include <iostream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qsynergy/cli.h"
#include "qsynergy/experiment.h"
#include "qsynergy/simulator.h"

namespace py = pybind11;
using namespace qsynergy;

namespace {

py::object to_python(const nlohmann::json &j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json from_python(const py::object &o) {
    return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

std::vector<CircuitRecord> records_from(const py::list &records) {
    std::vector<CircuitRecord> out;
    for (const auto &r : records) {
        out.push_back(record_from_json(from_python(py::reinterpret_borrow<py::object>(r))));
    }
    return out;
}

py::list records_to(const std::vector<CircuitRecord> &records) {
    py::list out;
    for (const auto &r : records) {
        out.append(to_python(record_to_json(r)));
    }
    return out;
}

py::dict expectations(const ExpectationSet &e) {
    py::dict d;
    d["z"] = e.z;
    d["m_z"] = e.m_z;
    d["z_stderr"] = e.z_stderr;
    d["m_z_stderr"] = e.m_z_stderr;
    return d;
}

Circuit transpile_if_needed(const Circuit &c) {
    return c.transpiled ? c : transpile(c);
}

ChipGraph chip_or_default(const std::string &path) {
    return path.empty() ? ChipGraph::guadalupe() : ChipGraph::load(path);
}

NoiseModel noise_for(const ChipGraph &graph, const std::string &path, double p_noise) {
    NoiseModel base = path.empty() ? default_noise_model(graph) : NoiseModel::load(path, graph);
    return p_noise == base.p_noise() ? base : scale_cnot_noise(base, p_noise / base.p_noise());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Noisy Trotter-circuit simulation, ZNE baselines and CNN surrogates";

    py::register_exception<IoError>(m, "IoError", PyExc_OSError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<Circuit>(m, "Circuit")
        .def_property_readonly("num_qubits", &Circuit::num_qubits)
        .def_readonly("p_layers", &Circuit::p_layers)
        .def_readonly("theta", &Circuit::theta)
        .def_readonly("phi", &Circuit::phi)
        .def_readonly("transpiled", &Circuit::transpiled)
        .def_property_readonly("qubits", [](const Circuit &c) { return c.section.qubits; })
        .def_property_readonly("num_gates", [](const Circuit &c) { return c.gates.size(); })
        .def("to_dict", [](const Circuit &c) { return to_python(circuit_to_json(c)); });

    m.def(
        "make_circuit",
        [](std::vector<int> qubits, int p_layers, const std::string &config, std::vector<double> theta, double phi,
           const std::string &chip) {
            ChipGraph g = chip_or_default(chip);
            return make_circuit(make_section(g, std::move(qubits)), p_layers, parse_config(config), std::move(theta),
                                phi);
        },
        py::arg("qubits"), py::arg("p_layers"), py::arg("config"), py::arg("theta"), py::arg("phi") = kDefaultPhi,
        py::arg("chip") = "", "Logical Trotter circuit on the given physical qubits.");
    m.def(
        "random_circuit",
        [](int n, int p_layers, const std::string &config, uint64_t seed, const std::string &chip) {
            ChipGraph g = chip_or_default(chip);
            Rng rng(seed);
            return build_circuit(sample_section(g, n, rng), p_layers, parse_config(config), rng);
        },
        py::arg("n"), py::arg("p_layers"), py::arg("config") = "A", py::arg("seed") = 0, py::arg("chip") = "");
    m.def("transpile", &transpile, py::arg("circuit"));

    m.def(
        "run_exact", [](const Circuit &c) { return expectations(run_exact(c)); }, py::arg("circuit"));
    m.def(
        "run_density",
        [](const Circuit &c, double p_noise, const std::string &noise, const std::string &chip) {
            return expectations(run_density(transpile_if_needed(c), noise_for(chip_or_default(chip), noise, p_noise)));
        },
        py::arg("circuit"), py::arg("p_noise") = 1.0, py::arg("noise_config") = "", py::arg("chip") = "");
    m.def(
        "run_trajectory",
        [](const Circuit &c, int n_traj, uint64_t seed, double p_noise, const std::string &noise,
           const std::string &chip) {
            Rng rng(seed);
            return expectations(
                run_trajectory(transpile_if_needed(c), noise_for(chip_or_default(chip), noise, p_noise), n_traj, rng));
        },
        py::arg("circuit"), py::arg("n_traj") = kDefaultTrajectories, py::arg("seed") = 0, py::arg("p_noise") = 1.0,
        py::arg("noise_config") = "", py::arg("chip") = "");
    m.def(
        "zne_estimate",
        [](const Circuit &c, int n_traj, uint64_t seed, double p_noise, const std::string &noise,
           const std::string &chip) {
            Rng rng(seed);
            EstimatorSettings s;
            s.samples = n_traj;
            ZneEstimate e =
                zne_estimate(transpile_if_needed(c), noise_for(chip_or_default(chip), noise, p_noise), s, rng);
            py::dict d;
            d["scale_factors"] = e.scale_factors;
            d["values"] = e.values;
            d["extrapolated"] = e.extrapolated;
            return d;
        },
        py::arg("circuit"), py::arg("n_traj") = kDefaultTrajectories, py::arg("seed") = 0, py::arg("p_noise") = 1.0,
        py::arg("noise_config") = "", py::arg("chip") = "");
    m.def("richardson", [](std::vector<double> l, std::vector<double> v) { return richardson(l, v); },
          py::arg("scale_factors"), py::arg("values"));

    m.def(
        "generate",
        [](const std::string &config, std::vector<int> n_values, int p_layers, int64_t count, uint64_t seed,
           int n_traj, double p_noise, int threads, const std::string &noise, const std::string &chip) {
            ChipGraph g = chip_or_default(chip);
            GenerateOptions o;
            o.config = parse_config(config);
            o.n_values = std::move(n_values);
            o.p_layers = p_layers;
            o.count = count;
            o.seed = seed;
            o.estimator.samples = n_traj;
            o.threads = threads;
            std::vector<CircuitRecord> records;
            {
                py::gil_scoped_release release;
                records = generate(g, noise_for(g, noise, p_noise), o);
            }
            return records_to(records);
        },
        py::arg("config") = "A", py::arg("n_values") = std::vector<int>{6, 7, 8, 9, 10}, py::arg("p_layers") = 20,
        py::arg("count") = 1, py::arg("seed") = 0, py::arg("n_traj") = kDefaultTrajectories, py::arg("p_noise") = 1.0,
        py::arg("threads") = 1, py::arg("noise_config") = "", py::arg("chip") = "",
        "Simulated records as dicts with the dataset file schema.");
    m.def(
        "read_jsonl", [](const std::string &path) { return records_to(read_jsonl(path)); }, py::arg("path"));
    m.def(
        "write_jsonl", [](const py::list &records, const std::string &path) { write_jsonl(records_from(records), path); },
        py::arg("records"), py::arg("path"));

    py::class_<CnnModel>(m, "CnnModel")
        .def_property_readonly("num_parameters", &CnnModel::num_parameters)
        .def_property_readonly("architecture", [](const CnnModel &c) { return to_python(c.architecture().to_json()); })
        .def_property_readonly("metadata", [](const CnnModel &c) { return to_python(c.metadata); })
        .def("predict", [](const CnnModel &c, const py::list &records) { return predict_batch(c, records_from(records)); })
        .def("save", [](const CnnModel &c, const std::string &path) { save_model(c, path); });
    m.def("load_model", &load_model, py::arg("path"));
    m.def(
        "fit",
        [](const py::list &train, const py::list &validation, const std::string &inputs, uint64_t seed,
           const py::object &architecture, const py::object &train_config) {
            FitOptions o;
            o.inputs = parse_inputs(inputs);
            if (!architecture.is_none()) {
                o.architecture = Architecture::from_json(from_python(architecture));
            }
            if (!train_config.is_none()) {
                o.train = TrainConfig::from_json(from_python(train_config));
            }
            auto train_records = records_from(train);
            auto val_records = records_from(validation);
            FitResult r;
            {
                py::gil_scoped_release release;
                r = fit_model(train_records, val_records, o, seed);
            }
            return py::make_tuple(std::move(r.model), to_python(r.history.to_json()));
        },
        py::arg("train"), py::arg("validation") = py::list(), py::arg("inputs") = "hybrid", py::arg("seed") = 0,
        py::arg("architecture") = py::none(), py::arg("train_config") = py::none(),
        "Trains a fresh model; returns (model, history).");

    m.def(
        "evaluate",
        [](std::vector<double> y, std::vector<double> y_hat) { return to_python(evaluate(y, y_hat).to_json()); },
        py::arg("y"), py::arg("y_hat"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "qsynergy");
            py::gil_scoped_release release;
            return run_cli(args, std::cout, std::cerr);
        },
        py::arg("args"), "Runs the command-line tool in-process and returns its exit code.");
}
