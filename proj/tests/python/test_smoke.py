# Copyright 2026 The qsynergy Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import qsynergy


def test_single_layer_law():
    theta = [0.1, 0.7, 1.2, 0.4]
    c = qsynergy.make_circuit([5, 8, 9, 11], 1, "A", theta)
    got = qsynergy.run_exact(c)["m_z"]
    assert got == pytest.approx(sum(math.cos(t) for t in theta) / 4, abs=1e-10)


def test_transpile_preserves_exact_output():
    c = qsynergy.random_circuit(4, 3, "B", seed=3)
    t = qsynergy.transpile(c)
    assert t.transpiled and t.num_gates > c.num_gates
    for a, b in zip(qsynergy.run_exact(c)["z"], qsynergy.run_exact(t)["z"]):
        assert a == pytest.approx(b, abs=1e-10)


def test_trajectory_agrees_with_density():
    c = qsynergy.random_circuit(3, 2, "A", seed=4)
    dens = qsynergy.run_density(c)
    traj = qsynergy.run_trajectory(c, n_traj=4000, seed=1)
    for z, ref, se in zip(traj["z"], dens["z"], traj["z_stderr"]):
        assert abs(z - ref) <= 4 * se + 1e-12


def test_zne_and_richardson():
    assert qsynergy.richardson([1, 2, 3], [0.9, 0.8, 0.7]) == pytest.approx(1.0)
    c = qsynergy.random_circuit(3, 2, "A", seed=5)
    e = qsynergy.zne_estimate(c, n_traj=64, seed=2)
    v = e["values"]
    assert e["extrapolated"] == pytest.approx(3 * v[0] - 3 * v[1] + v[2])


def test_generate_fit_predict(tmp_path):
    train = qsynergy.generate("A", [4, 5], p_layers=3, count=40, seed=1, n_traj=32)
    assert len(train) == 40 and {r["n"] for r in train} == {4, 5}
    path = str(tmp_path / "train.jsonl")
    qsynergy.write_jsonl(train, path)
    assert qsynergy.read_jsonl(path) == train

    arch = {"dims": 1, "in_channels": 3, "kernel": 3, "conv_widths": [6], "dense_widths": [6]}
    model, history = qsynergy.fit(train, seed=2, architecture=arch, train_config={"max_epochs": 3})
    assert len(history["epochs"]) == 3
    assert model.metadata["method"] == "cnn_hybrid"
    test = qsynergy.generate("A", [9], p_layers=3, count=5, seed=2, n_traj=16)
    pred = model.predict(test)
    assert len(pred) == 5 and all(math.isfinite(p) for p in pred)

    model_path = str(tmp_path / "m.bin")
    model.save(model_path)
    assert qsynergy.load_model(model_path).predict(test) == pred
    report = qsynergy.evaluate([r["m_z_exact"] for r in test], pred)
    assert report["k_test"] == 5


def test_errors(tmp_path):
    with pytest.raises(qsynergy.IoError):
        qsynergy.read_jsonl(str(tmp_path / "missing.jsonl"))
    with pytest.raises(ValueError):
        qsynergy.random_circuit(4, 2, "C")


def test_cli_round_trip(tmp_path):
    out = str(tmp_path / "d.jsonl")
    assert qsynergy.run_cli(["gen", "--n", "4", "--layers", "2", "--k", "3", "-o", out]) == 0
    assert len(qsynergy.read_jsonl(out)) == 3
    assert qsynergy.run_cli(["gen", "--k", "0", "-o", out]) == 2
