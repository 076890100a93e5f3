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

"""Noisy Trotter-circuit simulation, ZNE baselines and CNN surrogates."""

from qsynergy._core import (
    Circuit,
    CnnModel,
    IoError,
    NumericalError,
    evaluate,
    fit,
    generate,
    load_model,
    make_circuit,
    random_circuit,
    read_jsonl,
    richardson,
    run_cli,
    run_density,
    run_exact,
    run_trajectory,
    transpile,
    write_jsonl,
    zne_estimate,
)

__all__ = [
    "Circuit",
    "CnnModel",
    "IoError",
    "NumericalError",
    "evaluate",
    "fit",
    "generate",
    "load_model",
    "make_circuit",
    "random_circuit",
    "read_jsonl",
    "richardson",
    "run_cli",
    "run_density",
    "run_exact",
    "run_trajectory",
    "transpile",
    "write_jsonl",
    "zne_estimate",
]
