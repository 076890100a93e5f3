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

#ifndef QSYNERGY_CHIP_H
#define QSYNERGY_CHIP_H

#include <compare>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qsynergy/rng.h"

namespace qsynergy {

/// Undirected coupling between two physical qubits, stored with a < b.
struct Edge {
    int a = 0;
    int b = 0;

    static Edge make(int x, int y);
    auto operator<=>(const Edge &) const = default;
};

/// Physical qubit connectivity of a device. Immutable after construction.
class ChipGraph {
   public:
    /// Throws std::invalid_argument on out-of-range indices, self loops or a
    /// disconnected graph. Duplicate edges are merged.
    ChipGraph(int num_qubits, std::vector<Edge> edges);

    /// The 16-qubit heavy-hex device with the (1, 4) coupling removed, which
    /// leaves an open chain-like tree.
    static ChipGraph guadalupe();

    /// Reads {"num_qubits": n, "edges": [[a, b], ...]}.
    static ChipGraph from_json(const nlohmann::json &j);
    static ChipGraph load(const std::string &path);
    nlohmann::json to_json() const;

    int num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Edge> &edges() const {
        return edges_;
    }
    const std::vector<int> &neighbors(int qubit) const;
    int degree(int qubit) const;
    bool contains_edge(int x, int y) const;

    /// True if the subgraph induced by `qubits` is connected (empty counts as not).
    bool is_connected(std::span<const int> qubits) const;

    /// Edges with both endpoints in `qubits`, sorted lexicographically.
    std::vector<Edge> induced_edges(std::span<const int> qubits) const;

   private:
    int num_qubits_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adjacency_;
};

/// Connected set of physical qubits on which one circuit is placed.
struct QubitSection {
    std::vector<int> qubits;  // strictly ascending
    std::vector<Edge> edges;  // induced, lexicographic

    int size() const {
        return static_cast<int>(qubits.size());
    }
    /// Tensor position of a physical qubit, or -1 if it is not in the section.
    int position_of(int physical) const;

    bool operator==(const QubitSection &) const = default;
};

/// Validates (ascending, in range, connected, N >= 2) and fills induced edges.
QubitSection make_section(const ChipGraph &graph, std::vector<int> qubits);

/// Random connected section of n qubits: a uniform start qubit, then uniform
/// picks from the neighbor frontier of the current set until it holds n.
QubitSection sample_section(const ChipGraph &graph, int n, Rng &rng);

}  // namespace qsynergy

#endif
