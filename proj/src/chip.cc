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

#include "qsynergy/chip.h"

#include <algorithm>
#include <fstream>
#include <queue>
#include <stdexcept>

#include "qsynergy/errors.h"

namespace qsynergy {

Edge Edge::make(int x, int y) {
    return x < y ? Edge{x, y} : Edge{y, x};
}

ChipGraph::ChipGraph(int num_qubits, std::vector<Edge> edges) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("ChipGraph: num_qubits must be positive");
    }
    for (auto &e : edges) {
        e = Edge::make(e.a, e.b);
        if (e.a < 0 || e.b >= num_qubits) {
            throw std::invalid_argument("ChipGraph: edge index out of range");
        }
        if (e.a == e.b) {
            throw std::invalid_argument("ChipGraph: self loop");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adjacency_.resize(num_qubits);
    for (const auto &e : edges_) {
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
    }

    std::vector<int> all(num_qubits);
    for (int q = 0; q < num_qubits; q++) {
        all[q] = q;
    }
    if (!is_connected(all)) {
        throw std::invalid_argument("ChipGraph: graph is not connected");
    }
}

ChipGraph ChipGraph::guadalupe() {
    return ChipGraph(
        16,
        {
            {0, 1},
            {1, 2},
            {2, 3},
            {3, 5},
            {5, 8},
            {8, 9},
            {8, 11},
            {11, 14},
            {13, 14},
            {12, 13},
            {12, 15},
            {10, 12},
            {7, 10},
            {6, 7},
            {4, 7},
        });
}

ChipGraph ChipGraph::from_json(const nlohmann::json &j) {
    try {
        int n = j.at("num_qubits").get<int>();
        std::vector<Edge> edges;
        for (const auto &pair : j.at("edges")) {
            if (pair.size() != 2) {
                throw std::invalid_argument("ChipGraph: edge must be a pair");
            }
            edges.push_back(Edge::make(pair[0].get<int>(), pair[1].get<int>()));
        }
        return ChipGraph(n, std::move(edges));
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument(std::string("ChipGraph: malformed json: ") + ex.what());
    }
}

ChipGraph ChipGraph::load(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open chip file " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &ex) {
        throw std::invalid_argument("chip file " + path + ": " + ex.what());
    }
    return from_json(j);
}

nlohmann::json ChipGraph::to_json() const {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &e : edges_) {
        edges.push_back({e.a, e.b});
    }
    return {{"num_qubits", num_qubits_}, {"edges", edges}};
}

const std::vector<int> &ChipGraph::neighbors(int qubit) const {
    return adjacency_.at(qubit);
}

int ChipGraph::degree(int qubit) const {
    return static_cast<int>(neighbors(qubit).size());
}

bool ChipGraph::contains_edge(int x, int y) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge::make(x, y));
}

bool ChipGraph::is_connected(std::span<const int> qubits) const {
    if (qubits.empty()) {
        return false;
    }
    std::vector<char> member(num_qubits_, 0);
    for (int q : qubits) {
        if (q < 0 || q >= num_qubits_) {
            return false;
        }
        member[q] = 1;
    }
    std::vector<char> seen(num_qubits_, 0);
    std::queue<int> todo;
    todo.push(qubits[0]);
    seen[qubits[0]] = 1;
    size_t reached = 0;
    while (!todo.empty()) {
        int q = todo.front();
        todo.pop();
        reached++;
        for (int nb : adjacency_[q]) {
            if (member[nb] && !seen[nb]) {
                seen[nb] = 1;
                todo.push(nb);
            }
        }
    }
    size_t distinct = std::count(member.begin(), member.end(), 1);
    return reached == distinct;
}

std::vector<Edge> ChipGraph::induced_edges(std::span<const int> qubits) const {
    std::vector<char> member(num_qubits_, 0);
    for (int q : qubits) {
        member.at(q) = 1;
    }
    std::vector<Edge> out;
    for (const auto &e : edges_) {
        if (member[e.a] && member[e.b]) {
            out.push_back(e);
        }
    }
    return out;
}

int QubitSection::position_of(int physical) const {
    auto it = std::lower_bound(qubits.begin(), qubits.end(), physical);
    if (it == qubits.end() || *it != physical) {
        return -1;
    }
    return static_cast<int>(it - qubits.begin());
}

QubitSection make_section(const ChipGraph &graph, std::vector<int> qubits) {
    if (qubits.size() < 2) {
        throw std::invalid_argument("section needs at least 2 qubits");
    }
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] < 0 || qubits[k] >= graph.num_qubits()) {
            throw std::invalid_argument("section qubit out of range");
        }
        if (k > 0 && qubits[k] <= qubits[k - 1]) {
            throw std::invalid_argument("section qubits must be strictly ascending");
        }
    }
    if (!graph.is_connected(qubits)) {
        throw std::invalid_argument("section is not connected");
    }
    QubitSection section;
    section.edges = graph.induced_edges(qubits);
    section.qubits = std::move(qubits);
    return section;
}

QubitSection sample_section(const ChipGraph &graph, int n, Rng &rng) {
    if (n < 2 || n > graph.num_qubits()) {
        throw std::invalid_argument(
            "sample_section: n must lie in [2, " + std::to_string(graph.num_qubits()) + "]");
    }
    std::vector<char> member(graph.num_qubits(), 0);
    std::vector<int> chosen;
    int start = static_cast<int>(uniform_index(rng, graph.num_qubits()));
    member[start] = 1;
    chosen.push_back(start);
    std::vector<int> frontier;
    while (static_cast<int>(chosen.size()) < n) {
        frontier.clear();
        for (int q : chosen) {
            for (int nb : graph.neighbors(q)) {
                if (!member[nb]) {
                    frontier.push_back(nb);
                }
            }
        }
        std::sort(frontier.begin(), frontier.end());
        frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
        int pick = frontier[uniform_index(rng, frontier.size())];
        member[pick] = 1;
        chosen.push_back(pick);
    }
    std::sort(chosen.begin(), chosen.end());
    return make_section(graph, std::move(chosen));
}

}  // namespace qsynergy
