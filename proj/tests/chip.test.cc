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

#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "qsynergy/errors.h"

using namespace qsynergy;

namespace {

// Breadth-first connectivity over an explicit edge list.
bool bfs_connected(const std::vector<int> &nodes, const std::vector<Edge> &edges) {
    if (nodes.empty()) {
        return false;
    }
    std::set<int> in(nodes.begin(), nodes.end());
    std::set<int> seen = {nodes[0]};
    std::deque<int> queue = {nodes[0]};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (const auto &e : edges) {
            int other = e.a == v ? e.b : e.b == v ? e.a : -1;
            if (other >= 0 && in.count(other) && !seen.count(other)) {
                seen.insert(other);
                queue.push_back(other);
            }
        }
    }
    return seen.size() == in.size();
}

}  // namespace

TEST(chip, guadalupe_edges) {
    ChipGraph g = ChipGraph::guadalupe();
    ASSERT_EQ(g.num_qubits(), 16);
    std::vector<std::pair<int, int>> expected = {
        {0, 1}, {1, 2}, {2, 3}, {3, 5}, {5, 8}, {8, 9}, {8, 11}, {11, 14},
        {13, 14}, {12, 13}, {12, 15}, {10, 12}, {7, 10}, {6, 7}, {4, 7}};
    ASSERT_EQ(g.edges().size(), expected.size());
    for (auto [a, b] : expected) {
        ASSERT_TRUE(g.contains_edge(a, b)) << a << "-" << b;
        ASSERT_TRUE(g.contains_edge(b, a));
    }
    ASSERT_FALSE(g.contains_edge(1, 4));
    ASSERT_EQ(g.degree(0), 1);
    for (int pendant : {0, 6, 9, 15}) {
        ASSERT_EQ(g.degree(pendant), 1);
    }
    std::vector<int> all(16);
    for (int k = 0; k < 16; k++) {
        all[k] = k;
    }
    ASSERT_TRUE(g.is_connected(all));
    ASSERT_TRUE(bfs_connected(all, g.edges()));
}

TEST(chip, rejects_bad_graphs) {
    ASSERT_THROW(ChipGraph(3, {Edge::make(0, 1)}), std::invalid_argument);
    ASSERT_THROW(ChipGraph(2, {Edge::make(0, 2)}), std::invalid_argument);
    ASSERT_THROW(ChipGraph(2, {Edge{1, 1}}), std::invalid_argument);
    ChipGraph dup(2, {Edge::make(0, 1), Edge::make(1, 0)});
    ASSERT_EQ(dup.edges().size(), 1u);
}

TEST(chip, json_round_trip) {
    ChipGraph g = ChipGraph::guadalupe();
    ChipGraph back = ChipGraph::from_json(g.to_json());
    ASSERT_EQ(back.edges(), g.edges());
    ASSERT_EQ(back.num_qubits(), 16);
    ChipGraph line = ChipGraph::from_json(nlohmann::json::parse(R"({"num_qubits": 3, "edges": [[0, 1], [2, 1]]})"));
    ASSERT_TRUE(line.contains_edge(1, 2));
    ASSERT_THROW(ChipGraph::load("/nonexistent/chip.json"), IoError);
}

TEST(chip, induced_edges_sorted) {
    ChipGraph g = ChipGraph::guadalupe();
    std::vector<int> q = {7, 10, 12, 13, 15};
    auto e = g.induced_edges(q);
    std::vector<Edge> expected = {Edge{7, 10}, Edge{10, 12}, Edge{12, 13}, Edge{12, 15}};
    ASSERT_EQ(e, expected);
}

TEST(chip, make_section_validates) {
    ChipGraph g = ChipGraph::guadalupe();
    QubitSection s = make_section(g, {1, 2, 3});
    ASSERT_EQ(s.edges.size(), 2u);
    ASSERT_EQ(s.position_of(2), 1);
    ASSERT_EQ(s.position_of(5), -1);
    ASSERT_THROW(make_section(g, {1, 4}), std::invalid_argument);
    ASSERT_THROW(make_section(g, {0}), std::invalid_argument);
    ASSERT_THROW(make_section(g, {2, 1}), std::invalid_argument);
    ASSERT_THROW(make_section(g, {0, 16}), std::invalid_argument);
}

TEST(chip, sample_whole_chip) {
    ChipGraph g = ChipGraph::guadalupe();
    Rng rng(11);
    QubitSection s = sample_section(g, 16, rng);
    for (int k = 0; k < 16; k++) {
        ASSERT_EQ(s.qubits[k], k);
    }
    ASSERT_EQ(s.edges.size(), 15u);
}

TEST(chip, sample_pair_is_edge) {
    ChipGraph g = ChipGraph::guadalupe();
    Rng rng(12);
    for (int k = 0; k < 100; k++) {
        QubitSection s = sample_section(g, 2, rng);
        ASSERT_TRUE(g.contains_edge(s.qubits[0], s.qubits[1]));
        ASSERT_EQ(s.edges.size(), 1u);
    }
}

TEST(chip, sample_is_deterministic) {
    ChipGraph g = ChipGraph::guadalupe();
    Rng a(99);
    Rng b(99);
    for (int k = 0; k < 20; k++) {
        ASSERT_EQ(sample_section(g, 4, a), sample_section(g, 4, b));
    }
}

TEST(chip, sampled_sections_are_connected_induced_subgraphs) {
    ChipGraph g = ChipGraph::guadalupe();
    Rng rng(13);
    for (int n = 2; n <= 16; n++) {
        for (int k = 0; k < 40; k++) {
            QubitSection s = sample_section(g, n, rng);
            ASSERT_EQ(s.size(), n);
            for (int j = 1; j < n; j++) {
                ASSERT_LT(s.qubits[j - 1], s.qubits[j]);
            }
            ASSERT_TRUE(bfs_connected(s.qubits, s.edges));
            size_t induced = 0;
            for (const auto &e : g.edges()) {
                std::set<int> in(s.qubits.begin(), s.qubits.end());
                induced += in.count(e.a) && in.count(e.b);
            }
            ASSERT_EQ(s.edges.size(), induced);
        }
    }
}

TEST(chip, pair_sampling_covers_every_edge) {
    ChipGraph g = ChipGraph::guadalupe();
    Rng rng(14);
    std::set<Edge> seen;
    for (int k = 0; k < 10000; k++) {
        QubitSection s = sample_section(g, 2, rng);
        seen.insert(s.edges[0]);
    }
    ASSERT_EQ(seen.size(), g.edges().size());
}

TEST(chip, sample_rejects_bad_sizes) {
    ChipGraph g = ChipGraph::guadalupe();
    Rng rng(1);
    ASSERT_THROW(sample_section(g, 1, rng), std::invalid_argument);
    ASSERT_THROW(sample_section(g, 17, rng), std::invalid_argument);
}
