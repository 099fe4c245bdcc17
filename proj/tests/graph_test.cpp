// Copyright 2026 The tangle Authors
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

#include "tangle/graph.hpp"

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "tangle/error.hpp"

using namespace tangle;

TEST(graph, oriented_ids) {
    ASSERT_EQ(oriented(3, false), 6u);
    ASSERT_EQ(oriented(3, true), 7u);
    ASSERT_EQ(node_of(7), 3u);
    ASSERT_TRUE(is_negative(7));
    ASSERT_EQ(flip(6), 7u);
    ASSERT_EQ(flip(7), 6u);
}

TEST(graph, constructor_rejects_open_edge_sets) {
    ASSERT_THROW(OrientedGraph(2, {1, 1}, {{0, 2}}), DomainError);
    ASSERT_THROW(OrientedGraph(2, {1, 1}, {{0, 4}, {5, 1}}), DomainError);
    ASSERT_THROW(OrientedGraph(2, {1}, {}), DomainError);
    ASSERT_THROW(OrientedGraph(2, {1, -1}, {}), DomainError);
    const auto g = OrientedGraph::with_closure(2, {1, 1}, {{0, 2}});
    ASSERT_TRUE(g.has_edge(3, 1));
}

TEST(graph, walk_cost_examples) {
    const auto g = fixtures::tangle2();
    ASSERT_EQ(walk_cost(g, Walk{{0, 2}}), 0);
    ASSERT_EQ(walk_cost(g, Walk{{0, 0}}), 2);
    ASSERT_EQ(walk_cost(g, Walk{{0, 1}}), 2);
    ASSERT_THROW(walk_cost(g, Walk{{0, 4}}), DomainError);
}

TEST(graph, walk_validity) {
    const auto g = fixtures::tangle2();
    ASSERT_TRUE(is_valid_walk(g, Walk{{0, 2, 0}}));
    ASSERT_FALSE(is_valid_walk(g, Walk{{0, 1}}));
    ASSERT_EQ(broken_edges(g, Walk{{0, 2, 1, 3}}), (std::vector<std::size_t>{1}));
    ASSERT_EQ(visit_counts(g, Walk{{0, 1, 2}}), (std::vector<std::int64_t>{2, 1}));
}

TEST(graph, default_walk_length) {
    ASSERT_EQ(default_walk_length(fixtures::tangle2()), 2u);
    ASSERT_EQ(default_walk_length(OrientedGraph(1, {3}, {})), 3u);
    ASSERT_EQ(default_walk_length(OrientedGraph(3, {2, 1, 1}, {})), 4u);
    ASSERT_THROW(default_walk_length(OrientedGraph(2, {0, 0}, {})), DomainError);
}

TEST(graph, enumerate_optimal_walks_examples) {
    const auto best = enumerate_optimal_walks(fixtures::tangle2(), 2);
    ASSERT_EQ(best.min_cost, 0);
    ASSERT_EQ(best.walks, (std::vector<Walk>{{{0, 2}}, {{1, 3}}, {{2, 0}}, {{3, 1}}}));

    const auto loop = enumerate_optimal_walks(OrientedGraph(1, {2}, {{0, 0}, {1, 1}}), 2);
    ASSERT_EQ(loop.min_cost, 0);
    ASSERT_EQ(loop.walks, (std::vector<Walk>{{{0, 0}}, {{1, 1}}}));

    const auto none = enumerate_optimal_walks(OrientedGraph(2, {1, 1}, {}), 2);
    ASSERT_FALSE(none.has_walk());
    ASSERT_TRUE(none.walks.empty());
}

TEST(graph, enumeration_cap) {
    ASSERT_THROW(enumerate_optimal_walks(fixtures::tangle2(), 12, 1000), SizeError);
    ASSERT_NO_THROW(enumerate_optimal_walks(fixtures::tangle2(), 4, 256));
}

TEST(graph, generator_invariants_and_determinism) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        TangleParams p{seed, 1 + static_cast<std::uint32_t>(seed % 4), 2, 0.4, std::nullopt};
        const auto g = generate_tangle(p);
        for (const auto &[a, b] : g.edges()) {
            ASSERT_TRUE(g.has_edge(flip(b), flip(a)));
            ASSERT_LT(a, g.oriented_count());
            ASSERT_LT(b, g.oriented_count());
        }
        ASSERT_EQ(g, generate_tangle(p));
        const Walk planted = planted_walk(p);
        ASSERT_TRUE(is_valid_walk(g, planted));
        ASSERT_EQ(walk_cost(g, planted), 0);
    }
}

TEST(graph, generated_optimum_is_zero) {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        TangleParams p{seed, 2 + static_cast<std::uint32_t>(seed % 2), 2, 0.3, std::nullopt};
        const auto g = generate_tangle(p);
        const auto best = enumerate_optimal_walks(g, default_walk_length(g));
        ASSERT_EQ(best.min_cost, 0) << "seed " << seed;
    }
}

TEST(graph, generator_with_walk_length) {
    const auto g = fixtures::planted(4, 3, 5);
    ASSERT_EQ(default_walk_length(g), 5u);
    TangleParams bad{1, 4, 1, 0.0, 2u};
    ASSERT_THROW(generate_tangle(bad), DomainError);
}

TEST(graph, cost_invariant_under_reverse_complement) {
    const auto g = fixtures::planted(7, 3, 4, 0.6);
    for (const Walk &w : enumerate_optimal_walks(g, 4).walks) {
        Walk rc;
        for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) {
            rc.steps.push_back(flip(*it));
        }
        ASSERT_EQ(walk_cost(g, w), walk_cost(g, rc));
        ASSERT_TRUE(is_valid_walk(g, rc));
    }
}

TEST(graph, oracle_agrees_with_walk_cost) {
    const auto g = fixtures::planted(11, 3, 4, 0.5);
    const auto best = enumerate_optimal_walks(g, 3);
    ASSERT_TRUE(best.has_walk());
    for (const Walk &w : best.walks) {
        ASSERT_EQ(walk_cost(g, w), *best.min_cost);
    }
}

TEST(graph, json_round_trip) {
    const auto g = fixtures::planted(3, 4, 6);
    ASSERT_EQ(graph_from_json(graph_to_json(g)), g);
}

TEST(graph, json_diagnostics) {
    try {
        graph_from_json("{\n  \"n\": 2,\n  \"weights\": [1, 1],\n  \"edges\": [\n    [0, 2],\n    [0, 9]\n  ]\n}\n");
        FAIL() << "expected a parse error";
    } catch (const ParseError &e) {
        ASSERT_NE(std::string(e.what()).find("line 6"), std::string::npos) << e.what();
    }
    ASSERT_THROW(graph_from_json("{\"n\": 2, \"weights\": [1, 1], \"edges\": [[0, 2]]}"), ParseError);
    ASSERT_THROW(graph_from_json("{\"n\": 2,"), ParseError);
}
