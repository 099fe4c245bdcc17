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

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace tangle {

/// Oriented vertex id. Node v in positive orientation is 2v, negative is 2v+1.
using OrientedId = std::uint32_t;

constexpr OrientedId oriented(std::uint32_t node, bool negative) {
    return 2 * node + (negative ? 1 : 0);
}
constexpr std::uint32_t node_of(OrientedId id) {
    return id >> 1;
}
constexpr bool is_negative(OrientedId id) {
    return (id & 1) != 0;
}
/// The same node in the opposite orientation.
constexpr OrientedId flip(OrientedId id) {
    return id ^ 1u;
}

using Edge = std::pair<OrientedId, OrientedId>;

/// A vertex-weighted oriented pangenome tangle.
///
/// Edges are kept closed under reverse complement: (a, b) is present iff
/// (flip(b), flip(a)) is present. The constructor enforces this and throws
/// DomainError on any violation; it does not silently add missing mates.
class OrientedGraph {
   public:
    OrientedGraph(std::uint32_t node_count, std::vector<std::int64_t> weights, std::set<Edge> edges);

    /// Adds reverse-complement mates for every edge before validating.
    static OrientedGraph with_closure(std::uint32_t node_count, std::vector<std::int64_t> weights,
                                      const std::vector<Edge> &edges);

    std::uint32_t node_count() const {
        return node_count_;
    }
    std::uint32_t oriented_count() const {
        return 2 * node_count_;
    }
    std::int64_t weight(std::uint32_t node) const {
        return weights_.at(node);
    }
    const std::vector<std::int64_t> &weights() const {
        return weights_;
    }
    const std::set<Edge> &edges() const {
        return edges_;
    }
    bool has_edge(OrientedId from, OrientedId to) const;
    /// Successors of an oriented vertex, ascending.
    const std::vector<OrientedId> &successors(OrientedId from) const {
        return adjacency_.at(from);
    }

    bool operator==(const OrientedGraph &other) const {
        return node_count_ == other.node_count_ && weights_ == other.weights_ && edges_ == other.edges_;
    }

   private:
    std::uint32_t node_count_;
    std::vector<std::int64_t> weights_;
    std::set<Edge> edges_;
    std::vector<std::vector<OrientedId>> adjacency_;
};

/// A sequence of oriented vertices. Validity against a graph is a separate
/// predicate so that infeasible decodes remain representable.
struct Walk {
    std::vector<OrientedId> steps;

    bool operator==(const Walk &) const = default;
    auto operator<=>(const Walk &) const = default;
};

bool is_valid_walk(const OrientedGraph &g, const Walk &w);

/// Indices t such that (steps[t], steps[t+1]) is not an edge.
std::vector<std::size_t> broken_edges(const OrientedGraph &g, const Walk &w);

/// Per-node visit counts, both orientations combined.
std::vector<std::int64_t> visit_counts(const OrientedGraph &g, const Walk &w);

/// Squared deviation of per-node visit counts from the node weights.
std::int64_t walk_cost(const OrientedGraph &g, const Walk &w);

/// Sum of node weights; the walk length implied by the copy numbers.
std::uint32_t default_walk_length(const OrientedGraph &g);

struct OptimalWalks {
    /// Empty when no valid walk of the requested length exists.
    std::optional<std::int64_t> min_cost;
    std::vector<Walk> walks;

    bool has_walk() const {
        return min_cost.has_value();
    }
};

constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

/// Exhaustive oracle: scores every valid walk of length T and returns all
/// minimisers in lexicographic order. Refuses with SizeError when (2N)^T
/// exceeds `cap`.
OptimalWalks enumerate_optimal_walks(const OrientedGraph &g, std::uint32_t length,
                                     std::uint64_t cap = kDefaultEnumerationCap);

struct TangleParams {
    std::uint64_t seed = 1;
    std::uint32_t nodes = 2;
    std::uint32_t max_weight = 1;
    /// Probability that each additional ordered oriented pair becomes an edge.
    double edge_density = 0.0;
    /// When set, node weights are redrawn until they sum to this length.
    std::optional<std::uint32_t> walk_length;
};

/// Synthetic tangle with a planted walk. The planted walk visits every node
/// exactly weight(v) times, so the optimal cost is always 0.
OrientedGraph generate_tangle(const TangleParams &params);

/// The planted walk used by generate_tangle for the same parameters.
Walk planted_walk(const TangleParams &params);

/// {"n": N, "weights": [...], "edges": [[a,b],...]}
std::string graph_to_json(const OrientedGraph &g);
/// Throws ParseError with the offending line on malformed input or violated
/// invariants.
OrientedGraph graph_from_json(const std::string &text);

}  // namespace tangle
