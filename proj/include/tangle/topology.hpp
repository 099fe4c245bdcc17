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
#include <string>
#include <utility>
#include <vector>

namespace tangle {

enum class TopologyKind { Linear, Grid, HeavyHex, Custom };

/// Undirected qubit coupling graph.
class Topology {
   public:
    using Coupling = std::pair<std::uint32_t, std::uint32_t>;

    /// Edges are normalised to (low, high), deduplicated and sorted.
    Topology(std::uint32_t num_qubits, std::vector<Coupling> edges, TopologyKind kind = TopologyKind::Custom,
             std::string name = "custom");

    static Topology linear(std::uint32_t n);
    static Topology grid(std::uint32_t rows, std::uint32_t cols);
    /// A row of `cells` hexagonal cells with a coupler qubit on every edge,
    /// plus one pendant qubit on each outer degree-2 corner that joins the
    /// next row on a full device. 11 * cells + 3 qubits, max degree 3.
    static Topology heavy_hex(std::uint32_t cells);

    std::uint32_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Coupling> &edges() const {
        return edges_;
    }
    TopologyKind kind() const {
        return kind_;
    }
    const std::string &name() const {
        return name_;
    }
    const std::vector<std::uint32_t> &neighbours(std::uint32_t q) const {
        return adjacency_.at(q);
    }
    bool coupled(std::uint32_t a, std::uint32_t b) const;
    std::size_t edge_index(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t max_degree() const;
    bool connected() const;
    bool bipartite() const;
    /// BFS hop distance; UINT32_MAX when unreachable.
    std::uint32_t distance(std::uint32_t a, std::uint32_t b) const {
        return distances_.at(a).at(b);
    }
    std::uint32_t diameter() const;
    /// Shortest path a..b inclusive, preferring lower-index hops.
    std::vector<std::uint32_t> shortest_path(std::uint32_t a, std::uint32_t b) const;
    /// Whether the qubit set induces a connected subgraph. Requires <= 64 qubits.
    bool induces_connected(std::uint64_t mask) const;
    std::uint64_t neighbour_mask(std::uint32_t q) const {
        return neighbour_masks_.at(q);
    }

   private:
    std::uint32_t num_qubits_;
    std::vector<Coupling> edges_;
    TopologyKind kind_;
    std::string name_;
    std::vector<std::vector<std::uint32_t>> adjacency_;
    std::vector<std::vector<std::uint32_t>> distances_;
    std::vector<std::uint64_t> neighbour_masks_;
};

/// Parses "linear:N", "grid:RxC" or "heavy-hex:C".
Topology build_topology(const std::string &spec);

/// Partition of the edge set into matchings. Bipartite graphs get exactly
/// max-degree classes; other graphs at most max-degree + 1.
std::vector<std::vector<Topology::Coupling>> edge_colouring(const Topology &t);

/// Every connected induced vertex set of the given size, as bitmasks, in
/// ascending order. Requires <= 64 qubits.
std::vector<std::uint64_t> connected_sets(const Topology &t, std::uint32_t size);

}  // namespace tangle
