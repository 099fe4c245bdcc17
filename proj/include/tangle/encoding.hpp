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
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tangle/graph.hpp"
#include "tangle/polynomial.hpp"

namespace tangle {

/// One-hot layout: variable (t, a) is set when step t visits oriented vertex a.
/// Steps are 0-based here; var(t, a) = t * 2N + a.
struct QuboLayout {
    std::uint32_t steps;
    std::uint32_t nodes;

    std::uint32_t num_vars() const {
        return 2 * nodes * steps;
    }
    std::uint32_t var(std::uint32_t t, OrientedId a) const {
        return t * 2 * nodes + a;
    }
};

/// Binary layout: step t stores its oriented vertex id in `bits` variables,
/// least significant bit first. var(t, k) = t * bits + k.
struct HuboLayout {
    std::uint32_t steps;
    std::uint32_t nodes;
    std::uint32_t bits;

    static HuboLayout for_graph(std::uint32_t nodes, std::uint32_t steps);

    std::uint32_t num_vars() const {
        return bits * steps;
    }
    std::uint32_t var(std::uint32_t t, std::uint32_t k) const {
        return t * bits + k;
    }
};

/// ceil(log2(2N)), the number of bits per step of the binary encoding.
std::uint32_t bits_per_step(std::uint32_t nodes);

constexpr double kDefaultQuboOneHot = 10.0;
constexpr double kDefaultQuboEdge = 5.0;
constexpr double kDefaultHuboEdge = 10.0;

/// One-hot penalty + edge-following penalty + frequency term over 2NT
/// variables. Degree <= 2.
BinaryPolynomial encode_qubo(const OrientedGraph &g, std::uint32_t steps, double one_hot_penalty = kDefaultQuboOneHot,
                             double edge_penalty = kDefaultQuboEdge);

/// Edge penalty + frequency term over ceil(log2 2N) * T variables.
BinaryPolynomial encode_hubo(const OrientedGraph &g, std::uint32_t steps, double edge_penalty = kDefaultHuboEdge);

/// Polynomial equal to 1 exactly when the bits of step t encode `value`.
BinaryPolynomial indicator_polynomial(std::uint32_t value, std::uint32_t t, const HuboLayout &layout);

/// Steps whose one-hot group has zero or several bits set.
struct OneHotViolation {
    std::vector<std::uint32_t> steps;
};

/// Steps whose encoded id is >= 2N.
struct OutOfRangeSteps {
    std::vector<std::uint32_t> steps;
    std::vector<std::uint32_t> values;
};

struct DecodedWalk {
    Walk walk;
    /// Steps t where (walk[t], walk[t+1]) is not an edge.
    std::vector<std::size_t> broken_edges;

    bool valid() const {
        return broken_edges.empty();
    }
};

using QuboDecode = std::variant<DecodedWalk, OneHotViolation>;
using HuboDecode = std::variant<DecodedWalk, OutOfRangeSteps>;

QuboDecode decode_qubo(std::span<const std::uint8_t> bits, const QuboLayout &layout, const OrientedGraph &g);
HuboDecode decode_hubo(std::span<const std::uint8_t> bits, const HuboLayout &layout, const OrientedGraph &g);

/// Inverse maps, used by tests and the pipeline to seed known assignments.
std::vector<std::uint8_t> encode_walk_qubo(const Walk &w, const QuboLayout &layout);
std::vector<std::uint8_t> encode_walk_hubo(const Walk &w, const HuboLayout &layout);

enum class EncodingKind { Qubo, Hubo };

std::string to_string(EncodingKind kind);
EncodingKind encoding_kind_from_string(const std::string &name);

/// Decoded walk as text, or a description of why the assignment is infeasible.
struct DecodeSummary {
    bool feasible = false;
    bool valid_walk = false;
    Walk walk;
    std::string note;
};

DecodeSummary decode(EncodingKind kind, std::span<const std::uint8_t> bits, const OrientedGraph &g,
                     std::uint32_t steps);

}  // namespace tangle
