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
#include <string>
#include <vector>

#include "tangle/circuit.hpp"
#include "tangle/ising.hpp"
#include "tangle/qaoa.hpp"
#include "tangle/topology.hpp"

namespace tangle {

/// Logical warm-started QAOA circuit: an RY(phi_i) preparation layer, then
/// per layer one RZ or MRZ(2 gamma c) per Ising term followed by
/// RY(-phi) RZ(-2 beta) RY(phi) on every qubit. The constant is dropped.
Circuit qaoa_circuit(const IsingPolynomial &h, const QaoaSchedule &schedule, const PriorDistribution &prior);

/// Cost layer only: MRZ(2 gamma c) / RZ per term, no mixer or preparation.
Circuit cost_layer(const IsingPolynomial &h, double gamma);

/// Distinct qubit sets of size >= 2 touched by RZZ or MRZ gates, sorted.
std::vector<Monomial> interactions(const Circuit &c);

/// Placement plan for one phase block: layouts (logical -> physical) for
/// segments 0..d and the SWAP matchings applied between them.
struct LayoutPlan {
    std::vector<std::vector<std::uint32_t>> segments;
    std::vector<std::vector<Topology::Coupling>> swap_layers;
};

struct CompiledCircuit {
    PlacedCircuit placed;
    /// Logical -> physical layout at the start of every segment, in order.
    std::vector<std::vector<std::uint32_t>> segment_layouts;
    CircuitMetrics metrics;
    std::string method;
    /// SWAP layers per phase block chosen by the parity compiler.
    std::uint32_t swap_depth = 0;
};

/// CX-ladder baseline. Layout is the identity for seed 0, else a seeded
/// random placement. Non-adjacent operands are routed with SWAPs along
/// shortest paths.
CompiledCircuit compile_naive(const Circuit &c, const Topology &t, std::uint64_t layout_seed = 0);

struct ParityOptions {
    /// Fixed layout for the first phase block, e.g. from a MAX-SAT solver.
    std::optional<LayoutPlan> layout;
    /// SWAP depths to try; empty means {0, 1, 2, 3, diameter}.
    std::vector<std::uint32_t> depth_candidates;
    /// Largest interaction the layout search tries to make local.
    std::uint32_t max_order = 6;
    /// Verifies each compiled phase block against the logical one.
    bool self_check = true;
    /// Returns the naive compilation when it uses fewer two-qubit gates.
    bool naive_fallback = true;
    std::uint64_t seed = 0;
};

/// Parity-network compilation: each multi-qubit Z rotation becomes a CX tree
/// collecting parity into a coupled pair, rotated with one RZZ. Rotations are
/// ordered to maximise CX cancellation between neighbours.
CompiledCircuit compile_parity(const Circuit &c, const Topology &t, const ParityOptions &options = {});

/// Removes CX pairs that meet after commuting through intervening gates.
std::vector<Gate> cancel_cx(const std::vector<Gate> &gates);

/// Logical circuit size up to which compile_parity runs its self-check.
inline constexpr std::uint32_t kSelfCheckQubits = 20;

}  // namespace tangle
