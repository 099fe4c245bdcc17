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
#include <vector>

namespace tangle {

/// Gate set of the circuit IR. Rotation conventions:
///   RY(t) = exp(-i t Y / 2), RZ(t) = exp(-i t Z / 2),
///   RZZ(t) = exp(-i t Z_a Z_b / 2), MRZ(t) = exp(-i t Z_S / 2).
/// MRZ (multi-qubit Z rotation) only appears in logical circuits.
enum class GateKind { RY, RZ, CX, RZZ, SWAP, MRZ };

std::string gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string &name);

struct Gate {
    GateKind kind;
    double theta = 0.0;
    /// CX: {control, target}. MRZ: sorted qubit set.
    std::vector<std::uint32_t> qubits;

    bool is_two_qubit() const {
        return kind == GateKind::CX || kind == GateKind::RZZ || kind == GateKind::SWAP;
    }
    /// Diagonal in the computational basis.
    bool is_diagonal() const {
        return kind == GateKind::RZ || kind == GateKind::RZZ || kind == GateKind::MRZ;
    }
    bool operator==(const Gate &) const = default;
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(std::uint32_t num_qubits) : num_qubits_(num_qubits) {
    }

    std::uint32_t num_qubits() const {
        return num_qubits_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }
    std::vector<Gate> &gates() {
        return gates_;
    }

    /// Appends after validating qubit indices and arity.
    void append(Gate gate);
    void ry(double theta, std::uint32_t q) {
        append({GateKind::RY, theta, {q}});
    }
    void rz(double theta, std::uint32_t q) {
        append({GateKind::RZ, theta, {q}});
    }
    void cx(std::uint32_t control, std::uint32_t target) {
        append({GateKind::CX, 0.0, {control, target}});
    }
    void rzz(double theta, std::uint32_t a, std::uint32_t b) {
        append({GateKind::RZZ, theta, {a, b}});
    }
    void swap(std::uint32_t a, std::uint32_t b) {
        append({GateKind::SWAP, 0.0, {a, b}});
    }
    void mrz(double theta, std::vector<std::uint32_t> qubits);

    bool operator==(const Circuit &) const = default;

   private:
    std::uint32_t num_qubits_ = 0;
    std::vector<Gate> gates_;
};

/// Two-qubit accounting: a SWAP counts as three CX for both count and depth.
struct CircuitMetrics {
    std::uint64_t two_qubit_count = 0;
    std::uint64_t two_qubit_depth = 0;
    std::uint64_t total_ops = 0;

    bool operator==(const CircuitMetrics &) const = default;
};

/// ASAP layering: a gate starts after every earlier gate on any of its
/// qubits. Single-qubit gates do not add two-qubit depth.
CircuitMetrics circuit_metrics(const Circuit &c);

/// Text format, one gate per line: `GATE theta q0 [q1 ...]`, preceded by a
/// `qubits N` header. '#' starts a comment.
std::string circuit_to_text(const Circuit &c);
Circuit circuit_from_text(const std::string &text);

/// A physical circuit plus where each logical qubit sits before and after.
struct PlacedCircuit {
    Circuit circuit;
    std::vector<std::uint32_t> initial_layout;
    std::vector<std::uint32_t> final_layout;
};

/// Identity placement of a logical circuit.
PlacedCircuit place_identity(const Circuit &c);

/// True when both circuits act identically on every logical basis state up to
/// one global phase, after undoing their layouts. Physical qubits not holding
/// a logical qubit must start and end in |0>. Circuits made only of diagonal
/// and permutation gates are checked by tracking basis states exactly; others
/// fall back to dense simulation, which needs at most 10 logical and 16 active
/// physical qubits.
bool verify_equivalence(const PlacedCircuit &a, const PlacedCircuit &b, double tol = 1e-8);
bool verify_equivalence(const Circuit &a, const Circuit &b, double tol = 1e-8);

}  // namespace tangle
