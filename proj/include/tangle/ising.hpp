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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tangle/polynomial.hpp"

namespace tangle {

/// Diagonal Hamiltonian: constant + sum of coeff * prod Z_i over qubit sets.
///
/// Z eigenvalue convention: bit 0 -> +1, bit 1 -> -1. Qubit i is bit i of a
/// basis index. The empty set is never stored in `terms`; it lives in
/// `constant`.
class IsingPolynomial {
   public:
    IsingPolynomial() = default;
    explicit IsingPolynomial(std::uint32_t num_qubits, double constant = 0.0)
        : num_qubits_(num_qubits), constant_(constant) {
    }

    std::uint32_t num_qubits() const {
        return num_qubits_;
    }
    double constant() const {
        return constant_;
    }
    const std::map<Monomial, double> &terms() const {
        return terms_;
    }
    double coefficient(std::vector<std::uint32_t> qubits) const;
    std::size_t degree() const;

    /// Adds coeff * Z_S. Repeated qubits cancel pairwise (Z^2 = 1).
    void add_term(std::vector<std::uint32_t> qubits, double coeff);

    bool operator==(const IsingPolynomial &) const = default;

   private:
    std::uint32_t num_qubits_ = 0;
    double constant_ = 0.0;
    std::map<Monomial, double> terms_;
};

/// Substitutes x_i -> (1 - Z_i) / 2 and collects terms.
IsingPolynomial to_ising(const BinaryPolynomial &p);

/// constant + sum coeff * prod (1 - 2 x_i).
double ising_energy(const IsingPolynomial &h, std::span<const std::uint8_t> bits);

constexpr std::uint32_t kDefaultQubitCap = 26;

/// Energy of every basis state, index bit i = qubit i. Uses a fast
/// Walsh-Hadamard transform of the coefficient table.
std::vector<double> diagonal(const IsingPolynomial &h, std::uint32_t max_qubits = kDefaultQubitCap);

/// Polynomial JSON plus a "constant" field.
std::string ising_to_json(const IsingPolynomial &h);
IsingPolynomial ising_from_json(const std::string &text);

}  // namespace tangle
