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

namespace tangle {

/// Sorted, duplicate-free list of variable indices. The empty monomial is the
/// constant term.
using Monomial = std::vector<std::uint32_t>;

/// Sparse multilinear polynomial over {0,1} variables.
///
/// x^2 = x is applied on insertion, so every stored monomial is a set; zero
/// coefficients are never stored. Coefficients are doubles but every encoder
/// in this library produces integers for integer inputs, which doubles hold
/// exactly up to 2^53.
class BinaryPolynomial {
   public:
    BinaryPolynomial() = default;
    explicit BinaryPolynomial(std::uint32_t num_vars) : num_vars_(num_vars) {
    }

    static BinaryPolynomial constant(std::uint32_t num_vars, double value);
    static BinaryPolynomial variable(std::uint32_t num_vars, std::uint32_t index);

    std::uint32_t num_vars() const {
        return num_vars_;
    }
    const std::map<Monomial, double> &terms() const {
        return terms_;
    }
    std::size_t num_terms() const {
        return terms_.size();
    }
    /// Coefficient of a monomial given in any order; 0 when absent.
    double coefficient(std::vector<std::uint32_t> vars) const;
    double constant_term() const;
    std::size_t degree() const;

    /// Adds coeff * prod(vars). Repeated indices collapse.
    void add_term(std::vector<std::uint32_t> vars, double coeff);

    BinaryPolynomial &operator+=(const BinaryPolynomial &other);
    BinaryPolynomial &operator-=(const BinaryPolynomial &other);
    BinaryPolynomial &operator*=(double scale);
    BinaryPolynomial &operator+=(double value);

    friend BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial &b) {
        return a += b;
    }
    friend BinaryPolynomial operator-(BinaryPolynomial a, const BinaryPolynomial &b) {
        return a -= b;
    }
    friend BinaryPolynomial operator*(BinaryPolynomial a, double s) {
        return a *= s;
    }
    friend BinaryPolynomial operator*(double s, BinaryPolynomial a) {
        return a *= s;
    }
    friend BinaryPolynomial operator*(const BinaryPolynomial &a, const BinaryPolynomial &b);

    bool operator==(const BinaryPolynomial &other) const = default;

   private:
    std::uint32_t num_vars_ = 0;
    std::map<Monomial, double> terms_;
};

/// Sum of coefficient * product of bits. |bits| must equal num_vars.
double eval_binary(const BinaryPolynomial &p, std::span<const std::uint8_t> bits);

/// Value of p at every assignment, indexed by the integer whose bit i is x_i.
/// Subset-sum transform, O(n 2^n). num_vars must be at most `max_vars`.
std::vector<double> eval_all(const BinaryPolynomial &p, std::uint32_t max_vars = 26);

/// Bits of an assignment index, LSB first.
std::vector<std::uint8_t> index_to_bits(std::uint64_t index, std::uint32_t n);
std::uint64_t bits_to_index(std::span<const std::uint8_t> bits);

/// {"n_vars": n, "terms": [{"vars": [...], "c": coeff}, ...]}
std::string polynomial_to_json(const BinaryPolynomial &p);
BinaryPolynomial polynomial_from_json(const std::string &text);

}  // namespace tangle
