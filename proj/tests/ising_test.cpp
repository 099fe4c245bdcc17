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

#include "tangle/ising.hpp"

#include <random>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "tangle/encoding.hpp"
#include "tangle/error.hpp"

using namespace tangle;

TEST(ising, substitution_examples) {
    const auto h0 = to_ising(BinaryPolynomial::variable(1, 0));
    ASSERT_EQ(h0.constant(), 0.5);
    ASSERT_EQ(h0.coefficient({0}), -0.5);

    BinaryPolynomial p(2);
    p.add_term({0, 1}, 1);
    const auto h = to_ising(p);
    ASSERT_EQ(h.constant(), 0.25);
    ASSERT_EQ(h.coefficient({0}), -0.25);
    ASSERT_EQ(h.coefficient({1}), -0.25);
    ASSERT_EQ(h.coefficient({0, 1}), 0.25);
}

TEST(ising, energy_examples) {
    IsingPolynomial z0(1);
    z0.add_term({0}, 1);
    ASSERT_EQ(ising_energy(z0, std::vector<std::uint8_t>{0}), 1.0);
    ASSERT_EQ(ising_energy(z0, std::vector<std::uint8_t>{1}), -1.0);
    IsingPolynomial zz(2);
    zz.add_term({0, 1}, 1);
    ASSERT_EQ(ising_energy(zz, std::vector<std::uint8_t>{0, 1}), -1.0);
    IsingPolynomial sq(2);
    sq.add_term({1, 0, 1}, 2);
    ASSERT_EQ(sq.coefficient({0}), 2.0);
}

TEST(ising, hubo_tangle2_exhaustive) {
    const auto p = encode_hubo(fixtures::tangle2(), 2);
    const auto h = to_ising(p);
    for (std::uint64_t x = 0; x < 16; ++x) {
        const auto bits = index_to_bits(x, 4);
        ASSERT_EQ(ising_energy(h, bits), eval_binary(p, bits));
    }
}

TEST(ising, random_polynomials) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint32_t n = 1 + rng() % 8;
        BinaryPolynomial p(n);
        for (int k = 0; k < 12; ++k) {
            std::vector<std::uint32_t> vars;
            for (std::uint32_t v = 0; v < n; ++v) {
                if (rng() % 3 == 0) {
                    vars.push_back(v);
                }
            }
            p.add_term(vars, static_cast<double>(static_cast<int>(rng() % 21) - 10));
        }
        const auto h = to_ising(p);
        std::vector<std::uint8_t> x(n);
        for (auto &b : x) {
            b = rng() & 1;
        }
        ASSERT_EQ(ising_energy(h, x), eval_binary(p, x));
    }
}

TEST(ising, diagonal_examples) {
    IsingPolynomial z0(1);
    z0.add_term({0}, 1);
    ASSERT_EQ(diagonal(z0), (std::vector<double>{1, -1}));
    ASSERT_EQ(diagonal(IsingPolynomial(2, 3.0)), (std::vector<double>{3, 3, 3, 3}));
    IsingPolynomial big(30);
    ASSERT_THROW(diagonal(big), SizeError);
}

TEST(ising, diagonal_matches_energy) {
    const auto g = fixtures::planted(4, 3, 3, 0.5);
    const auto h = to_ising(encode_hubo(g, 3));
    const auto diag = diagonal(h);
    for (std::uint64_t x = 0; x < diag.size(); ++x) {
        ASSERT_EQ(diag[x], ising_energy(h, index_to_bits(x, h.num_qubits())));
    }
}

TEST(ising, tangle2_ground_states) {
    const auto g = fixtures::tangle2();
    const auto h = to_ising(encode_hubo(g, 2));
    const auto diag = diagonal(h);
    std::vector<std::uint64_t> zeros;
    for (std::uint64_t x = 0; x < diag.size(); ++x) {
        if (diag[x] == 0.0) {
            zeros.push_back(x);
        }
    }
    std::vector<std::uint64_t> expected;
    for (const Walk &w : enumerate_optimal_walks(g, 2).walks) {
        expected.push_back(bits_to_index(encode_walk_hubo(w, HuboLayout::for_graph(2, 2))));
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(zeros, expected);
    ASSERT_EQ(*std::min_element(diag.begin(), diag.end()), 0.0);
}

TEST(ising, json_round_trip) {
    const auto h = to_ising(encode_qubo(fixtures::tangle2(), 2));
    const auto back = ising_from_json(ising_to_json(h));
    ASSERT_EQ(back, h);
    ASSERT_NE(ising_to_json(h).find("\"constant\""), std::string::npos);
}
