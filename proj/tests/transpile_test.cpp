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

#include <cmath>
#include <complex>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "oracles.hpp"
#include "tangle/error.hpp"
#include "tangle/rng.hpp"
#include "tangle/transpile.hpp"

using namespace tangle;

namespace {

Circuit mrz_chain(const std::vector<std::vector<std::uint32_t>> &sets, std::uint32_t n) {
    Circuit c(n);
    double theta = 0.3;
    for (const auto &s : sets) {
        c.mrz(theta, s);
        theta += 0.17;
    }
    return c;
}

void expect_on_coupling_edges(const CompiledCircuit &cc, const Topology &t) {
    for (const Gate &g : cc.placed.circuit.gates()) {
        ASSERT_NE(g.kind, GateKind::MRZ);
        if (g.is_two_qubit()) {
            ASSERT_TRUE(t.coupled(g.qubits[0], g.qubits[1])) << gate_name(g.kind);
        }
    }
    ASSERT_EQ(cc.metrics, circuit_metrics(cc.placed.circuit));
}

/// Checks a compiled cost layer against exp(-i gamma (C(x) - const)) with a
/// dense matrix of the physical circuit.
void expect_dense_diagonal(const CompiledCircuit &cc, const IsingPolynomial &h, double gamma) {
    const auto u = oracle::circuit_unitary(cc.placed.circuit);
    const std::uint32_t n = h.num_qubits();
    std::complex<double> reference;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
        Eigen::Index in = 0, out = 0;
        for (std::uint32_t q = 0; q < n; ++q) {
            if ((x >> q) & 1) {
                in |= Eigen::Index{1} << cc.placed.initial_layout[q];
                out |= Eigen::Index{1} << cc.placed.final_layout[q];
            }
        }
        const double energy = ising_energy(h, index_to_bits(x, n)) - h.constant();
        const auto ratio = u(out, in) * std::polar(1.0, gamma * energy);
        ASSERT_NEAR(std::abs(u(out, in)), 1.0, 1e-9) << "x=" << x;
        if (x == 0) {
            reference = ratio;
        }
        ASSERT_LT(std::abs(ratio - reference), 1e-8) << "x=" << x;
    }
}

BinaryPolynomial random_hubo(std::uint32_t n, std::uint32_t max_order, std::uint64_t seed) {
    Rng rng(seed);
    BinaryPolynomial p(n);
    const auto terms = 2 + rng.below(2 * n);
    for (std::uint64_t k = 0; k < terms; ++k) {
        std::vector<std::uint32_t> vars;
        const auto order = 1 + rng.below(max_order);
        for (std::uint64_t j = 0; j < order; ++j) {
            vars.push_back(static_cast<std::uint32_t>(rng.below(n)));
        }
        p.add_term(vars, static_cast<double>(1 + rng.below(9)));
    }
    return p;
}

}  // namespace

TEST(transpile, qaoa_circuit_examples) {
    IsingPolynomial zz(2, 3.0);
    zz.add_term({0, 1}, 1.0);
    const auto c = qaoa_circuit(zz, lr_schedule(1, 1, 1), PriorDistribution{{0.5, 0.5}});
    std::size_t mrz = 0, ry = 0, rz = 0;
    for (const Gate &g : c.gates()) {
        mrz += g.kind == GateKind::MRZ;
        ry += g.kind == GateKind::RY;
        rz += g.kind == GateKind::RZ;
        if (g.kind == GateKind::MRZ) {
            ASSERT_EQ(g.qubits, (std::vector<std::uint32_t>{0, 1}));
            ASSERT_DOUBLE_EQ(g.theta, 2 * 0.5 * 1.0);
        }
    }
    ASSERT_EQ(mrz, 1u);
    ASSERT_EQ(ry, 2u + 4u);
    ASSERT_EQ(rz, 2u);

    const auto flat = qaoa_circuit(IsingPolynomial(3, 7.0), lr_schedule(2, 1, 1), PriorDistribution{{0.5, 0.5, 0.5}});
    for (const Gate &g : flat.gates()) {
        ASSERT_NE(g.kind, GateKind::MRZ);
    }
    ASSERT_TRUE(cost_layer(IsingPolynomial(3, 7.0), 0.4).gates().empty());
}

TEST(transpile, cost_layer_diagonal_action) {
    for (std::uint32_t n = 1; n <= 3; ++n) {
        const auto h = to_ising(random_hubo(n, 3, n));
        const double gamma = 0.37;
        const auto cc = compile_naive(cost_layer(h, gamma), Topology::linear(n));
        expect_dense_diagonal(cc, h, gamma);
    }
}

TEST(transpile, qaoa_circuit_matches_simulation) {
    for (std::uint32_t n = 2; n <= 4; ++n) {
        const auto h = to_ising(random_hubo(n, 3, 10 + n));
        PriorDistribution prior;
        for (std::uint32_t q = 0; q < n; ++q) {
            prior.probs.push_back(0.2 + 0.15 * q);
        }
        const auto s = lr_schedule(2, 0.8, 0.35);
        const auto u = oracle::circuit_unitary(qaoa_circuit(h, s, prior));
        const auto probs = simulate(h, prior, s);
        for (std::size_t x = 0; x < probs.size(); ++x) {
            ASSERT_NEAR(std::norm(u(static_cast<Eigen::Index>(x), 0)), probs[x], 1e-10);
        }
    }
}

TEST(transpile, interactions) {
    Circuit c(4);
    c.mrz(0.1, {2, 0, 1});
    c.rzz(0.2, 3, 1);
    c.rz(0.3, 2);
    c.mrz(0.4, {0, 1, 2});
    ASSERT_EQ(interactions(c), (std::vector<Monomial>{{0, 1, 2}, {1, 3}}));
}

TEST(transpile, metrics_examples) {
    ASSERT_EQ(circuit_metrics(Circuit(3)), (CircuitMetrics{0, 0, 0}));
    Circuit disjoint(4);
    disjoint.rzz(0.1, 0, 1);
    disjoint.rzz(0.1, 2, 3);
    ASSERT_EQ(circuit_metrics(disjoint), (CircuitMetrics{2, 1, 2}));
    Circuit chain(3);
    chain.cx(0, 1);
    chain.cx(1, 2);
    ASSERT_EQ(circuit_metrics(chain), (CircuitMetrics{2, 2, 2}));
    Circuit swap(2);
    swap.swap(0, 1);
    swap.ry(0.2, 0);
    ASSERT_EQ(circuit_metrics(swap), (CircuitMetrics{3, 3, 4}));
}

TEST(transpile, circuit_text_round_trip) {
    Circuit c(5);
    c.ry(0.25, 0);
    c.mrz(-1.5, {0, 3, 4});
    c.cx(1, 2);
    c.swap(3, 4);
    c.rzz(1e-17, 0, 1);
    ASSERT_EQ(circuit_from_text(circuit_to_text(c)), c);
    ASSERT_THROW(circuit_from_text("qubits 2\nCX 0 0 5\n"), ParseError);
    ASSERT_THROW(circuit_from_text("qubits 2\nFOO 0 0\n"), ParseError);
}

TEST(transpile, naive_examples) {
    Circuit c(3);
    c.mrz(0.5, {0, 1, 2});
    const auto cc = compile_naive(c, Topology::linear(3));
    std::size_t cx = 0, rz = 0;
    for (const Gate &g : cc.placed.circuit.gates()) {
        cx += g.kind == GateKind::CX;
        rz += g.kind == GateKind::RZ;
    }
    ASSERT_EQ(cx, 4u);
    ASSERT_EQ(rz, 1u);
    ASSERT_EQ(cc.method, "naive");
    ASSERT_TRUE(verify_equivalence(cc.placed, place_identity(c)));

    Circuit pair(2);
    pair.rzz(0.5, 0, 1);
    ASSERT_EQ(compile_naive(pair, Topology::linear(2)).metrics.two_qubit_count, 1u);
}

TEST(transpile, naive_routes_with_swaps) {
    Circuit c(4);
    c.rzz(0.5, 0, 3);
    c.mrz(0.2, {0, 2});
    for (std::uint64_t seed : {0, 1, 2, 3}) {
        const auto t = Topology::linear(4);
        const auto cc = compile_naive(c, t, seed);
        expect_on_coupling_edges(cc, t);
        ASSERT_TRUE(verify_equivalence(cc.placed, place_identity(c)));
    }
}

TEST(transpile, parity_examples) {
    Circuit zzz(3);
    zzz.mrz(0.7, {0, 1, 2});
    const auto cc = compile_parity(zzz, Topology::linear(3));
    ASSERT_EQ(cc.placed.circuit.gates(),
              (std::vector<Gate>{{GateKind::CX, 0.0, {0, 1}}, {GateKind::RZZ, 0.7, {1, 2}}, {GateKind::CX, 0.0, {0, 1}}}));
    ASSERT_EQ(cc.metrics.two_qubit_count, 3u);

    Circuit pair(2);
    pair.rzz(0.5, 0, 1);
    const auto one = compile_parity(pair, Topology::linear(2));
    ASSERT_EQ(one.metrics.two_qubit_count, 1u);
    ASSERT_EQ(one.placed.circuit.gates().size(), 1u);
}

TEST(transpile, overlapping_chain_shape) {
    const auto c = mrz_chain({{0, 1, 2}, {0, 1, 2, 3}, {0, 1, 2, 3, 4}, {1, 2, 3, 4}}, 5);
    const auto t = Topology::linear(5);
    const auto parity = compile_parity(c, t);
    const auto naive = compile_naive(c, t);
    ASSERT_LE(parity.metrics.two_qubit_count, 14u);
    ASSERT_GE(naive.metrics.two_qubit_count, 24u);
    expect_on_coupling_edges(parity, t);
    ASSERT_TRUE(verify_equivalence(parity.placed, place_identity(c)));
    ASSERT_TRUE(verify_equivalence(naive.placed, place_identity(c)));
}

TEST(transpile, cancel_cx_examples) {
    const Gate cx01{GateKind::CX, 0.0, {0, 1}};
    const Gate cx12{GateKind::CX, 0.0, {1, 2}};
    const Gate cx02{GateKind::CX, 0.0, {0, 2}};
    const Gate rz0{GateKind::RZ, 0.1, {0}};
    const Gate rz1{GateKind::RZ, 0.1, {1}};
    ASSERT_TRUE(cancel_cx({cx01, cx01}).empty());
    ASSERT_EQ(cancel_cx({cx01, rz0, cx01}), (std::vector<Gate>{rz0}));
    ASSERT_EQ(cancel_cx({cx01, rz1, cx01}), (std::vector<Gate>{cx01, rz1, cx01}));
    ASSERT_EQ(cancel_cx({cx01, cx12, cx01}), (std::vector<Gate>{cx01, cx12, cx01}));
    ASSERT_EQ(cancel_cx({cx01, cx02, cx01}), (std::vector<Gate>{cx02}));
    ASSERT_EQ(cancel_cx({cx01, cx01, cx01}), (std::vector<Gate>{cx01}));
}

TEST(transpile, equivalence_examples) {
    Circuit a(2);
    a.ry(0.3, 0);
    a.rzz(0.9, 0, 1);
    ASSERT_TRUE(verify_equivalence(a, a));
    Circuit b(2);
    b.ry(0.3, 0);
    b.cx(0, 1);
    b.rz(0.9, 1);
    b.cx(0, 1);
    ASSERT_TRUE(verify_equivalence(a, b));
    Circuit wrong(2);
    wrong.ry(0.3, 0);
    wrong.rzz(0.8, 0, 1);
    ASSERT_FALSE(verify_equivalence(a, wrong));
    Circuit swapped(2);
    swapped.ry(0.3, 1);
    swapped.rzz(0.9, 0, 1);
    ASSERT_FALSE(verify_equivalence(a, swapped));
}

TEST(transpile, random_hubo_layers_compile_correctly) {
    const std::vector<Topology> topologies{Topology::linear(8), Topology::grid(3, 3), Topology::heavy_hex(1)};
    for (std::uint64_t k = 0; k < 50; ++k) {
        BinaryPolynomial p;
        if (k % 2 == 0) {
            const std::uint32_t nodes = 2 + (k / 2) % 2;
            const auto g = fixtures::planted(k, nodes, nodes == 2 ? 4 : 3, 0.4);
            p = encode_hubo(g, nodes == 2 ? 3 + (k / 4) % 2 : 2);
        } else {
            p = random_hubo(3 + k % 6, 4, k);
        }
        const auto h = to_ising(p);
        ASSERT_LE(h.num_qubits(), 8u);
        const auto c = cost_layer(h, 0.21);
        const auto &t = topologies[k % 3];
        const auto parity = compile_parity(c, t);
        const auto naive = compile_naive(c, t);
        expect_on_coupling_edges(parity, t);
        expect_on_coupling_edges(naive, t);
        ASSERT_TRUE(verify_equivalence(parity.placed, place_identity(c))) << "instance " << k;
        ASSERT_TRUE(verify_equivalence(naive.placed, place_identity(c))) << "instance " << k;
        ASSERT_LE(parity.metrics.two_qubit_count, naive.metrics.two_qubit_count) << "instance " << k;
    }
}

TEST(transpile, parity_matches_dense_oracle) {
    for (std::uint64_t k = 0; k < 8; ++k) {
        const auto h = to_ising(random_hubo(3 + k % 3, 4, 300 + k));
        const double gamma = 0.43;
        const auto t = k % 2 ? Topology::grid(2, 3) : Topology::linear(5);
        const auto cc = compile_parity(cost_layer(h, gamma), t, ParityOptions{.naive_fallback = false});
        expect_dense_diagonal(cc, h, gamma);
    }
}

TEST(transpile, full_qaoa_circuit_compiles) {
    const auto h = to_ising(encode_hubo(fixtures::tangle2(), 2));
    const auto c = qaoa_circuit(h, lr_schedule(2, 0.75, 0.3), PriorDistribution{std::vector<double>(4, 0.5)});
    const auto t = Topology::heavy_hex(1);
    const auto cc = compile_parity(c, t);
    expect_on_coupling_edges(cc, t);
    ASSERT_TRUE(verify_equivalence(cc.placed, place_identity(c)));
    const auto naive = compile_naive(c, t);
    ASSERT_TRUE(verify_equivalence(naive.placed, place_identity(c)));
    ASSERT_LE(cc.metrics.two_qubit_count, naive.metrics.two_qubit_count);
}

TEST(transpile, compile_is_deterministic) {
    const auto h = to_ising(random_hubo(7, 4, 99));
    const auto c = cost_layer(h, 0.3);
    const auto t = Topology::grid(3, 3);
    const auto a = compile_parity(c, t);
    const auto b = compile_parity(c, t);
    ASSERT_EQ(a.placed.circuit, b.placed.circuit);
    ASSERT_EQ(a.placed.initial_layout, b.placed.initial_layout);
}

TEST(transpile, errors) {
    Circuit c(3);
    c.mrz(0.1, {0, 1, 2});
    const Topology split(4, {{0, 1}, {2, 3}});
    ASSERT_THROW(compile_parity(c, split), DomainError);
    ASSERT_THROW(compile_naive(c, split), DomainError);
    ASSERT_THROW(compile_parity(c, Topology::linear(2)), SizeError);
    ASSERT_THROW(compile_naive(c, Topology::linear(2)), SizeError);
}
