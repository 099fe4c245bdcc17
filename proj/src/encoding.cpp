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

#include "tangle/encoding.hpp"

#include <sstream>

#include "tangle/error.hpp"

namespace tangle {

std::uint32_t bits_per_step(std::uint32_t nodes) {
    if (nodes == 0) {
        throw DomainError("graph must have at least one node");
    }
    std::uint32_t bits = 0;
    while ((std::uint64_t{1} << bits) < 2ull * nodes) {
        ++bits;
    }
    return bits;
}

HuboLayout HuboLayout::for_graph(std::uint32_t nodes, std::uint32_t steps) {
    return HuboLayout{steps, nodes, bits_per_step(nodes)};
}

namespace {

void check_steps(std::uint32_t steps) {
    if (steps < 1) {
        throw DomainError("walk length T must be at least 1");
    }
}

void check_positive(double value, const char *name) {
    if (!(value > 0.0)) {
        throw DomainError(std::string(name) + " must be positive");
    }
}

}  // namespace

BinaryPolynomial encode_qubo(const OrientedGraph &g, std::uint32_t steps, double one_hot_penalty,
                             double edge_penalty) {
    check_steps(steps);
    check_positive(one_hot_penalty, "one-hot penalty");
    check_positive(edge_penalty, "edge penalty");
    const QuboLayout layout{steps, g.node_count()};
    const std::uint32_t n = layout.num_vars();
    BinaryPolynomial total(n);

    for (std::uint32_t t = 0; t < steps; ++t) {
        BinaryPolynomial slack = BinaryPolynomial::constant(n, -1.0);
        for (OrientedId a = 0; a < g.oriented_count(); ++a) {
            slack.add_term({layout.var(t, a)}, 1.0);
        }
        total += one_hot_penalty * (slack * slack);
    }

    for (std::uint32_t t = 0; t + 1 < steps; ++t) {
        BinaryPolynomial bracket = BinaryPolynomial::constant(n, 1.0);
        for (const auto &[a, b] : g.edges()) {
            bracket.add_term({layout.var(t, a), layout.var(t + 1, b)}, -1.0);
        }
        total += edge_penalty * bracket;
    }

    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        BinaryPolynomial deviation = BinaryPolynomial::constant(n, -static_cast<double>(g.weight(v)));
        for (std::uint32_t t = 0; t < steps; ++t) {
            deviation.add_term({layout.var(t, oriented(v, false))}, 1.0);
            deviation.add_term({layout.var(t, oriented(v, true))}, 1.0);
        }
        total += deviation * deviation;
    }
    return total;
}

BinaryPolynomial indicator_polynomial(std::uint32_t value, std::uint32_t t, const HuboLayout &layout) {
    if (layout.bits < 32 && value >= (1u << layout.bits)) {
        throw DomainError("indicator value " + std::to_string(value) + " does not fit in " +
                          std::to_string(layout.bits) + " bits");
    }
    if (t >= layout.steps) {
        throw DomainError("indicator step " + std::to_string(t) + " out of range");
    }
    const std::uint32_t n = layout.num_vars();
    BinaryPolynomial product = BinaryPolynomial::constant(n, 1.0);
    for (std::uint32_t k = 0; k < layout.bits; ++k) {
        // 1 - b - x + 2bx: equals 1 - x when b = 0 and x when b = 1.
        const bool b = (value >> k) & 1;
        BinaryPolynomial factor(n);
        if (b) {
            factor.add_term({layout.var(t, k)}, 1.0);
        } else {
            factor.add_term({}, 1.0);
            factor.add_term({layout.var(t, k)}, -1.0);
        }
        product = product * factor;
    }
    return product;
}

BinaryPolynomial encode_hubo(const OrientedGraph &g, std::uint32_t steps, double edge_penalty) {
    check_steps(steps);
    check_positive(edge_penalty, "edge penalty");
    const HuboLayout layout = HuboLayout::for_graph(g.node_count(), steps);
    const std::uint32_t n = layout.num_vars();
    const std::uint32_t ids = g.oriented_count();

    std::vector<std::vector<BinaryPolynomial>> indicator(steps);
    for (std::uint32_t t = 0; t < steps; ++t) {
        for (OrientedId i = 0; i < ids; ++i) {
            indicator[t].push_back(indicator_polynomial(i, t, layout));
        }
    }

    BinaryPolynomial total(n);
    for (std::uint32_t t = 0; t + 1 < steps; ++t) {
        BinaryPolynomial bracket = BinaryPolynomial::constant(n, 1.0);
        for (OrientedId i = 0; i < ids; ++i) {
            if (g.successors(i).empty()) {
                continue;
            }
            BinaryPolynomial next(n);
            for (OrientedId j : g.successors(i)) {
                next += indicator[t + 1][j];
            }
            bracket -= indicator[t][i] * next;
        }
        total += edge_penalty * bracket;
    }

    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        BinaryPolynomial deviation = BinaryPolynomial::constant(n, -static_cast<double>(g.weight(v)));
        for (std::uint32_t t = 0; t < steps; ++t) {
            deviation += indicator[t][oriented(v, false)];
            deviation += indicator[t][oriented(v, true)];
        }
        total += deviation * deviation;
    }
    return total;
}

QuboDecode decode_qubo(std::span<const std::uint8_t> bits, const QuboLayout &layout, const OrientedGraph &g) {
    if (bits.size() != layout.num_vars()) {
        throw DomainError("assignment width does not match the QUBO layout");
    }
    OneHotViolation violation;
    Walk walk;
    for (std::uint32_t t = 0; t < layout.steps; ++t) {
        int set = 0;
        OrientedId chosen = 0;
        for (OrientedId a = 0; a < 2 * layout.nodes; ++a) {
            if (bits[layout.var(t, a)]) {
                ++set;
                chosen = a;
            }
        }
        if (set != 1) {
            violation.steps.push_back(t);
        }
        walk.steps.push_back(chosen);
    }
    if (!violation.steps.empty()) {
        return violation;
    }
    return DecodedWalk{walk, broken_edges(g, walk)};
}

HuboDecode decode_hubo(std::span<const std::uint8_t> bits, const HuboLayout &layout, const OrientedGraph &g) {
    if (bits.size() != layout.num_vars()) {
        throw DomainError("assignment width does not match the HUBO layout");
    }
    OutOfRangeSteps bad;
    Walk walk;
    for (std::uint32_t t = 0; t < layout.steps; ++t) {
        std::uint32_t value = 0;
        for (std::uint32_t k = 0; k < layout.bits; ++k) {
            if (bits[layout.var(t, k)]) {
                value |= 1u << k;
            }
        }
        if (value >= 2 * layout.nodes) {
            bad.steps.push_back(t);
            bad.values.push_back(value);
        }
        walk.steps.push_back(value);
    }
    if (!bad.steps.empty()) {
        return bad;
    }
    return DecodedWalk{walk, broken_edges(g, walk)};
}

std::vector<std::uint8_t> encode_walk_qubo(const Walk &w, const QuboLayout &layout) {
    if (w.steps.size() != layout.steps) {
        throw DomainError("walk length does not match layout");
    }
    std::vector<std::uint8_t> bits(layout.num_vars(), 0);
    for (std::uint32_t t = 0; t < layout.steps; ++t) {
        if (w.steps[t] >= 2 * layout.nodes) {
            throw DomainError("walk step out of range");
        }
        bits[layout.var(t, w.steps[t])] = 1;
    }
    return bits;
}

std::vector<std::uint8_t> encode_walk_hubo(const Walk &w, const HuboLayout &layout) {
    if (w.steps.size() != layout.steps) {
        throw DomainError("walk length does not match layout");
    }
    std::vector<std::uint8_t> bits(layout.num_vars(), 0);
    for (std::uint32_t t = 0; t < layout.steps; ++t) {
        if (layout.bits < 32 && w.steps[t] >= (1u << layout.bits)) {
            throw DomainError("walk step out of range");
        }
        for (std::uint32_t k = 0; k < layout.bits; ++k) {
            bits[layout.var(t, k)] = (w.steps[t] >> k) & 1;
        }
    }
    return bits;
}

std::string to_string(EncodingKind kind) {
    return kind == EncodingKind::Qubo ? "qubo" : "hubo";
}

EncodingKind encoding_kind_from_string(const std::string &name) {
    if (name == "qubo") {
        return EncodingKind::Qubo;
    }
    if (name == "hubo") {
        return EncodingKind::Hubo;
    }
    throw ConfigError("unknown encoding '" + name + "' (expected qubo or hubo)");
}

namespace {

std::string join(const std::vector<std::uint32_t> &xs) {
    std::ostringstream out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        out << (i ? "," : "") << xs[i];
    }
    return out.str();
}

}  // namespace

DecodeSummary decode(EncodingKind kind, std::span<const std::uint8_t> bits, const OrientedGraph &g,
                     std::uint32_t steps) {
    DecodeSummary out;
    auto from_walk = [&](const DecodedWalk &d) {
        out.feasible = true;
        out.walk = d.walk;
        out.valid_walk = d.valid();
        if (!d.valid()) {
            std::vector<std::uint32_t> broken(d.broken_edges.begin(), d.broken_edges.end());
            out.note = "missing edges after steps " + join(broken);
        }
    };
    if (kind == EncodingKind::Qubo) {
        const auto r = decode_qubo(bits, QuboLayout{steps, g.node_count()}, g);
        if (const auto *d = std::get_if<DecodedWalk>(&r)) {
            from_walk(*d);
        } else {
            out.note = "one-hot violated at steps " + join(std::get<OneHotViolation>(r).steps);
        }
    } else {
        const auto r = decode_hubo(bits, HuboLayout::for_graph(g.node_count(), steps), g);
        if (const auto *d = std::get_if<DecodedWalk>(&r)) {
            from_walk(*d);
        } else {
            out.note = "out-of-range ids at steps " + join(std::get<OutOfRangeSteps>(r).steps);
        }
    }
    return out;
}

}  // namespace tangle
