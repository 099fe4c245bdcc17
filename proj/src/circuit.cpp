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

#include "tangle/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "tangle/error.hpp"

namespace tangle {

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RY:
            return "RY";
        case GateKind::RZ:
            return "RZ";
        case GateKind::CX:
            return "CX";
        case GateKind::RZZ:
            return "RZZ";
        case GateKind::SWAP:
            return "SWAP";
        case GateKind::MRZ:
            return "MRZ";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string &name) {
    static const std::map<std::string, GateKind> kinds = {{"RY", GateKind::RY},   {"RZ", GateKind::RZ},
                                                          {"CX", GateKind::CX},   {"RZZ", GateKind::RZZ},
                                                          {"SWAP", GateKind::SWAP}, {"MRZ", GateKind::MRZ}};
    auto it = kinds.find(name);
    if (it == kinds.end()) {
        throw ParseError("unknown gate '" + name + "'");
    }
    return it->second;
}

void Circuit::append(Gate gate) {
    std::size_t arity = 0;
    switch (gate.kind) {
        case GateKind::RY:
        case GateKind::RZ:
            arity = 1;
            break;
        case GateKind::CX:
        case GateKind::RZZ:
        case GateKind::SWAP:
            arity = 2;
            break;
        case GateKind::MRZ:
            arity = gate.qubits.size();
            if (arity == 0) {
                throw DomainError("MRZ needs at least one qubit");
            }
            break;
    }
    if (gate.qubits.size() != arity) {
        throw DomainError(gate_name(gate.kind) + " expects " + std::to_string(arity) + " qubits");
    }
    for (std::uint32_t q : gate.qubits) {
        if (q >= num_qubits_) {
            throw DomainError(gate_name(gate.kind) + " on qubit " + std::to_string(q) + " of a " +
                              std::to_string(num_qubits_) + "-qubit circuit");
        }
    }
    std::vector<std::uint32_t> sorted = gate.qubits;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError(gate_name(gate.kind) + " with repeated qubits");
    }
    if (gate.kind == GateKind::MRZ) {
        gate.qubits = std::move(sorted);
    }
    gates_.push_back(std::move(gate));
}

void Circuit::mrz(double theta, std::vector<std::uint32_t> qubits) {
    append({GateKind::MRZ, theta, std::move(qubits)});
}

CircuitMetrics circuit_metrics(const Circuit &c) {
    CircuitMetrics m;
    std::vector<std::uint64_t> ready(c.num_qubits(), 0);
    for (const Gate &g : c.gates()) {
        const std::uint64_t weight = g.kind == GateKind::SWAP ? 3 : 1;
        m.total_ops += weight;
        if (g.qubits.size() < 2) {
            continue;
        }
        if (g.is_two_qubit()) {
            m.two_qubit_count += weight;
        }
        std::uint64_t layer = 0;
        for (std::uint32_t q : g.qubits) {
            layer = std::max(layer, ready[q]);
        }
        layer += weight;
        for (std::uint32_t q : g.qubits) {
            ready[q] = layer;
        }
        m.two_qubit_depth = std::max(m.two_qubit_depth, layer);
    }
    return m;
}

std::string circuit_to_text(const Circuit &c) {
    std::ostringstream out;
    out << "qubits " << c.num_qubits() << '\n';
    out << std::setprecision(17);
    for (const Gate &g : c.gates()) {
        out << gate_name(g.kind) << ' ' << g.theta;
        for (std::uint32_t q : g.qubits) {
            out << ' ' << q;
        }
        out << '\n';
    }
    return out.str();
}

Circuit circuit_from_text(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    std::optional<Circuit> circuit;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string head;
        if (!(fields >> head)) {
            continue;
        }
        if (!circuit) {
            std::uint32_t n = 0;
            if (head != "qubits" || !(fields >> n)) {
                throw ParseError("expected 'qubits N' header", line_no);
            }
            circuit.emplace(n);
            continue;
        }
        Gate g{gate_kind_from_name(head), 0.0, {}};
        if (!(fields >> g.theta)) {
            throw ParseError("missing angle", line_no);
        }
        std::int64_t q;
        while (fields >> q) {
            if (q < 0) {
                throw ParseError("negative qubit index", line_no);
            }
            g.qubits.push_back(static_cast<std::uint32_t>(q));
        }
        if (!fields.eof()) {
            throw ParseError("malformed qubit list", line_no);
        }
        try {
            circuit->append(std::move(g));
        } catch (const DomainError &e) {
            throw ParseError(e.what(), line_no);
        }
    }
    if (!circuit) {
        throw ParseError("empty circuit file");
    }
    return *circuit;
}

PlacedCircuit place_identity(const Circuit &c) {
    std::vector<std::uint32_t> identity(c.num_qubits());
    for (std::uint32_t q = 0; q < c.num_qubits(); ++q) {
        identity[q] = q;
    }
    return PlacedCircuit{c, identity, identity};
}

namespace {

using Complex = std::complex<double>;

void check_placement(const PlacedCircuit &p, std::size_t n) {
    if (p.initial_layout.size() != n || p.final_layout.size() != n) {
        throw DomainError("layouts must map every logical qubit");
    }
    for (const auto *layout : {&p.initial_layout, &p.final_layout}) {
        std::vector<std::uint32_t> sorted = *layout;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw DomainError("layout maps two logical qubits to one physical qubit");
        }
        if (!sorted.empty() && sorted.back() >= p.circuit.num_qubits()) {
            throw DomainError("layout refers to a physical qubit outside the circuit");
        }
    }
}

bool is_monomial(const Circuit &c) {
    return std::none_of(c.gates().begin(), c.gates().end(), [](const Gate &g) { return g.kind == GateKind::RY; });
}

struct BasisImage {
    std::uint64_t output;
    double phase;
    bool leaked;
};

BasisImage track_basis(const PlacedCircuit &p, std::uint64_t input) {
    const std::size_t n = p.initial_layout.size();
    std::uint64_t bits = 0;
    for (std::size_t l = 0; l < n; ++l) {
        if ((input >> l) & 1) {
            bits |= std::uint64_t{1} << p.initial_layout[l];
        }
    }
    auto z = [&](std::uint32_t q) { return ((bits >> q) & 1) ? -1.0 : 1.0; };
    double phase = 0.0;
    for (const Gate &g : p.circuit.gates()) {
        switch (g.kind) {
            case GateKind::CX:
                if ((bits >> g.qubits[0]) & 1) {
                    bits ^= std::uint64_t{1} << g.qubits[1];
                }
                break;
            case GateKind::SWAP: {
                const std::uint64_t a = (bits >> g.qubits[0]) & 1;
                const std::uint64_t b = (bits >> g.qubits[1]) & 1;
                if (a != b) {
                    bits ^= (std::uint64_t{1} << g.qubits[0]) | (std::uint64_t{1} << g.qubits[1]);
                }
                break;
            }
            case GateKind::RZ:
            case GateKind::RZZ:
            case GateKind::MRZ: {
                double sign = 1.0;
                for (std::uint32_t q : g.qubits) {
                    sign *= z(q);
                }
                phase -= 0.5 * g.theta * sign;
                break;
            }
            case GateKind::RY:
                throw InternalError("RY in basis tracking");
        }
    }
    std::uint64_t output = 0;
    std::uint64_t used = 0;
    for (std::size_t l = 0; l < n; ++l) {
        used |= std::uint64_t{1} << p.final_layout[l];
        if ((bits >> p.final_layout[l]) & 1) {
            output |= std::uint64_t{1} << l;
        }
    }
    return BasisImage{output, phase, (bits & ~used) != 0};
}

double wrap_angle(double x) {
    x = std::fmod(x, 2.0 * std::numbers::pi);
    if (x > std::numbers::pi) {
        x -= 2.0 * std::numbers::pi;
    } else if (x < -std::numbers::pi) {
        x += 2.0 * std::numbers::pi;
    }
    return x;
}

bool equivalent_monomial(const PlacedCircuit &a, const PlacedCircuit &b, double tol) {
    const std::size_t n = a.initial_layout.size();
    if (n > 24 || a.circuit.num_qubits() > 64 || b.circuit.num_qubits() > 64) {
        throw SizeError("equivalence check limited to 24 logical and 64 physical qubits");
    }
    double reference = 0.0;
    for (std::uint64_t input = 0; input < (std::uint64_t{1} << n); ++input) {
        const BasisImage ia = track_basis(a, input);
        const BasisImage ib = track_basis(b, input);
        if (ia.leaked || ib.leaked || ia.output != ib.output) {
            return false;
        }
        const double diff = ia.phase - ib.phase;
        if (input == 0) {
            reference = diff;
        } else if (std::abs(wrap_angle(diff - reference)) > tol) {
            return false;
        }
    }
    return true;
}

/// Dense simulation restricted to the qubits a circuit actually uses.
class DenseRunner {
   public:
    explicit DenseRunner(const PlacedCircuit &p) : placed_(p) {
        std::vector<std::uint32_t> active(p.initial_layout.begin(), p.initial_layout.end());
        active.insert(active.end(), p.final_layout.begin(), p.final_layout.end());
        for (const Gate &g : p.circuit.gates()) {
            active.insert(active.end(), g.qubits.begin(), g.qubits.end());
        }
        std::sort(active.begin(), active.end());
        active.erase(std::unique(active.begin(), active.end()), active.end());
        if (active.size() > 16) {
            throw SizeError("dense equivalence check limited to 16 active qubits");
        }
        for (std::size_t i = 0; i < active.size(); ++i) {
            compact_[active[i]] = static_cast<std::uint32_t>(i);
        }
        width_ = static_cast<std::uint32_t>(active.size());
    }

    /// Output state over logical qubits; empty when amplitude leaks onto
    /// unused physical qubits.
    std::vector<Complex> run(std::uint64_t input, double tol) const {
        const std::size_t n = placed_.initial_layout.size();
        std::vector<Complex> psi(std::size_t{1} << width_, 0.0);
        std::uint64_t start = 0;
        for (std::size_t l = 0; l < n; ++l) {
            if ((input >> l) & 1) {
                start |= std::uint64_t{1} << compact_.at(placed_.initial_layout[l]);
            }
        }
        psi[start] = 1.0;
        for (const Gate &g : placed_.circuit.gates()) {
            apply(psi, g);
        }
        std::vector<Complex> out(std::size_t{1} << n, 0.0);
        double captured = 0.0;
        for (std::uint64_t y = 0; y < out.size(); ++y) {
            std::uint64_t index = 0;
            for (std::size_t l = 0; l < n; ++l) {
                if ((y >> l) & 1) {
                    index |= std::uint64_t{1} << compact_.at(placed_.final_layout[l]);
                }
            }
            out[y] = psi[index];
            captured += std::norm(out[y]);
        }
        if (std::abs(captured - 1.0) > tol) {
            return {};
        }
        return out;
    }

   private:
    void apply(std::vector<Complex> &psi, const Gate &g) const {
        std::vector<std::uint64_t> masks;
        for (std::uint32_t q : g.qubits) {
            masks.push_back(std::uint64_t{1} << compact_.at(q));
        }
        switch (g.kind) {
            case GateKind::RY: {
                const double c = std::cos(g.theta / 2), s = std::sin(g.theta / 2);
                for (std::uint64_t x = 0; x < psi.size(); ++x) {
                    if (!(x & masks[0])) {
                        const Complex a = psi[x], b = psi[x | masks[0]];
                        psi[x] = c * a - s * b;
                        psi[x | masks[0]] = s * a + c * b;
                    }
                }
                break;
            }
            case GateKind::RZ:
            case GateKind::RZZ:
            case GateKind::MRZ:
                for (std::uint64_t x = 0; x < psi.size(); ++x) {
                    int parity = 0;
                    for (std::uint64_t m : masks) {
                        parity ^= (x & m) ? 1 : 0;
                    }
                    psi[x] *= std::polar(1.0, parity ? g.theta / 2 : -g.theta / 2);
                }
                break;
            case GateKind::CX:
                for (std::uint64_t x = 0; x < psi.size(); ++x) {
                    if ((x & masks[0]) && !(x & masks[1])) {
                        std::swap(psi[x], psi[x | masks[1]]);
                    }
                }
                break;
            case GateKind::SWAP:
                for (std::uint64_t x = 0; x < psi.size(); ++x) {
                    if ((x & masks[0]) && !(x & masks[1])) {
                        std::swap(psi[x], psi[(x & ~masks[0]) | masks[1]]);
                    }
                }
                break;
        }
    }

    const PlacedCircuit &placed_;
    std::map<std::uint32_t, std::uint32_t> compact_;
    std::uint32_t width_ = 0;
};

bool equivalent_dense(const PlacedCircuit &a, const PlacedCircuit &b, double tol) {
    const std::size_t n = a.initial_layout.size();
    if (n > 10) {
        throw SizeError("dense equivalence check limited to 10 logical qubits");
    }
    const DenseRunner ra(a), rb(b);
    std::optional<Complex> phase;
    for (std::uint64_t input = 0; input < (std::uint64_t{1} << n); ++input) {
        const auto va = ra.run(input, tol);
        const auto vb = rb.run(input, tol);
        if (va.empty() || vb.empty()) {
            return false;
        }
        if (!phase) {
            // Global phase from the largest component of the first column.
            std::size_t k = 0;
            for (std::size_t y = 0; y < vb.size(); ++y) {
                if (std::abs(vb[y]) > std::abs(vb[k])) {
                    k = y;
                }
            }
            phase = va[k] / vb[k];
        }
        for (std::size_t y = 0; y < va.size(); ++y) {
            if (std::abs(va[y] - *phase * vb[y]) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

bool verify_equivalence(const PlacedCircuit &a, const PlacedCircuit &b, double tol) {
    const std::size_t n = a.initial_layout.size();
    if (b.initial_layout.size() != n) {
        return false;
    }
    check_placement(a, n);
    check_placement(b, n);
    if (is_monomial(a.circuit) && is_monomial(b.circuit)) {
        return equivalent_monomial(a, b, tol);
    }
    return equivalent_dense(a, b, tol);
}

bool verify_equivalence(const Circuit &a, const Circuit &b, double tol) {
    if (a.num_qubits() != b.num_qubits()) {
        return false;
    }
    return verify_equivalence(place_identity(a), place_identity(b), tol);
}

}  // namespace tangle
