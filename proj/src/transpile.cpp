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

#include "tangle/transpile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "tangle/error.hpp"
#include "tangle/rng.hpp"

namespace tangle {

namespace {

void append_cost(Circuit &c, const IsingPolynomial &h, double gamma) {
    for (const auto &[qubits, coeff] : h.terms()) {
        const double theta = 2.0 * gamma * coeff;
        if (theta == 0.0) {
            continue;
        }
        if (qubits.size() == 1) {
            c.rz(theta, qubits[0]);
        } else {
            c.mrz(theta, qubits);
        }
    }
}

/// Logical <-> physical bookkeeping.
struct Placement {
    std::vector<std::uint32_t> phys;
    std::vector<int> logical;

    Placement(std::vector<std::uint32_t> layout, std::uint32_t physical_qubits)
        : phys(std::move(layout)), logical(physical_qubits, -1) {
        for (std::size_t l = 0; l < phys.size(); ++l) {
            if (phys[l] >= physical_qubits || logical[phys[l]] != -1) {
                throw DomainError("layout is not an injective map onto the topology");
            }
            logical[phys[l]] = static_cast<int>(l);
        }
    }

    void swap_physical(std::uint32_t a, std::uint32_t b) {
        std::swap(logical[a], logical[b]);
        if (logical[a] >= 0) {
            phys[static_cast<std::size_t>(logical[a])] = a;
        }
        if (logical[b] >= 0) {
            phys[static_cast<std::size_t>(logical[b])] = b;
        }
    }

    std::uint64_t mask(const Monomial &qubits) const {
        std::uint64_t m = 0;
        for (std::uint32_t q : qubits) {
            m |= std::uint64_t{1} << phys[q];
        }
        return m;
    }
};

void check_inputs(const Circuit &c, const Topology &t) {
    if (!t.connected()) {
        throw DomainError("topology " + t.name() + " is disconnected");
    }
    if (c.num_qubits() > t.num_qubits()) {
        throw SizeError("circuit needs " + std::to_string(c.num_qubits()) + " qubits but " + t.name() + " has " +
                        std::to_string(t.num_qubits()));
    }
}

/// SWAPs the first operand along a shortest path until it neighbours the second.
void route_adjacent(Placement &pl, const Topology &t, std::uint32_t a, std::uint32_t b, std::vector<Gate> &out) {
    while (t.distance(pl.phys[a], pl.phys[b]) > 1) {
        const auto path = t.shortest_path(pl.phys[a], pl.phys[b]);
        out.push_back({GateKind::SWAP, 0.0, {path[0], path[1]}});
        pl.swap_physical(path[0], path[1]);
    }
}

Gate mapped(const Gate &g, const Placement &pl) {
    Gate out = g;
    for (auto &q : out.qubits) {
        q = pl.phys[q];
    }
    if (out.kind == GateKind::MRZ) {
        std::sort(out.qubits.begin(), out.qubits.end());
    }
    return out;
}

/// Routes and emits a non-diagonal gate of a logical circuit.
void emit_plain(const Gate &g, Placement &pl, const Topology &t, std::vector<Gate> &out) {
    if (g.qubits.size() == 2) {
        route_adjacent(pl, t, g.qubits[0], g.qubits[1], out);
    } else if (g.qubits.size() > 2) {
        throw DomainError("gate " + gate_name(g.kind) + " on more than two qubits cannot be placed");
    }
    out.push_back(mapped(g, pl));
}

bool contains(const std::vector<std::uint32_t> &qubits, std::uint32_t q) {
    return std::find(qubits.begin(), qubits.end(), q) != qubits.end();
}

bool commutes_with_cx(const Gate &g, std::uint32_t control, std::uint32_t target) {
    const bool on_control = contains(g.qubits, control);
    const bool on_target = contains(g.qubits, target);
    if (!on_control && !on_target) {
        return true;
    }
    if (g.is_diagonal()) {
        return !on_target;
    }
    if (g.kind == GateKind::CX) {
        return g.qubits[0] != target && g.qubits[1] != control;
    }
    return false;
}

std::uint64_t two_qubit_weight(const std::vector<Gate> &gates) {
    std::uint64_t n = 0;
    for (const Gate &g : gates) {
        n += g.kind == GateKind::SWAP ? 3 : (g.is_two_qubit() ? 1 : 0);
    }
    return n;
}

}  // namespace

Circuit qaoa_circuit(const IsingPolynomial &h, const QaoaSchedule &schedule, const PriorDistribution &prior) {
    const std::uint32_t n = h.num_qubits();
    if (prior.probs.size() != n) {
        throw DomainError("prior has " + std::to_string(prior.probs.size()) + " entries for " + std::to_string(n) +
                          " qubits");
    }
    std::vector<double> phis(n);
    for (std::uint32_t q = 0; q < n; ++q) {
        const double p = prior.probs[q];
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("prior probability outside [0, 1]");
        }
        phis[q] = 2.0 * std::asin(std::sqrt(p));
    }
    Circuit c(n);
    for (std::uint32_t q = 0; q < n; ++q) {
        c.ry(phis[q], q);
    }
    for (std::size_t k = 0; k < schedule.layers; ++k) {
        append_cost(c, h, schedule.gammas.at(k));
        for (std::uint32_t q = 0; q < n; ++q) {
            c.ry(-phis[q], q);
            c.rz(-2.0 * schedule.betas.at(k), q);
            c.ry(phis[q], q);
        }
    }
    return c;
}

Circuit cost_layer(const IsingPolynomial &h, double gamma) {
    Circuit c(h.num_qubits());
    append_cost(c, h, gamma);
    return c;
}

std::vector<Monomial> interactions(const Circuit &c) {
    std::set<Monomial> sets;
    for (const Gate &g : c.gates()) {
        if ((g.kind == GateKind::RZZ || g.kind == GateKind::MRZ) && g.qubits.size() >= 2) {
            Monomial m = g.qubits;
            std::sort(m.begin(), m.end());
            sets.insert(std::move(m));
        }
    }
    return {sets.begin(), sets.end()};
}

std::vector<Gate> cancel_cx(const std::vector<Gate> &gates) {
    std::vector<Gate> out;
    std::vector<bool> alive;
    out.reserve(gates.size());
    for (const Gate &g : gates) {
        bool cancelled = false;
        if (g.kind == GateKind::CX) {
            for (std::size_t j = out.size(); j-- > 0;) {
                if (!alive[j]) {
                    continue;
                }
                if (out[j].kind == GateKind::CX && out[j].qubits == g.qubits) {
                    alive[j] = false;
                    cancelled = true;
                    break;
                }
                if (!commutes_with_cx(out[j], g.qubits[0], g.qubits[1])) {
                    break;
                }
            }
        }
        if (!cancelled) {
            out.push_back(g);
            alive.push_back(true);
        }
    }
    std::vector<Gate> kept;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (alive[i]) {
            kept.push_back(std::move(out[i]));
        }
    }
    return kept;
}

CompiledCircuit compile_naive(const Circuit &c, const Topology &t, std::uint64_t layout_seed) {
    check_inputs(c, t);
    const std::uint32_t m = t.num_qubits();
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    if (layout_seed != 0) {
        Rng rng(layout_seed);
        rng.shuffle(order.begin(), order.end());
    }
    Placement pl(std::vector<std::uint32_t>(order.begin(), order.begin() + c.num_qubits()), m);
    const std::vector<std::uint32_t> initial = pl.phys;

    std::vector<Gate> out;
    for (const Gate &g : c.gates()) {
        if (g.kind != GateKind::MRZ) {
            emit_plain(g, pl, t, out);
            continue;
        }
        const auto &qs = g.qubits;
        for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
            route_adjacent(pl, t, qs[i], qs[i + 1], out);
            out.push_back({GateKind::CX, 0.0, {pl.phys[qs[i]], pl.phys[qs[i + 1]]}});
        }
        out.push_back({GateKind::RZ, g.theta, {pl.phys[qs.back()]}});
        for (std::size_t i = qs.size() - 1; i-- > 0;) {
            route_adjacent(pl, t, qs[i], qs[i + 1], out);
            out.push_back({GateKind::CX, 0.0, {pl.phys[qs[i]], pl.phys[qs[i + 1]]}});
        }
    }
    CompiledCircuit result;
    result.placed.circuit = Circuit(m);
    for (Gate &g : out) {
        result.placed.circuit.append(std::move(g));
    }
    result.placed.initial_layout = initial;
    result.placed.final_layout = pl.phys;
    result.segment_layouts = {initial};
    result.metrics = circuit_metrics(result.placed.circuit);
    result.method = "naive";
    return result;
}

namespace {

struct PhaseTerm {
    Monomial qubits;
    double theta;
};

/// A run of diagonal gates, merged per qubit set, or a single other gate.
struct Block {
    bool phase = false;
    std::vector<PhaseTerm> terms;
    Gate gate{GateKind::RY, 0.0, {}};
};

std::vector<Block> split_blocks(const Circuit &c) {
    std::vector<Block> blocks;
    std::map<Monomial, double> pending;
    auto flush = [&] {
        if (pending.empty()) {
            return;
        }
        Block b;
        b.phase = true;
        for (const auto &[qubits, theta] : pending) {
            if (theta != 0.0) {
                b.terms.push_back({qubits, theta});
            }
        }
        pending.clear();
        blocks.push_back(std::move(b));
    };
    for (const Gate &g : c.gates()) {
        if (g.is_diagonal()) {
            Monomial m = g.qubits;
            std::sort(m.begin(), m.end());
            pending[m] += g.theta;
        } else {
            flush();
            Block b;
            b.gate = g;
            blocks.push_back(std::move(b));
        }
    }
    flush();
    return blocks;
}

/// CX tree gathering the parity of a connected physical set onto the pair
/// (child, root), where root is the highest-index qubit.
struct TreePlan {
    std::vector<Gate> compute;
    std::uint32_t child = 0;
    std::uint32_t root = 0;
};

TreePlan plan_tree(std::uint64_t mask, const Topology &t) {
    const auto root = static_cast<std::uint32_t>(63 - std::countl_zero(mask));
    std::map<std::uint32_t, std::vector<std::uint32_t>> children;
    std::uint64_t seen = std::uint64_t{1} << root;
    std::deque<std::uint32_t> queue{root};
    while (!queue.empty()) {
        const std::uint32_t v = queue.front();
        queue.pop_front();
        for (std::uint32_t w : t.neighbours(v)) {
            const std::uint64_t bit = std::uint64_t{1} << w;
            if ((mask & bit) && !(seen & bit)) {
                seen |= bit;
                children[v].push_back(w);
                queue.push_back(w);
            }
        }
    }
    if (seen != mask) {
        throw InternalError("parity tree over a disconnected qubit set");
    }
    TreePlan plan;
    plan.root = root;
    auto collect = [&](auto &&self, std::uint32_t v) -> void {
        for (std::uint32_t c : children[v]) {
            self(self, c);
            plan.compute.push_back({GateKind::CX, 0.0, {c, v}});
        }
    };
    const auto &top = children[root];
    plan.child = top.back();
    for (std::uint32_t c : top) {
        collect(collect, c);
        if (c != plan.child) {
            plan.compute.push_back({GateKind::CX, 0.0, {c, root}});
        }
    }
    return plan;
}

void emit_tree(const TreePlan &plan, double theta, std::vector<Gate> &out) {
    out.insert(out.end(), plan.compute.begin(), plan.compute.end());
    out.push_back({GateKind::RZZ, theta, {plan.child, plan.root}});
    out.insert(out.end(), plan.compute.rbegin(), plan.compute.rend());
}

/// Gates saved by cancelling a's uncompute against b's compute.
std::size_t savings(const TreePlan &a, const TreePlan &b) {
    std::vector<Gate> joint(a.compute.rbegin(), a.compute.rend());
    joint.insert(joint.end(), b.compute.begin(), b.compute.end());
    return joint.size() - cancel_cx(joint).size();
}

std::vector<std::size_t> order_exact(const std::vector<TreePlan> &plans) {
    const std::size_t k = plans.size();
    std::vector<std::vector<std::size_t>> gain(k, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (i != j) {
                gain[i][j] = savings(plans[i], plans[j]);
            }
        }
    }
    // Held-Karp over subsets: best[S][last] is the largest total saving of a
    // path visiting S and ending at last.
    const std::size_t full = std::size_t{1} << k;
    constexpr long kNone = -1;
    std::vector<std::vector<long>> best(full, std::vector<long>(k, kNone));
    std::vector<std::vector<std::size_t>> prev(full, std::vector<std::size_t>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        best[std::size_t{1} << i][i] = 0;
    }
    for (std::size_t s = 1; s < full; ++s) {
        for (std::size_t last = 0; last < k; ++last) {
            if (best[s][last] == kNone) {
                continue;
            }
            for (std::size_t next = 0; next < k; ++next) {
                if (s & (std::size_t{1} << next)) {
                    continue;
                }
                const std::size_t t = s | (std::size_t{1} << next);
                const long value = best[s][last] + static_cast<long>(gain[last][next]);
                if (value > best[t][next]) {
                    best[t][next] = value;
                    prev[t][next] = last;
                }
            }
        }
    }
    std::size_t last = 0;
    for (std::size_t i = 1; i < k; ++i) {
        if (best[full - 1][i] > best[full - 1][last]) {
            last = i;
        }
    }
    std::vector<std::size_t> order;
    for (std::size_t s = full - 1; s;) {
        order.push_back(last);
        const std::size_t before = prev[s][last];
        s &= ~(std::size_t{1} << last);
        last = before;
    }
    std::reverse(order.begin(), order.end());
    return order;
}

std::vector<std::size_t> order_trie(const std::vector<TreePlan> &plans) {
    std::vector<std::size_t> order(plans.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto key = [&](std::size_t i) {
        std::vector<std::uint32_t> k;
        for (const Gate &g : plans[i].compute) {
            k.push_back(g.qubits[0]);
            k.push_back(g.qubits[1]);
        }
        return k;
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    return order;
}

std::vector<std::size_t> order_greedy(const std::vector<TreePlan> &plans, const std::vector<std::size_t> &seed) {
    std::vector<bool> used(plans.size(), false);
    std::vector<std::size_t> order{seed.front()};
    used[seed.front()] = true;
    while (order.size() < plans.size()) {
        std::size_t pick = plans.size();
        std::size_t gain = 0;
        for (std::size_t i : seed) {
            if (used[i]) {
                continue;
            }
            const std::size_t g = savings(plans[order.back()], plans[i]);
            if (pick == plans.size() || g > gain) {
                pick = i;
                gain = g;
            }
        }
        used[pick] = true;
        order.push_back(pick);
    }
    return order;
}

/// Emits the multi-qubit trees of one segment in the cheapest order found.
void emit_trees(const std::vector<TreePlan> &plans, const std::vector<double> &thetas, std::vector<Gate> &out) {
    if (plans.empty()) {
        return;
    }
    std::vector<std::vector<std::size_t>> candidates;
    candidates.push_back(order_trie(plans));
    if (plans.size() <= 8) {
        candidates.push_back(order_exact(plans));
    } else {
        candidates.push_back(order_greedy(plans, candidates.front()));
    }
    std::vector<Gate> best;
    for (const auto &order : candidates) {
        std::vector<Gate> gates;
        for (std::size_t i : order) {
            emit_tree(plans[i], thetas[i], gates);
        }
        gates = cancel_cx(gates);
        if (best.empty() || two_qubit_weight(gates) < two_qubit_weight(best)) {
            best = std::move(gates);
        }
    }
    out.insert(out.end(), best.begin(), best.end());
}

class ParityCompiler {
   public:
    ParityCompiler(const Topology &t, const ParityOptions &options) : t_(t), options_(options) {
        colour_of_edge_.assign(t.edges().size(), 0);
        const auto classes = edge_colouring(t);
        for (std::size_t c = 0; c < classes.size(); ++c) {
            for (const auto &[a, b] : classes[c]) {
                colour_of_edge_[t.edge_index(a, b)] = c;
            }
        }
    }

    struct BlockRecord {
        std::size_t block;
        std::size_t begin;
        std::size_t end;
        std::vector<std::uint32_t> start;
        std::vector<std::uint32_t> finish;
    };

    struct Output {
        std::vector<Gate> gates;
        std::vector<std::vector<std::uint32_t>> segments;
        std::vector<BlockRecord> records;
        std::vector<std::uint32_t> initial;
        std::vector<std::uint32_t> final_layout;
    };

    Output run(const std::vector<Block> &blocks, const std::vector<std::uint32_t> &initial, std::uint32_t depth) {
        Output o;
        Placement pl(initial, t_.num_qubits());
        o.initial = initial;
        bool first_phase = true;
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            if (!blocks[b].phase) {
                emit_plain(blocks[b].gate, pl, t_, o.gates);
                continue;
            }
            BlockRecord rec{b, o.gates.size(), 0, pl.phys, {}};
            std::vector<Gate> gates;
            const LayoutPlan *plan = first_phase && options_.layout ? &*options_.layout : nullptr;
            compile_block(blocks[b].terms, pl, depth, plan, gates, o.segments);
            gates = cancel_cx(gates);
            o.gates.insert(o.gates.end(), gates.begin(), gates.end());
            rec.end = o.gates.size();
            rec.finish = pl.phys;
            o.records.push_back(std::move(rec));
            first_phase = false;
        }
        o.final_layout = pl.phys;
        return o;
    }

   private:
    bool local(const Monomial &qubits, const Placement &pl) const {
        return t_.induces_connected(pl.mask(qubits));
    }

    std::vector<Topology::Coupling> greedy_swaps(const std::vector<PhaseTerm> &terms,
                                                 const std::vector<std::size_t> &remaining, Placement pl) const {
        std::vector<Topology::Coupling> layer;
        std::uint64_t used = 0;
        auto count_local = [&](const Placement &p) {
            std::size_t n = 0;
            for (std::size_t i : remaining) {
                if (terms[i].qubits.size() <= options_.max_order && local(terms[i].qubits, p)) {
                    ++n;
                }
            }
            return n;
        };
        std::size_t current = count_local(pl);
        while (true) {
            std::size_t best_gain = 0;
            std::optional<Topology::Coupling> best;
            for (const auto &[a, b] : t_.edges()) {
                if ((used >> a & 1) || (used >> b & 1) || (pl.logical[a] < 0 && pl.logical[b] < 0)) {
                    continue;
                }
                pl.swap_physical(a, b);
                const std::size_t after = count_local(pl);
                pl.swap_physical(a, b);
                if (after > current && after - current > best_gain) {
                    best_gain = after - current;
                    best = Topology::Coupling{a, b};
                }
            }
            if (!best) {
                break;
            }
            layer.push_back(*best);
            used |= (std::uint64_t{1} << best->first) | (std::uint64_t{1} << best->second);
            pl.swap_physical(best->first, best->second);
            current += best_gain;
        }
        return layer;
    }

    void emit_segment(const std::vector<PhaseTerm> &terms, const std::vector<std::size_t> &chosen,
                      const Placement &pl, std::vector<Gate> &out) const {
        std::map<std::size_t, std::vector<std::size_t>> pairs_by_colour;
        std::vector<TreePlan> plans;
        std::vector<double> thetas;
        for (std::size_t i : chosen) {
            const PhaseTerm &term = terms[i];
            if (term.qubits.size() == 1) {
                out.push_back({GateKind::RZ, term.theta, {pl.phys[term.qubits[0]]}});
            } else if (term.qubits.size() == 2) {
                const std::uint32_t a = pl.phys[term.qubits[0]];
                const std::uint32_t b = pl.phys[term.qubits[1]];
                pairs_by_colour[colour_of_edge_[t_.edge_index(a, b)]].push_back(i);
            } else {
                plans.push_back(plan_tree(pl.mask(term.qubits), t_));
                thetas.push_back(term.theta);
            }
        }
        for (const auto &[colour, members] : pairs_by_colour) {
            for (std::size_t i : members) {
                const std::uint32_t a = pl.phys[terms[i].qubits[0]];
                const std::uint32_t b = pl.phys[terms[i].qubits[1]];
                out.push_back({GateKind::RZZ, terms[i].theta, {std::min(a, b), std::max(a, b)}});
            }
        }
        emit_trees(plans, thetas, out);
    }

    /// Moves the qubits of a non-local term together with SWAPs.
    void gather(const Monomial &qubits, Placement &pl, std::vector<Gate> &out) const {
        std::uint32_t seed = qubits[0];
        std::uint64_t seed_cost = std::numeric_limits<std::uint64_t>::max();
        for (std::uint32_t l : qubits) {
            std::uint64_t cost = 0;
            for (std::uint32_t o : qubits) {
                cost += t_.distance(pl.phys[l], pl.phys[o]);
            }
            if (cost < seed_cost) {
                seed_cost = cost;
                seed = l;
            }
        }
        auto component = [&] {
            const std::uint64_t mask = pl.mask(qubits);
            std::uint64_t reached = std::uint64_t{1} << pl.phys[seed];
            for (std::uint64_t frontier = reached; frontier;) {
                std::uint64_t next = 0;
                for (std::uint64_t f = frontier; f; f &= f - 1) {
                    next |= t_.neighbour_mask(static_cast<std::uint32_t>(std::countr_zero(f)));
                }
                frontier = next & mask & ~reached;
                reached |= frontier;
            }
            return reached;
        };
        for (std::uint64_t cluster = component(); cluster != pl.mask(qubits); cluster = component()) {
            std::vector<std::uint32_t> dist(t_.num_qubits(), std::numeric_limits<std::uint32_t>::max());
            std::deque<std::uint32_t> queue;
            for (std::uint64_t f = cluster; f; f &= f - 1) {
                const auto q = static_cast<std::uint32_t>(std::countr_zero(f));
                dist[q] = 0;
                queue.push_back(q);
            }
            while (!queue.empty()) {
                const std::uint32_t v = queue.front();
                queue.pop_front();
                for (std::uint32_t w : t_.neighbours(v)) {
                    if (dist[w] == std::numeric_limits<std::uint32_t>::max()) {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            std::uint32_t pos = 0;
            std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
            for (std::uint32_t l : qubits) {
                const std::uint32_t p = pl.phys[l];
                if (!(cluster >> p & 1) && (dist[p] < best || (dist[p] == best && p < pos))) {
                    best = dist[p];
                    pos = p;
                }
            }
            while (dist[pos] > 1) {
                for (std::uint32_t w : t_.neighbours(pos)) {
                    if (dist[w] + 1 == dist[pos]) {
                        out.push_back({GateKind::SWAP, 0.0, {std::min(pos, w), std::max(pos, w)}});
                        pl.swap_physical(pos, w);
                        pos = w;
                        break;
                    }
                }
            }
        }
    }

    void compile_block(const std::vector<PhaseTerm> &terms, Placement &pl, std::uint32_t depth, const LayoutPlan *plan,
                       std::vector<Gate> &out, std::vector<std::vector<std::uint32_t>> &segments) const {
        std::vector<std::size_t> remaining(terms.size());
        std::iota(remaining.begin(), remaining.end(), std::size_t{0});
        const std::size_t layers = plan ? plan->swap_layers.size() : depth;
        for (std::size_t s = 0; s <= layers && !remaining.empty(); ++s) {
            if (s > 0) {
                const auto layer = plan ? plan->swap_layers[s - 1] : greedy_swaps(terms, remaining, pl);
                if (layer.empty() && !plan) {
                    break;
                }
                for (const auto &[a, b] : layer) {
                    if (!t_.coupled(a, b)) {
                        throw DomainError("layout plan swaps uncoupled qubits");
                    }
                    out.push_back({GateKind::SWAP, 0.0, {std::min(a, b), std::max(a, b)}});
                    pl.swap_physical(a, b);
                }
            }
            if (plan && pl.phys != plan->segments.at(s)) {
                throw DomainError("layout plan is inconsistent with its SWAP layers");
            }
            segments.push_back(pl.phys);
            std::vector<std::size_t> chosen;
            std::vector<std::size_t> rest;
            for (std::size_t i : remaining) {
                (local(terms[i].qubits, pl) ? chosen : rest).push_back(i);
            }
            emit_segment(terms, chosen, pl, out);
            remaining = std::move(rest);
        }
        for (std::size_t i : remaining) {
            gather(terms[i].qubits, pl, out);
            emit_segment(terms, {i}, pl, out);
        }
    }

    const Topology &t_;
    const ParityOptions &options_;
    std::vector<std::size_t> colour_of_edge_;
};

/// Number of interactions local under a layout.
class LayoutScore {
   public:
    LayoutScore(const std::vector<Monomial> &sets, const Topology &t, std::uint32_t logical)
        : sets_(sets), t_(t), by_qubit_(logical) {
        for (std::size_t i = 0; i < sets_.size(); ++i) {
            for (std::uint32_t q : sets_[i]) {
                by_qubit_[q].push_back(i);
            }
        }
    }

    bool local(std::size_t i, const std::vector<std::uint32_t> &phys) const {
        std::uint64_t mask = 0;
        for (std::uint32_t q : sets_[i]) {
            mask |= std::uint64_t{1} << phys[q];
        }
        return t_.induces_connected(mask);
    }

    std::size_t total(const std::vector<std::uint32_t> &phys) const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < sets_.size(); ++i) {
            n += local(i, phys) ? 1 : 0;
        }
        return n;
    }

    /// Local sets touching either logical qubit (pass -1 for an empty slot).
    std::size_t touching(int a, int b, const std::vector<std::uint32_t> &phys) const {
        std::set<std::size_t> ids;
        for (int q : {a, b}) {
            if (q >= 0) {
                ids.insert(by_qubit_[static_cast<std::size_t>(q)].begin(), by_qubit_[static_cast<std::size_t>(q)].end());
            }
        }
        std::size_t n = 0;
        for (std::size_t i : ids) {
            n += local(i, phys) ? 1 : 0;
        }
        return n;
    }

   private:
    const std::vector<Monomial> &sets_;
    const Topology &t_;
    std::vector<std::vector<std::size_t>> by_qubit_;
};

std::vector<std::uint32_t> search_layout(const std::vector<Monomial> &sets, std::uint32_t logical, const Topology &t,
                                         std::uint64_t seed) {
    const std::uint32_t m = t.num_qubits();
    const LayoutScore score(sets, t, logical);
    std::vector<std::uint32_t> order(m);
    std::iota(order.begin(), order.end(), 0u);
    if (sets.empty()) {
        return {order.begin(), order.begin() + logical};
    }
    if (m <= 8) {
        std::vector<std::uint32_t> best(order.begin(), order.begin() + logical);
        std::size_t best_score = score.total(best);
        std::set<std::vector<std::uint32_t>> seen;
        do {
            std::vector<std::uint32_t> phys(order.begin(), order.begin() + logical);
            if (!seen.insert(phys).second) {
                continue;
            }
            const std::size_t s = score.total(phys);
            if (s > best_score) {
                best_score = s;
                best = phys;
            }
        } while (std::next_permutation(order.begin(), order.end()));
        return best;
    }

    constexpr int kRestarts = 8;
    std::vector<std::uint32_t> best;
    std::size_t best_score = 0;
    for (int r = 0; r < kRestarts; ++r) {
        std::vector<std::uint32_t> perm(m);
        std::iota(perm.begin(), perm.end(), 0u);
        if (r > 0) {
            Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
            rng.shuffle(perm.begin(), perm.end());
        }
        Placement pl(std::vector<std::uint32_t>(perm.begin(), perm.begin() + logical), m);
        std::size_t current = score.total(pl.phys);
        while (true) {
            long best_delta = 0;
            std::pair<std::uint32_t, std::uint32_t> move{0, 0};
            for (std::uint32_t a = 0; a < m; ++a) {
                for (std::uint32_t b = a + 1; b < m; ++b) {
                    const int la = pl.logical[a];
                    const int lb = pl.logical[b];
                    if (la < 0 && lb < 0) {
                        continue;
                    }
                    const auto before = static_cast<long>(score.touching(la, lb, pl.phys));
                    pl.swap_physical(a, b);
                    const auto after = static_cast<long>(score.touching(la, lb, pl.phys));
                    pl.swap_physical(a, b);
                    if (after - before > best_delta) {
                        best_delta = after - before;
                        move = {a, b};
                    }
                }
            }
            if (best_delta <= 0) {
                break;
            }
            pl.swap_physical(move.first, move.second);
            current += static_cast<std::size_t>(best_delta);
        }
        if (best.empty() || current > best_score) {
            best = pl.phys;
            best_score = current;
        }
    }
    return best;
}

}  // namespace

CompiledCircuit compile_parity(const Circuit &c, const Topology &t, const ParityOptions &options) {
    check_inputs(c, t);
    if (t.num_qubits() > 64) {
        throw SizeError("parity compilation supports at most 64 physical qubits");
    }
    const std::uint32_t n = c.num_qubits();
    const auto blocks = split_blocks(c);

    std::vector<std::uint32_t> initial;
    std::vector<std::uint32_t> depths = options.depth_candidates;
    if (options.layout) {
        if (options.layout->segments.empty() || options.layout->segments.size() != options.layout->swap_layers.size() + 1) {
            throw DomainError("layout plan needs one more segment than SWAP layers");
        }
        initial = options.layout->segments.front();
        if (initial.size() != n) {
            throw DomainError("layout plan covers " + std::to_string(initial.size()) + " of " + std::to_string(n) +
                              " logical qubits");
        }
        depths = {static_cast<std::uint32_t>(options.layout->swap_layers.size())};
    } else {
        std::set<Monomial> sets;
        for (const Block &b : blocks) {
            for (const PhaseTerm &term : b.terms) {
                if (term.qubits.size() >= 2 && term.qubits.size() <= options.max_order) {
                    sets.insert(term.qubits);
                }
            }
        }
        initial = search_layout({sets.begin(), sets.end()}, n, t, options.seed);
    }
    if (depths.empty()) {
        depths = {0, 1, 2, 3, t.diameter()};
    }
    std::sort(depths.begin(), depths.end());
    depths.erase(std::unique(depths.begin(), depths.end()), depths.end());

    ParityCompiler compiler(t, options);
    std::optional<ParityCompiler::Output> best;
    CircuitMetrics best_metrics;
    std::uint32_t best_depth = 0;
    for (std::uint32_t d : depths) {
        auto out = compiler.run(blocks, initial, d);
        Circuit circuit(t.num_qubits());
        for (const Gate &g : out.gates) {
            circuit.append(g);
        }
        const CircuitMetrics metrics = circuit_metrics(circuit);
        if (!best || metrics.two_qubit_depth < best_metrics.two_qubit_depth ||
            (metrics.two_qubit_depth == best_metrics.two_qubit_depth &&
             metrics.two_qubit_count < best_metrics.two_qubit_count)) {
            best = std::move(out);
            best_metrics = metrics;
            best_depth = d;
        }
    }

    if (options.self_check && n <= kSelfCheckQubits) {
        for (const auto &rec : best->records) {
            Circuit logical(n);
            for (const PhaseTerm &term : blocks[rec.block].terms) {
                logical.append({term.qubits.size() == 1 ? GateKind::RZ : GateKind::MRZ, term.theta, term.qubits});
            }
            Circuit physical(t.num_qubits());
            for (std::size_t i = rec.begin; i < rec.end; ++i) {
                physical.append(best->gates[i]);
            }
            PlacedCircuit expected{logical, {}, {}};
            expected.initial_layout.resize(n);
            std::iota(expected.initial_layout.begin(), expected.initial_layout.end(), 0u);
            expected.final_layout = expected.initial_layout;
            if (!verify_equivalence(expected, PlacedCircuit{physical, rec.start, rec.finish})) {
                throw InternalError("parity compilation failed its equivalence self-check");
            }
        }
    }

    CompiledCircuit result;
    result.placed.circuit = Circuit(t.num_qubits());
    for (const Gate &g : best->gates) {
        result.placed.circuit.append(g);
    }
    result.placed.initial_layout = best->initial;
    result.placed.final_layout = best->final_layout;
    result.segment_layouts = best->segments;
    if (result.segment_layouts.empty()) {
        result.segment_layouts = {best->initial};
    }
    result.metrics = best_metrics;
    result.method = "parity";
    result.swap_depth = best_depth;

    if (options.naive_fallback && !options.layout) {
        CompiledCircuit naive = compile_naive(c, t, 0);
        if (naive.metrics.two_qubit_count < result.metrics.two_qubit_count) {
            naive.method = "naive-fallback";
            return naive;
        }
    }
    return result;
}

}  // namespace tangle
