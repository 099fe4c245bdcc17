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

#include "tangle/graph.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "tangle/error.hpp"
#include "tangle/rng.hpp"

namespace tangle {

OrientedGraph::OrientedGraph(std::uint32_t node_count, std::vector<std::int64_t> weights, std::set<Edge> edges)
    : node_count_(node_count), weights_(std::move(weights)), edges_(std::move(edges)) {
    if (node_count_ == 0) {
        throw DomainError("graph must have at least one node");
    }
    if (weights_.size() != node_count_) {
        throw DomainError("expected " + std::to_string(node_count_) + " weights, got " +
                          std::to_string(weights_.size()));
    }
    for (std::size_t v = 0; v < weights_.size(); ++v) {
        if (weights_[v] < 0) {
            throw DomainError("negative weight on node " + std::to_string(v));
        }
    }
    adjacency_.assign(oriented_count(), {});
    for (const auto &[a, b] : edges_) {
        if (a >= oriented_count() || b >= oriented_count()) {
            throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") references an oriented vertex >= " + std::to_string(oriented_count()));
        }
        if (!edges_.contains({flip(b), flip(a)})) {
            throw DomainError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") is missing its reverse complement (" + std::to_string(flip(b)) + "," +
                              std::to_string(flip(a)) + ")");
        }
        adjacency_[a].push_back(b);
    }
}

OrientedGraph OrientedGraph::with_closure(std::uint32_t node_count, std::vector<std::int64_t> weights,
                                          const std::vector<Edge> &edges) {
    std::set<Edge> closed;
    for (const auto &[a, b] : edges) {
        closed.insert({a, b});
        closed.insert({flip(b), flip(a)});
    }
    return OrientedGraph(node_count, std::move(weights), std::move(closed));
}

bool OrientedGraph::has_edge(OrientedId from, OrientedId to) const {
    return edges_.contains({from, to});
}

namespace {

void check_steps(const OrientedGraph &g, const Walk &w) {
    for (OrientedId s : w.steps) {
        if (s >= g.oriented_count()) {
            throw DomainError("walk step " + std::to_string(s) + " is not an oriented vertex of a " +
                              std::to_string(g.node_count()) + "-node graph");
        }
    }
}

}  // namespace

std::vector<std::size_t> broken_edges(const OrientedGraph &g, const Walk &w) {
    check_steps(g, w);
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t + 1 < w.steps.size(); ++t) {
        if (!g.has_edge(w.steps[t], w.steps[t + 1])) {
            out.push_back(t);
        }
    }
    return out;
}

bool is_valid_walk(const OrientedGraph &g, const Walk &w) {
    return !w.steps.empty() && broken_edges(g, w).empty();
}

std::vector<std::int64_t> visit_counts(const OrientedGraph &g, const Walk &w) {
    check_steps(g, w);
    std::vector<std::int64_t> counts(g.node_count(), 0);
    for (OrientedId s : w.steps) {
        ++counts[node_of(s)];
    }
    return counts;
}

std::int64_t walk_cost(const OrientedGraph &g, const Walk &w) {
    const auto counts = visit_counts(g, w);
    std::int64_t cost = 0;
    for (std::uint32_t v = 0; v < g.node_count(); ++v) {
        const std::int64_t d = counts[v] - g.weight(v);
        cost += d * d;
    }
    return cost;
}

std::uint32_t default_walk_length(const OrientedGraph &g) {
    const std::int64_t total = std::accumulate(g.weights().begin(), g.weights().end(), std::int64_t{0});
    if (total == 0) {
        throw DomainError("degenerate instance: all node weights are zero");
    }
    if (total > UINT32_MAX) {
        throw DomainError("total weight too large");
    }
    return static_cast<std::uint32_t>(total);
}

OptimalWalks enumerate_optimal_walks(const OrientedGraph &g, std::uint32_t length, std::uint64_t cap) {
    if (length == 0) {
        throw DomainError("walk length must be at least 1");
    }
    std::uint64_t sequences = 1;
    for (std::uint32_t t = 0; t < length; ++t) {
        if (sequences > cap / g.oriented_count()) {
            throw SizeError("enumeration of " + std::to_string(g.oriented_count()) + "^" + std::to_string(length) +
                            " sequences exceeds the cap of " + std::to_string(cap));
        }
        sequences *= g.oriented_count();
    }

    OptimalWalks result;
    std::vector<OrientedId> steps(length);
    std::vector<std::int64_t> counts(g.node_count(), 0);

    auto score = [&]() {
        std::int64_t cost = 0;
        for (std::uint32_t v = 0; v < g.node_count(); ++v) {
            const std::int64_t d = counts[v] - g.weight(v);
            cost += d * d;
        }
        if (!result.min_cost || cost < *result.min_cost) {
            result.min_cost = cost;
            result.walks.clear();
        }
        if (cost == *result.min_cost) {
            result.walks.push_back(Walk{steps});
        }
    };

    // Depth-first over valid walks only; successors are ascending so the
    // output is already in lexicographic order.
    auto extend = [&](auto &&self, std::uint32_t t) -> void {
        if (t == length) {
            score();
            return;
        }
        for (OrientedId next : g.successors(steps[t - 1])) {
            steps[t] = next;
            ++counts[node_of(next)];
            self(self, t + 1);
            --counts[node_of(next)];
        }
    };
    for (OrientedId start = 0; start < g.oriented_count(); ++start) {
        steps[0] = start;
        ++counts[node_of(start)];
        extend(extend, 1);
        --counts[node_of(start)];
    }
    return result;
}

namespace {

struct Planted {
    std::vector<std::int64_t> weights;
    Walk walk;
    std::set<Edge> edges;
};

Planted plant(const TangleParams &p) {
    if (p.nodes == 0) {
        throw DomainError("generator needs at least one node");
    }
    if (p.max_weight == 0) {
        throw DomainError("generator needs max_weight >= 1");
    }
    if (!(p.edge_density >= 0.0 && p.edge_density <= 1.0)) {
        throw DomainError("edge density must lie in [0, 1]");
    }
    Rng rng(p.seed);
    Planted out;
    out.weights.assign(p.nodes, 1);
    if (p.walk_length) {
        const std::uint64_t lo = p.nodes;
        const std::uint64_t hi = std::uint64_t{p.nodes} * p.max_weight;
        if (*p.walk_length < lo || *p.walk_length > hi) {
            throw DomainError("cannot plant a walk of length " + std::to_string(*p.walk_length) + " over " +
                              std::to_string(p.nodes) + " nodes with weights in [1, " +
                              std::to_string(p.max_weight) + "]");
        }
        // Hand out the surplus one visit at a time to nodes with spare capacity.
        for (std::uint64_t extra = *p.walk_length - lo; extra > 0; --extra) {
            std::vector<std::uint32_t> open;
            for (std::uint32_t v = 0; v < p.nodes; ++v) {
                if (out.weights[v] < p.max_weight) {
                    open.push_back(v);
                }
            }
            ++out.weights[open[rng.below(open.size())]];
        }
    } else {
        for (auto &w : out.weights) {
            w = 1 + static_cast<std::int64_t>(rng.below(p.max_weight));
        }
    }

    std::vector<std::uint32_t> visits;
    for (std::uint32_t v = 0; v < p.nodes; ++v) {
        visits.insert(visits.end(), static_cast<std::size_t>(out.weights[v]), v);
    }
    rng.shuffle(visits.begin(), visits.end());
    for (std::uint32_t v : visits) {
        out.walk.steps.push_back(oriented(v, rng.bernoulli(0.5)));
    }

    auto add = [&](OrientedId a, OrientedId b) {
        out.edges.insert({a, b});
        out.edges.insert({flip(b), flip(a)});
    };
    for (std::size_t t = 0; t + 1 < out.walk.steps.size(); ++t) {
        add(out.walk.steps[t], out.walk.steps[t + 1]);
    }
    const OrientedId m = 2 * p.nodes;
    for (OrientedId a = 0; a < m; ++a) {
        for (OrientedId b = 0; b < m; ++b) {
            // Each mate pair is decided once, from its smaller member.
            const Edge e{a, b};
            const Edge mate{flip(b), flip(a)};
            if (mate < e) {
                continue;
            }
            if (rng.bernoulli(p.edge_density)) {
                add(a, b);
            }
        }
    }
    return out;
}

}  // namespace

OrientedGraph generate_tangle(const TangleParams &params) {
    Planted p = plant(params);
    return OrientedGraph(params.nodes, std::move(p.weights), std::move(p.edges));
}

Walk planted_walk(const TangleParams &params) {
    return plant(params).walk;
}

std::string graph_to_json(const OrientedGraph &g) {
    nlohmann::json j;
    j["n"] = g.node_count();
    j["weights"] = g.weights();
    nlohmann::json edges = nlohmann::json::array();
    for (const auto &[a, b] : g.edges()) {
        edges.push_back({a, b});
    }
    j["edges"] = std::move(edges);
    return j.dump() + "\n";
}

namespace {

int line_of_offset(const std::string &text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Line on which the k-th element of the top-level array under `key` starts.
int line_of_element(const std::string &text, const std::string &key, std::size_t k) {
    const std::size_t at = text.find("\"" + key + "\"");
    if (at == std::string::npos) {
        return 0;
    }
    const std::size_t open = text.find('[', at);
    if (open == std::string::npos) {
        return line_of_offset(text, at);
    }
    int depth = 0;
    std::size_t index = 0;
    bool expecting = true;
    for (std::size_t pos = open + 1; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (std::isspace(static_cast<unsigned char>(c))) {
            continue;
        }
        if (depth == 0 && c == ',') {
            ++index;
            expecting = true;
            continue;
        }
        if (depth == 0 && expecting) {
            if (index == k) {
                return line_of_offset(text, pos);
            }
            expecting = false;
        }
        if (c == '[' || c == '{') {
            ++depth;
        } else if (c == ']' || c == '}') {
            if (--depth < 0) {
                break;
            }
        }
    }
    return line_of_offset(text, at);
}

}  // namespace

OrientedGraph graph_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ParseError(e.what(), line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    auto key_line = [&](const std::string &key) {
        const std::size_t at = text.find("\"" + key + "\"");
        return at == std::string::npos ? 0 : line_of_offset(text, at);
    };
    if (!j.is_object()) {
        throw ParseError("graph file must contain a JSON object", 1);
    }
    for (const char *key : {"n", "weights", "edges"}) {
        if (!j.contains(key)) {
            throw ParseError(std::string("missing field \"") + key + "\"", 1);
        }
    }
    if (!j["n"].is_number_unsigned() || j["n"].get<std::uint64_t>() == 0 ||
        j["n"].get<std::uint64_t>() > UINT32_MAX / 2) {
        throw ParseError("\"n\" must be a positive integer", key_line("n"));
    }
    const auto n = j["n"].get<std::uint32_t>();
    if (!j["weights"].is_array()) {
        throw ParseError("\"weights\" must be an array", key_line("weights"));
    }
    std::vector<std::int64_t> weights;
    for (std::size_t i = 0; i < j["weights"].size(); ++i) {
        const auto &w = j["weights"][i];
        if (!w.is_number_integer() || w.get<std::int64_t>() < 0) {
            throw ParseError("weight " + std::to_string(i) + " must be a non-negative integer",
                             line_of_element(text, "weights", i));
        }
        weights.push_back(w.get<std::int64_t>());
    }
    if (weights.size() != n) {
        throw ParseError("expected " + std::to_string(n) + " weights, got " + std::to_string(weights.size()),
                         key_line("weights"));
    }
    if (!j["edges"].is_array()) {
        throw ParseError("\"edges\" must be an array", key_line("edges"));
    }
    std::set<Edge> edges;
    std::vector<std::pair<Edge, std::size_t>> order;
    for (std::size_t i = 0; i < j["edges"].size(); ++i) {
        const auto &e = j["edges"][i];
        const int line = line_of_element(text, "edges", i);
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw ParseError("edge " + std::to_string(i) + " must be a pair of non-negative integers", line);
        }
        const auto a = e[0].get<std::uint64_t>();
        const auto b = e[1].get<std::uint64_t>();
        if (a >= 2ull * n || b >= 2ull * n) {
            throw ParseError("edge " + std::to_string(i) + " references an oriented vertex >= " + std::to_string(2 * n),
                             line);
        }
        const Edge edge{static_cast<OrientedId>(a), static_cast<OrientedId>(b)};
        edges.insert(edge);
        order.emplace_back(edge, i);
    }
    for (const auto &[edge, i] : order) {
        if (!edges.contains({flip(edge.second), flip(edge.first)})) {
            throw ParseError("edge " + std::to_string(i) + " (" + std::to_string(edge.first) + "," +
                                 std::to_string(edge.second) + ") lacks its reverse complement (" +
                                 std::to_string(flip(edge.second)) + "," + std::to_string(flip(edge.first)) + ")",
                             line_of_element(text, "edges", i));
        }
    }
    return OrientedGraph(n, std::move(weights), std::move(edges));
}

}  // namespace tangle
