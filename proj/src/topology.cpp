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

#include "tangle/topology.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>
#include <regex>
#include <set>

#include "tangle/error.hpp"

namespace tangle {

namespace {
constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();
}

Topology::Topology(std::uint32_t num_qubits, std::vector<Coupling> edges, TopologyKind kind, std::string name)
    : num_qubits_(num_qubits), kind_(kind), name_(std::move(name)) {
    if (num_qubits_ == 0) {
        throw DomainError("topology needs at least one qubit");
    }
    for (auto &[a, b] : edges) {
        if (a == b || a >= num_qubits_ || b >= num_qubits_) {
            throw DomainError("invalid coupling (" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
        if (a > b) {
            std::swap(a, b);
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    adjacency_.assign(num_qubits_, {});
    neighbour_masks_.assign(num_qubits_, 0);
    for (const auto &[a, b] : edges_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
        if (num_qubits_ <= 64) {
            neighbour_masks_[a] |= std::uint64_t{1} << b;
            neighbour_masks_[b] |= std::uint64_t{1} << a;
        }
    }
    for (auto &adj : adjacency_) {
        std::sort(adj.begin(), adj.end());
    }
    distances_.assign(num_qubits_, std::vector<std::uint32_t>(num_qubits_, kUnreachable));
    for (std::uint32_t s = 0; s < num_qubits_; ++s) {
        auto &dist = distances_[s];
        std::deque<std::uint32_t> queue{s};
        dist[s] = 0;
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            for (std::uint32_t w : adjacency_[v]) {
                if (dist[w] == kUnreachable) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
}

Topology Topology::linear(std::uint32_t n) {
    std::vector<Coupling> edges;
    for (std::uint32_t q = 0; q + 1 < n; ++q) {
        edges.emplace_back(q, q + 1);
    }
    return Topology(n, std::move(edges), TopologyKind::Linear, "linear:" + std::to_string(n));
}

Topology Topology::grid(std::uint32_t rows, std::uint32_t cols) {
    std::vector<Coupling> edges;
    for (std::uint32_t r = 0; r < rows; ++r) {
        for (std::uint32_t c = 0; c < cols; ++c) {
            const std::uint32_t q = r * cols + c;
            if (c + 1 < cols) {
                edges.emplace_back(q, q + 1);
            }
            if (r + 1 < rows) {
                edges.emplace_back(q, q + cols);
            }
        }
    }
    return Topology(rows * cols, std::move(edges), TopologyKind::Grid,
                    "grid:" + std::to_string(rows) + "x" + std::to_string(cols));
}

Topology Topology::heavy_hex(std::uint32_t cells) {
    if (cells == 0) {
        throw DomainError("heavy-hex needs at least one cell");
    }
    // Numbering: top pendants, top row, rung couplers, bottom row, bottom
    // pendants. Rows have 4c+1 qubits; even row positions are lattice
    // corners, odd positions are edge couplers.
    const std::uint32_t row = 4 * cells + 1;
    const std::uint32_t top_pendants = 0;
    const std::uint32_t top = top_pendants + cells;
    const std::uint32_t rungs = top + row;
    const std::uint32_t bottom = rungs + cells + 1;
    const std::uint32_t bottom_pendants = bottom + row;
    const std::uint32_t total = bottom_pendants + cells;

    std::vector<Coupling> edges;
    for (std::uint32_t i = 0; i + 1 < row; ++i) {
        edges.emplace_back(top + i, top + i + 1);
        edges.emplace_back(bottom + i, bottom + i + 1);
    }
    for (std::uint32_t k = 0; k <= cells; ++k) {
        edges.emplace_back(top + 4 * k, rungs + k);
        edges.emplace_back(rungs + k, bottom + 4 * k);
    }
    for (std::uint32_t k = 0; k < cells; ++k) {
        edges.emplace_back(top_pendants + k, top + 4 * k + 2);
        edges.emplace_back(bottom + 4 * k + 2, bottom_pendants + k);
    }
    return Topology(total, std::move(edges), TopologyKind::HeavyHex, "heavy-hex:" + std::to_string(cells));
}

bool Topology::coupled(std::uint32_t a, std::uint32_t b) const {
    if (a > b) {
        std::swap(a, b);
    }
    return std::binary_search(edges_.begin(), edges_.end(), Coupling{a, b});
}

std::size_t Topology::edge_index(std::uint32_t a, std::uint32_t b) const {
    if (a > b) {
        std::swap(a, b);
    }
    auto it = std::lower_bound(edges_.begin(), edges_.end(), Coupling{a, b});
    if (it == edges_.end() || *it != Coupling{a, b}) {
        throw DomainError("qubits " + std::to_string(a) + " and " + std::to_string(b) + " are not coupled");
    }
    return static_cast<std::size_t>(it - edges_.begin());
}

std::uint32_t Topology::max_degree() const {
    std::size_t d = 0;
    for (const auto &adj : adjacency_) {
        d = std::max(d, adj.size());
    }
    return static_cast<std::uint32_t>(d);
}

bool Topology::connected() const {
    return std::all_of(distances_[0].begin(), distances_[0].end(), [](std::uint32_t d) { return d != kUnreachable; });
}

bool Topology::bipartite() const {
    std::vector<int> side(num_qubits_, -1);
    for (std::uint32_t s = 0; s < num_qubits_; ++s) {
        if (side[s] != -1) {
            continue;
        }
        side[s] = 0;
        std::deque<std::uint32_t> queue{s};
        while (!queue.empty()) {
            const std::uint32_t v = queue.front();
            queue.pop_front();
            for (std::uint32_t w : adjacency_[v]) {
                if (side[w] == -1) {
                    side[w] = 1 - side[v];
                    queue.push_back(w);
                } else if (side[w] == side[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

std::uint32_t Topology::diameter() const {
    std::uint32_t d = 0;
    for (const auto &row : distances_) {
        for (std::uint32_t x : row) {
            if (x != kUnreachable) {
                d = std::max(d, x);
            }
        }
    }
    return d;
}

std::vector<std::uint32_t> Topology::shortest_path(std::uint32_t a, std::uint32_t b) const {
    if (distance(a, b) == kUnreachable) {
        throw DomainError("qubits " + std::to_string(a) + " and " + std::to_string(b) + " are disconnected");
    }
    std::vector<std::uint32_t> path{a};
    while (path.back() != b) {
        const std::uint32_t here = path.back();
        for (std::uint32_t w : adjacency_[here]) {
            if (distances_[w][b] + 1 == distances_[here][b]) {
                path.push_back(w);
                break;
            }
        }
    }
    return path;
}

bool Topology::induces_connected(std::uint64_t mask) const {
    if (num_qubits_ > 64) {
        throw SizeError("connectivity masks need at most 64 qubits");
    }
    if (mask == 0) {
        return true;
    }
    std::uint64_t reached = mask & (~mask + 1);
    std::uint64_t frontier = reached;
    while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) {
            next |= neighbour_masks_[std::countr_zero(f)];
        }
        next &= mask & ~reached;
        reached |= next;
        frontier = next;
    }
    return reached == mask;
}

Topology build_topology(const std::string &spec) {
    static const std::regex linear_re(R"(linear:(\d+))");
    static const std::regex grid_re(R"(grid:(\d+)x(\d+))");
    static const std::regex hex_re(R"(heavy-hex:(\d+))");
    std::smatch m;
    auto number = [&](std::size_t i) {
        const unsigned long v = std::stoul(m[i].str());
        if (v == 0 || v > 4096) {
            throw ConfigError("topology size out of range in '" + spec + "'");
        }
        return static_cast<std::uint32_t>(v);
    };
    if (std::regex_match(spec, m, linear_re)) {
        return Topology::linear(number(1));
    }
    if (std::regex_match(spec, m, grid_re)) {
        return Topology::grid(number(1), number(2));
    }
    if (std::regex_match(spec, m, hex_re)) {
        return Topology::heavy_hex(number(1));
    }
    throw ConfigError("unknown topology '" + spec + "' (expected linear:N, grid:RxC or heavy-hex:C)");
}

namespace {

/// Edge colouring state: at[v][c] is the neighbour joined to v by colour c.
class Colouring {
   public:
    Colouring(const Topology &t, std::uint32_t palette)
        : t_(t), palette_(palette), at_(t.num_qubits(), std::vector<int>(palette, -1)),
          colour_(t.edges().size(), -1) {
    }

    bool free_at(std::uint32_t v, std::uint32_t c) const {
        return at_[v][c] == -1;
    }
    std::uint32_t first_free(std::uint32_t v) const {
        for (std::uint32_t c = 0; c < palette_; ++c) {
            if (free_at(v, c)) {
                return c;
            }
        }
        throw InternalError("edge colouring ran out of colours");
    }
    int colour(std::uint32_t u, std::uint32_t v) const {
        return colour_[t_.edge_index(u, v)];
    }
    void set(std::uint32_t u, std::uint32_t v, int c) {
        const std::size_t e = t_.edge_index(u, v);
        if (colour_[e] >= 0) {
            at_[u][colour_[e]] = -1;
            at_[v][colour_[e]] = -1;
        }
        colour_[e] = c;
        if (c >= 0) {
            at_[u][c] = static_cast<int>(v);
            at_[v][c] = static_cast<int>(u);
        }
    }
    /// Swaps colours a and b along the maximal path from v that starts with a.
    void flip_path(std::uint32_t v, std::uint32_t a, std::uint32_t b) {
        std::vector<std::pair<std::uint32_t, std::uint32_t>> path;
        std::uint32_t here = v;
        std::uint32_t want = a;
        while (at_[here][want] != -1) {
            const auto next = static_cast<std::uint32_t>(at_[here][want]);
            path.emplace_back(here, next);
            here = next;
            want = want == a ? b : a;
            if (path.size() > t_.edges().size()) {
                throw InternalError("alternating path did not terminate");
            }
        }
        std::vector<int> old;
        for (const auto &[x, y] : path) {
            old.push_back(colour(x, y));
            set(x, y, -1);
        }
        for (std::size_t i = 0; i < path.size(); ++i) {
            set(path[i].first, path[i].second, old[i] == static_cast<int>(a) ? static_cast<int>(b)
                                                                              : static_cast<int>(a));
        }
    }
    std::vector<std::vector<Topology::Coupling>> classes() const {
        std::vector<std::vector<Topology::Coupling>> out(palette_);
        for (std::size_t e = 0; e < colour_.size(); ++e) {
            out.at(static_cast<std::size_t>(colour_[e])).push_back(t_.edges()[e]);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const auto &c) { return c.empty(); }), out.end());
        return out;
    }

   private:
    const Topology &t_;
    std::uint32_t palette_;
    std::vector<std::vector<int>> at_;
    std::vector<int> colour_;
};

void colour_bipartite(const Topology &t, Colouring &col) {
    for (const auto &[u, v] : t.edges()) {
        const std::uint32_t a = col.first_free(u);
        if (!col.free_at(v, a)) {
            const std::uint32_t b = col.first_free(v);
            // The a/b path from v cannot reach u in a bipartite graph.
            col.flip_path(v, a, b);
        }
        col.set(u, v, static_cast<int>(a));
    }
}

/// Misra-Gries: at most max-degree + 1 colours on any simple graph.
void colour_misra_gries(const Topology &t, Colouring &col) {
    for (const auto &[u, v0] : t.edges()) {
        std::vector<std::uint32_t> fan{v0};
        std::vector<bool> in_fan(t.num_qubits(), false);
        in_fan[v0] = true;
        for (bool grew = true; grew;) {
            grew = false;
            for (std::uint32_t w : t.neighbours(u)) {
                const int c = col.colour(u, w);
                if (!in_fan[w] && c >= 0 && col.free_at(fan.back(), static_cast<std::uint32_t>(c))) {
                    fan.push_back(w);
                    in_fan[w] = true;
                    grew = true;
                    break;
                }
            }
        }
        const std::uint32_t c = col.first_free(u);
        const std::uint32_t d = col.first_free(fan.back());
        if (!col.free_at(u, d)) {
            col.flip_path(u, d, c);
        }
        std::size_t w = 0;
        for (std::size_t i = 0; i < fan.size(); ++i) {
            if (i > 0) {
                const int ci = col.colour(u, fan[i]);
                if (ci < 0 || !col.free_at(fan[i - 1], static_cast<std::uint32_t>(ci))) {
                    break;
                }
            }
            if (col.free_at(fan[i], d)) {
                w = i;
                break;
            }
        }
        for (std::size_t i = 0; i < w; ++i) {
            const int next = col.colour(u, fan[i + 1]);
            col.set(u, fan[i + 1], -1);
            col.set(u, fan[i], next);
        }
        col.set(u, fan[w], static_cast<int>(d));
    }
}

}  // namespace

std::vector<std::vector<Topology::Coupling>> edge_colouring(const Topology &t) {
    if (t.edges().empty()) {
        return {};
    }
    if (t.bipartite()) {
        Colouring col(t, t.max_degree());
        colour_bipartite(t, col);
        return col.classes();
    }
    Colouring col(t, t.max_degree() + 1);
    colour_misra_gries(t, col);
    return col.classes();
}

std::vector<std::uint64_t> connected_sets(const Topology &t, std::uint32_t size) {
    if (t.num_qubits() > 64) {
        throw SizeError("connected set enumeration needs at most 64 qubits");
    }
    if (size == 0 || size > t.num_qubits()) {
        return {};
    }
    std::set<std::uint64_t> level;
    for (std::uint32_t q = 0; q < t.num_qubits(); ++q) {
        level.insert(std::uint64_t{1} << q);
    }
    for (std::uint32_t k = 1; k < size; ++k) {
        std::set<std::uint64_t> next;
        for (std::uint64_t s : level) {
            std::uint64_t border = 0;
            for (std::uint64_t f = s; f; f &= f - 1) {
                border |= t.neighbour_mask(static_cast<std::uint32_t>(std::countr_zero(f)));
            }
            border &= ~s;
            for (; border; border &= border - 1) {
                next.insert(s | (border & (~border + 1)));
            }
        }
        level = std::move(next);
    }
    return {level.begin(), level.end()};
}

}  // namespace tangle
