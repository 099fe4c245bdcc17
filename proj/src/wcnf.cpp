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

#include "tangle/wcnf.hpp"

#include <unistd.h>

#include <algorithm>
#include <array>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "tangle/error.hpp"

namespace tangle {

WcnfProblem build_wcnf(const std::vector<Monomial> &interactions, std::uint32_t logical, const Topology &t,
                       std::uint32_t swap_depth, std::uint32_t max_order) {
    if (logical > t.num_qubits()) {
        throw SizeError("more logical qubits than the topology provides");
    }
    if (t.num_qubits() > 64) {
        throw SizeError("WCNF export supports at most 64 physical qubits");
    }
    WcnfProblem pb;
    pb.logical = logical;
    pb.physical = t.num_qubits();
    pb.swap_depth = swap_depth;
    pb.max_order = max_order;
    pb.edges = t.edges();
    pb.interactions = interactions;
    const std::uint32_t n = logical;
    const std::uint32_t m = pb.physical;
    const std::uint32_t segments = swap_depth + 1;
    for (const Monomial &set : interactions) {
        for (std::uint32_t q : set) {
            if (q >= logical) {
                throw DomainError("interaction refers to logical qubit " + std::to_string(q));
            }
        }
    }

    for (std::uint32_t s = 0; s < segments; ++s) {
        for (std::uint32_t l = 0; l < n; ++l) {
            std::vector<int> some;
            for (std::uint32_t p = 0; p < m; ++p) {
                some.push_back(pb.x(s, l, p));
                for (std::uint32_t p2 = p + 1; p2 < m; ++p2) {
                    pb.hard.push_back({-pb.x(s, l, p), -pb.x(s, l, p2)});
                }
            }
            pb.hard.push_back(std::move(some));
        }
        for (std::uint32_t p = 0; p < m; ++p) {
            for (std::uint32_t l = 0; l < n; ++l) {
                for (std::uint32_t l2 = l + 1; l2 < n; ++l2) {
                    pb.hard.push_back({-pb.x(s, l, p), -pb.x(s, l2, p)});
                }
            }
        }
    }
    for (std::uint32_t s = 0; s < swap_depth; ++s) {
        for (std::size_t e = 0; e < pb.edges.size(); ++e) {
            for (std::size_t f = e + 1; f < pb.edges.size(); ++f) {
                const auto [a, b] = pb.edges[e];
                const auto [c, d] = pb.edges[f];
                if (a == c || a == d || b == c || b == d) {
                    pb.hard.push_back({-pb.w(s, e), -pb.w(s, f)});
                }
            }
            const auto [a, b] = pb.edges[e];
            for (std::uint32_t l = 0; l < n; ++l) {
                pb.hard.push_back({-pb.w(s, e), -pb.x(s, l, a), pb.x(s + 1, l, b)});
                pb.hard.push_back({-pb.w(s, e), -pb.x(s, l, b), pb.x(s + 1, l, a)});
            }
        }
        for (std::uint32_t p = 0; p < m; ++p) {
            for (std::uint32_t l = 0; l < n; ++l) {
                std::vector<int> clause{-pb.x(s, l, p), pb.x(s + 1, l, p)};
                for (std::size_t e = 0; e < pb.edges.size(); ++e) {
                    if (pb.edges[e].first == p || pb.edges[e].second == p) {
                        clause.push_back(pb.w(s, e));
                    }
                }
                pb.hard.push_back(std::move(clause));
            }
        }
    }

    int next = pb.w(swap_depth, 0);
    std::map<std::size_t, std::vector<std::uint64_t>> sets_by_size;
    std::vector<std::vector<int>> placements(interactions.size());
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        const std::size_t k = interactions[i].size();
        if (k < 2 || k > max_order || k > m) {
            continue;
        }
        if (!sets_by_size.count(k)) {
            sets_by_size[k] = connected_sets(t, static_cast<std::uint32_t>(k));
        }
        for (std::uint32_t s = 0; s < segments; ++s) {
            for (std::uint64_t mask : sets_by_size[k]) {
                const int z = next++;
                placements[i].push_back(z);
                for (std::uint32_t l : interactions[i]) {
                    std::vector<int> clause{-z};
                    for (std::uint64_t f = mask; f; f &= f - 1) {
                        clause.push_back(pb.x(s, l, static_cast<std::uint32_t>(std::countr_zero(f))));
                    }
                    pb.hard.push_back(std::move(clause));
                }
            }
        }
    }
    pb.soft_var.assign(interactions.size(), 0);
    for (std::size_t i = 0; i < interactions.size(); ++i) {
        if (placements[i].empty()) {
            continue;
        }
        const int y = next++;
        pb.soft_var[i] = y;
        std::vector<int> clause{-y};
        clause.insert(clause.end(), placements[i].begin(), placements[i].end());
        pb.hard.push_back(std::move(clause));
        pb.soft.push_back({1, {y}});
    }
    pb.num_vars = next - 1;
    return pb;
}

std::string wcnf_to_text(const WcnfProblem &pb, WcnfFormat format) {
    std::ostringstream out;
    out << "c layout search: " << pb.logical << " logical, " << pb.physical << " physical, " << pb.swap_depth
        << " swap layers, " << pb.soft.size() << " interactions\n";
    std::uint64_t top = 1;
    for (const auto &[weight, clause] : pb.soft) {
        top += weight;
    }
    if (format == WcnfFormat::Classic) {
        out << "p wcnf " << pb.num_vars << ' ' << pb.hard.size() + pb.soft.size() << ' ' << top << '\n';
    }
    for (const auto &clause : pb.hard) {
        if (format == WcnfFormat::Classic) {
            out << top;
        } else {
            out << 'h';
        }
        for (int lit : clause) {
            out << ' ' << lit;
        }
        out << " 0\n";
    }
    for (const auto &[weight, clause] : pb.soft) {
        out << weight;
        for (int lit : clause) {
            out << ' ' << lit;
        }
        out << " 0\n";
    }
    return out.str();
}

namespace {

std::vector<bool> parse_model(const std::string &text, int num_vars) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> tokens;
    bool saw_values = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream fields(line);
        std::string tag;
        fields >> tag;
        if (tag == "s") {
            std::string status;
            fields >> status;
            if (status == "UNSATISFIABLE") {
                throw ExternalSolverError("MAX-SAT solver reports the hard clauses unsatisfiable");
            }
            if (status != "OPTIMUM" && status != "SATISFIABLE") {
                throw ExternalSolverError("MAX-SAT solver status '" + status + "' carries no model");
            }
        } else if (tag == "v") {
            saw_values = true;
            for (std::string tok; fields >> tok;) {
                tokens.push_back(tok);
            }
        }
    }
    if (!saw_values) {
        throw ExternalSolverError("parse error: solver output has no 'v' line");
    }
    std::vector<bool> value(static_cast<std::size_t>(num_vars) + 1, false);
    if (tokens.size() == 1 && tokens[0].size() > 1 &&
        tokens[0].find_first_not_of("01") == std::string::npos) {
        if (tokens[0].size() != static_cast<std::size_t>(num_vars)) {
            throw ExternalSolverError("parse error: model has " + std::to_string(tokens[0].size()) + " values for " +
                                      std::to_string(num_vars) + " variables");
        }
        for (int v = 1; v <= num_vars; ++v) {
            value[static_cast<std::size_t>(v)] = tokens[0][static_cast<std::size_t>(v - 1)] == '1';
        }
        return value;
    }
    std::vector<bool> seen(value.size(), false);
    for (const std::string &tok : tokens) {
        long lit = 0;
        std::size_t used = 0;
        try {
            lit = std::stol(tok, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used != tok.size()) {
            throw ExternalSolverError("parse error: bad literal '" + tok + "'");
        }
        if (lit == 0) {
            break;
        }
        const long var = std::labs(lit);
        if (var > num_vars) {
            throw ExternalSolverError("parse error: literal " + tok + " exceeds " + std::to_string(num_vars) +
                                      " variables");
        }
        if (seen[static_cast<std::size_t>(var)]) {
            throw ExternalSolverError("parse error: variable " + std::to_string(var) + " assigned twice");
        }
        seen[static_cast<std::size_t>(var)] = true;
        value[static_cast<std::size_t>(var)] = lit > 0;
    }
    for (int v = 1; v <= num_vars; ++v) {
        if (!seen[static_cast<std::size_t>(v)]) {
            throw ExternalSolverError("parse error: truncated model, variable " + std::to_string(v) + " missing");
        }
    }
    return value;
}

bool satisfied(const std::vector<int> &clause, const std::vector<bool> &value) {
    return std::any_of(clause.begin(), clause.end(), [&](int lit) {
        return value[static_cast<std::size_t>(std::abs(lit))] == (lit > 0);
    });
}

}  // namespace

MaxSatLayout import_maxsat_layout(const std::string &solver_output, const WcnfProblem &pb) {
    const std::vector<bool> value = parse_model(solver_output, pb.num_vars);
    for (std::size_t i = 0; i < pb.hard.size(); ++i) {
        if (!satisfied(pb.hard[i], value)) {
            throw ExternalSolverError("model violates hard clause " + std::to_string(i + 1));
        }
    }
    MaxSatLayout result;
    for (const auto &[weight, clause] : pb.soft) {
        if (!satisfied(clause, value)) {
            result.cost += weight;
        }
    }
    for (std::uint32_t s = 0; s <= pb.swap_depth; ++s) {
        std::vector<std::uint32_t> layout(pb.logical);
        for (std::uint32_t l = 0; l < pb.logical; ++l) {
            for (std::uint32_t p = 0; p < pb.physical; ++p) {
                if (value[static_cast<std::size_t>(pb.x(s, l, p))]) {
                    layout[l] = p;
                }
            }
        }
        result.plan.segments.push_back(std::move(layout));
    }
    for (std::uint32_t s = 0; s < pb.swap_depth; ++s) {
        std::vector<Topology::Coupling> layer;
        for (std::size_t e = 0; e < pb.edges.size(); ++e) {
            if (value[static_cast<std::size_t>(pb.w(s, e))]) {
                layer.push_back(pb.edges[e]);
            }
        }
        result.plan.swap_layers.push_back(std::move(layer));
    }
    const Topology t(pb.physical, pb.edges);
    for (const Monomial &set : pb.interactions) {
        bool local = set.size() < 2;
        for (const auto &layout : result.plan.segments) {
            std::uint64_t mask = 0;
            for (std::uint32_t q : set) {
                mask |= std::uint64_t{1} << layout[q];
            }
            local = local || t.induces_connected(mask);
        }
        result.satisfied.push_back(local);
    }
    return result;
}

std::string run_maxsat_solver(const std::string &command, const std::string &wcnf_text) {
    std::string path = (std::filesystem::temp_directory_path() / "tangle-XXXXXX.wcnf").string();
    std::vector<char> buffer(path.begin(), path.end());
    buffer.push_back('\0');
    const int fd = mkstemps(buffer.data(), 5);
    if (fd < 0) {
        throw ExternalSolverError("cannot create a temporary WCNF file");
    }
    close(fd);
    path.assign(buffer.data());
    {
        std::ofstream file(path);
        file << wcnf_text;
        if (!file) {
            std::filesystem::remove(path);
            throw ExternalSolverError("cannot write " + path);
        }
    }
    std::string output;
    FILE *pipe = popen((command + " '" + path + "'").c_str(), "r");
    if (!pipe) {
        std::filesystem::remove(path);
        throw ExternalSolverError("cannot start MAX-SAT solver '" + command + "'");
    }
    std::array<char, 4096> chunk{};
    while (std::size_t got = std::fread(chunk.data(), 1, chunk.size(), pipe)) {
        output.append(chunk.data(), got);
    }
    pclose(pipe);
    std::filesystem::remove(path);
    return output;
}

}  // namespace tangle
