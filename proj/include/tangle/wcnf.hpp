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
#include <string>
#include <utility>
#include <vector>

#include "tangle/polynomial.hpp"
#include "tangle/topology.hpp"
#include "tangle/transpile.hpp"

namespace tangle {

enum class WcnfFormat {
    /// `p wcnf <vars> <clauses> <top>` header, hard clauses weighted `top`.
    Classic,
    /// Header-free, hard clauses prefixed with `h`.
    Modern,
};

/// Weighted CNF for choosing a layout plus `swap_depth` SWAP matchings that
/// make as many interactions as possible local in some segment.
///
/// Variables: x(s,l,p) logical l on physical p in segment s; w(s,e) edge e
/// swapped after segment s; z(i,s,k) interaction i placed on the k-th
/// connected set of its size in segment s; y(i) interaction i is local.
struct WcnfProblem {
    std::uint32_t logical = 0;
    std::uint32_t physical = 0;
    std::uint32_t swap_depth = 0;
    std::uint32_t max_order = 6;
    std::vector<Topology::Coupling> edges;
    std::vector<Monomial> interactions;
    /// y variable per interaction; 0 when it is too large or too small to
    /// carry a soft clause.
    std::vector<int> soft_var;
    int num_vars = 0;
    std::vector<std::vector<int>> hard;
    std::vector<std::pair<std::uint64_t, std::vector<int>>> soft;

    int x(std::uint32_t segment, std::uint32_t l, std::uint32_t p) const {
        return 1 + static_cast<int>((segment * logical + l) * physical + p);
    }
    int w(std::uint32_t layer, std::size_t edge) const {
        return 1 + static_cast<int>((swap_depth + 1) * logical * physical + layer * edges.size() + edge);
    }
};

WcnfProblem build_wcnf(const std::vector<Monomial> &interactions, std::uint32_t logical, const Topology &t,
                       std::uint32_t swap_depth, std::uint32_t max_order = 6);

std::string wcnf_to_text(const WcnfProblem &problem, WcnfFormat format = WcnfFormat::Classic);

/// Solver result mapped back onto the problem.
struct MaxSatLayout {
    LayoutPlan plan;
    /// Per interaction: local in at least one segment of the plan.
    std::vector<bool> satisfied;
    /// Total weight of falsified soft clauses.
    std::uint64_t cost = 0;
};

/// Parses `s` and `v` lines of standard MAX-SAT solver output. Accepts both
/// literal lists and the 0/1 string form. Throws ExternalSolverError on
/// UNSAT, malformed or truncated models, and hard-clause violations.
MaxSatLayout import_maxsat_layout(const std::string &solver_output, const WcnfProblem &problem);

/// Runs `command <file>` on the WCNF text and returns the solver's stdout.
std::string run_maxsat_solver(const std::string &command, const std::string &wcnf_text);

}  // namespace tangle
