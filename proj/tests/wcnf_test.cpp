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

#include <algorithm>
#include <set>
#include <sstream>

#include "gtest/gtest.h"

#include "oracles.hpp"
#include "tangle/error.hpp"
#include "tangle/wcnf.hpp"

using namespace tangle;

namespace {

bool clause_holds(const std::vector<int> &clause, std::uint64_t assignment) {
    for (int lit : clause) {
        const bool v = (assignment >> (std::abs(lit) - 1)) & 1;
        if ((lit > 0) == v) {
            return true;
        }
    }
    return false;
}

/// `v` line setting exactly the given variables true.
std::string model_line(const WcnfProblem &pb, const std::set<int> &true_vars) {
    std::ostringstream out;
    out << "s OPTIMUM FOUND\nv";
    for (int v = 1; v <= pb.num_vars; ++v) {
        out << ' ' << (true_vars.count(v) ? v : -v);
    }
    out << " 0\n";
    return out.str();
}

std::set<int> identity_x(const WcnfProblem &pb) {
    std::set<int> vars;
    for (std::uint32_t s = 0; s <= pb.swap_depth; ++s) {
        for (std::uint32_t l = 0; l < pb.logical; ++l) {
            vars.insert(pb.x(s, l, l));
        }
    }
    return vars;
}

}  // namespace

TEST(wcnf, no_interactions_gives_hard_clauses_only) {
    const auto pb = build_wcnf({}, 2, Topology::linear(3), 1);
    ASSERT_TRUE(pb.soft.empty());
    ASSERT_FALSE(pb.hard.empty());
    const auto text = wcnf_to_text(pb);
    ASSERT_NE(text.find("p wcnf " + std::to_string(pb.num_vars) + " " + std::to_string(pb.hard.size()) + " 1\n"),
              std::string::npos);
}

TEST(wcnf, two_qubit_line_enumeration) {
    const auto pb = build_wcnf({{0, 1}}, 2, Topology::linear(2), 0);
    ASSERT_EQ(pb.soft.size(), 1u);
    ASSERT_LE(pb.num_vars, 20);
    std::size_t feasible = 0;
    std::size_t optimal = 0;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << pb.num_vars); ++a) {
        bool ok = true;
        for (const auto &c : pb.hard) {
            ok = ok && clause_holds(c, a);
        }
        if (!ok) {
            continue;
        }
        ++feasible;
        // Every feasible assignment is one of the two bijections.
        const bool id = (a >> (pb.x(0, 0, 0) - 1)) & 1;
        const bool sw = (a >> (pb.x(0, 0, 1) - 1)) & 1;
        ASSERT_NE(id, sw);
        ASSERT_EQ(((a >> (pb.x(0, 1, 1) - 1)) & 1) != 0, id);
        optimal += clause_holds(pb.soft[0].second, a);
    }
    ASSERT_GT(feasible, 0u);
    ASSERT_GT(optimal, 0u);
}

TEST(wcnf, counts_grow_polynomially) {
    const std::vector<Monomial> sets{{0, 1}, {1, 2, 3}, {0, 3}, {2, 4}, {0, 1, 2, 3, 4}};
    const auto t = Topology::grid(2, 3);
    std::vector<int> vars;
    std::vector<std::size_t> clauses;
    for (std::uint32_t d = 0; d <= 4; ++d) {
        const auto pb = build_wcnf(sets, 5, t, d);
        vars.push_back(pb.num_vars);
        clauses.push_back(pb.hard.size() + pb.soft.size());
        ASSERT_EQ(pb.soft.size(), sets.size());
    }
    for (std::size_t d = 2; d < vars.size(); ++d) {
        ASSERT_EQ(vars[d] - vars[d - 1], vars[1] - vars[0]);
        ASSERT_EQ(clauses[d] - clauses[d - 1], clauses[2] - clauses[1]);
    }
    const auto capped = build_wcnf(sets, 5, t, 0, 3);
    ASSERT_EQ(capped.soft.size(), 4u);
    ASSERT_EQ(capped.soft_var[4], 0);
}

TEST(wcnf, formats) {
    const auto pb = build_wcnf({{0, 1}}, 2, Topology::linear(2), 0);
    const auto classic = wcnf_to_text(pb, WcnfFormat::Classic);
    const auto modern = wcnf_to_text(pb, WcnfFormat::Modern);
    ASSERT_EQ(modern.find("p wcnf"), std::string::npos);
    ASSERT_NE(modern.find("\nh "), std::string::npos);
    ASSERT_NE(classic.find("\n2 "), std::string::npos);
    ASSERT_NE(classic.find("\n1 " + std::to_string(pb.soft_var[0]) + " 0\n"), std::string::npos);
}

TEST(wcnf, import_identity) {
    const auto pb = build_wcnf({{0, 1}}, 2, Topology::linear(2), 0);
    const auto layout = import_maxsat_layout(model_line(pb, identity_x(pb)), pb);
    ASSERT_EQ(layout.plan.segments, (std::vector<std::vector<std::uint32_t>>{{0, 1}}));
    ASSERT_TRUE(layout.plan.swap_layers.empty());
    ASSERT_EQ(layout.satisfied, std::vector<bool>{true});
    ASSERT_EQ(layout.cost, 1u);

    auto with_y = identity_x(pb);
    with_y.insert(pb.soft_var[0]);
    ASSERT_THROW(import_maxsat_layout(model_line(pb, with_y), pb), ExternalSolverError);
}

TEST(wcnf, import_binary_string) {
    const auto pb = build_wcnf({}, 2, Topology::linear(2), 0);
    std::string bits(pb.num_vars, '0');
    bits[pb.x(0, 0, 1) - 1] = '1';
    bits[pb.x(0, 1, 0) - 1] = '1';
    const auto layout = import_maxsat_layout("s OPTIMUM FOUND\nv " + bits + "\n", pb);
    ASSERT_EQ(layout.plan.segments, (std::vector<std::vector<std::uint32_t>>{{1, 0}}));
}

TEST(wcnf, import_errors) {
    const auto pb = build_wcnf({{0, 1}}, 2, Topology::linear(3), 1);
    const auto good = model_line(pb, identity_x(pb));
    ASSERT_NO_THROW(import_maxsat_layout(good, pb));
    ASSERT_THROW(import_maxsat_layout(good.substr(0, good.size() / 2), pb), ExternalSolverError);
    ASSERT_THROW(import_maxsat_layout("s UNSATISFIABLE\n", pb), ExternalSolverError);
    ASSERT_THROW(import_maxsat_layout("s OPTIMUM FOUND\n", pb), ExternalSolverError);
    ASSERT_THROW(import_maxsat_layout("s OPTIMUM FOUND\nv 1 x 0\n", pb), ExternalSolverError);

    auto clash = identity_x(pb);
    clash.insert(pb.x(0, 1, 0));
    ASSERT_THROW(import_maxsat_layout(model_line(pb, clash), pb), ExternalSolverError);

    // Segment 1 differs from segment 0 without any SWAP selected.
    auto moved = identity_x(pb);
    moved.erase(pb.x(1, 0, 0));
    moved.erase(pb.x(1, 1, 1));
    moved.insert(pb.x(1, 0, 1));
    moved.insert(pb.x(1, 1, 0));
    ASSERT_THROW(import_maxsat_layout(model_line(pb, moved), pb), ExternalSolverError);
    moved.insert(pb.w(0, 0));
    const auto swapped = import_maxsat_layout(model_line(pb, moved), pb);
    ASSERT_EQ(swapped.plan.swap_layers, (std::vector<std::vector<Topology::Coupling>>{{{0, 1}}}));
}

TEST(wcnf, solver_matches_layout_oracle) {
    const std::vector<Monomial> sets{{0, 2}, {1, 3}, {0, 1, 3}, {2, 3}};
    const auto t = Topology::linear(4);
    for (std::uint32_t d : {0, 1}) {
        const auto want = oracle::best_layout_count(sets, 4, t, d);
        const auto pb = build_wcnf(sets, 4, t, d);
        for (auto format : {WcnfFormat::Classic, WcnfFormat::Modern}) {
            const auto out = run_maxsat_solver(TINY_MAXSAT, wcnf_to_text(pb, format));
            const auto layout = import_maxsat_layout(out, pb);
            const auto got = static_cast<std::size_t>(std::count(layout.satisfied.begin(), layout.satisfied.end(), true));
            ASSERT_EQ(got, want) << "d=" << d;
            ASSERT_EQ(layout.cost, sets.size() - want);
        }
    }
}

TEST(wcnf, hard_clauses_satisfiable_at_diameter) {
    const std::vector<Monomial> sets{{0, 1, 2}, {1, 2}};
    for (const auto &t : {Topology::linear(3), Topology::grid(2, 2)}) {
        const auto pb = build_wcnf(sets, 3, t, t.diameter());
        ASSERT_NO_THROW(import_maxsat_layout(run_maxsat_solver(TINY_MAXSAT, wcnf_to_text(pb)), pb));
    }
}

TEST(wcnf, imported_plan_drives_parity_compiler) {
    Circuit c(4);
    c.mrz(0.3, {0, 2});
    c.mrz(0.4, {1, 3});
    c.mrz(0.5, {0, 1, 3});
    c.rzz(0.6, 2, 3);
    const auto t = Topology::linear(4);
    const auto pb = build_wcnf(interactions(c), 4, t, 1);
    const auto layout = import_maxsat_layout(run_maxsat_solver(TINY_MAXSAT, wcnf_to_text(pb)), pb);
    ParityOptions options;
    options.layout = layout.plan;
    options.naive_fallback = false;
    const auto cc = compile_parity(c, t, options);
    ASSERT_EQ(cc.placed.initial_layout, layout.plan.segments.front());
    ASSERT_TRUE(verify_equivalence(cc.placed, place_identity(c)));
}

TEST(wcnf, solver_failures) {
    const auto pb = build_wcnf({{0, 1}}, 2, Topology::linear(2), 0);
    ASSERT_THROW(import_maxsat_layout(run_maxsat_solver("false", wcnf_to_text(pb)), pb), ExternalSolverError);
    ASSERT_THROW(build_wcnf({{0, 5}}, 2, Topology::linear(2), 0), DomainError);
    ASSERT_THROW(build_wcnf({}, 3, Topology::linear(2), 0), SizeError);
}
