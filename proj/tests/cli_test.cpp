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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"

#include "fixtures.hpp"
#include "tangle/cli.hpp"
#include "tangle/ising.hpp"
#include "tangle/noise.hpp"
#include "json.hpp"

using namespace tangle;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "tangle");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    Result r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

class cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tangle_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::create_directories(dir_);
        std::ofstream(path("tangle2.json")) << graph_to_json(fixtures::tangle2());
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }

    fs::path dir_;
};

}  // namespace

TEST_F(cli, generate_then_oracle) {
    auto r = run({"generate", "--seed", "4", "--nodes", "3", "--max-weight", "2", "--out", path("g.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto again = run({"generate", "--seed", "4", "--nodes", "3", "--max-weight", "2"});
    ASSERT_EQ(again.out, slurp(path("g.json")));
    r = run({"oracle", "--graph", path("g.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(r.out.substr(0, 11), "min_cost 0\n");
}

TEST_F(cli, oracle_tangle2) {
    const auto r = run({"oracle", "--graph", path("tangle2.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_NE(r.out.find("min_cost 0\nwalks 4\n"), std::string::npos);
}

TEST_F(cli, solve_reaches_target) {
    const auto r = run({"solve", "--graph", path("tangle2.json"), "--encoding", "hubo", "--target", "0", "--out",
                        path("run.json"), "--histogram", path("hist.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_NE(r.out.find("qubits 4\n"), std::string::npos);
    ASSERT_NE(r.out.find("best_energy 0\n"), std::string::npos);
    ASSERT_NE(r.out.find("termination target_reached\n"), std::string::npos);
    ASSERT_NE(r.out.find("cost 0"), std::string::npos);
    const auto record = nlohmann::json::parse(slurp(path("run.json")));
    ASSERT_EQ(record["best_energy"], 0.0);
    ASSERT_EQ(slurp(path("hist.csv")).substr(0, 24), "iteration,energy,frequen");
}

TEST_F(cli, encode_then_solve_matches_direct_solve) {
    for (const char *kind : {"qubo", "hubo"}) {
        ASSERT_EQ(run({"encode", "--graph", path("tangle2.json"), "--encoding", kind, "--out", path("p.json")}).code, 0);
        const auto direct = run({"solve", "--graph", path("tangle2.json"), "--encoding", kind, "--seed", "9",
                                 "--histogram", path("a.csv")});
        const auto stored = run({"solve", "--poly", path("p.json"), "--nodes", "2", "--encoding", kind, "--seed",
                                 "9", "--histogram", path("b.csv")});
        ASSERT_EQ(direct.code, 0) << direct.err;
        ASSERT_EQ(stored.code, 0) << stored.err;
        ASSERT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
        ASSERT_EQ(direct.out.substr(0, direct.out.find("walk")), stored.out);
    }
    ASSERT_EQ(run({"solve", "--poly", path("p.json"), "--encoding", "qubo"}).code, 2);
}

TEST_F(cli, encode_ising) {
    const auto r = run({"encode", "--graph", path("tangle2.json"), "--encoding", "hubo", "--steps", "2", "--ising"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto h = ising_from_json(r.out);
    ASSERT_EQ(h.num_qubits(), 4u);
}

TEST_F(cli, anneal) {
    const auto r = run({"anneal", "--graph", path("tangle2.json"), "--encoding", "qubo", "--sweeps", "3000"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_NE(r.out.find("energy 0"), std::string::npos) << r.out;
}

TEST_F(cli, pipeline) {
    const auto r = run({"pipeline", "--instance-seed", "3", "--nodes", "2", "--max-weight", "2", "--encoding", "hubo",
                        "--seeds", "1,2,3", "--stop-on-optimum", "--out", path("pipe.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(slurp(path("pipe.json")));
    ASSERT_EQ(j["runs"].size(), 3u);
    ASSERT_EQ(j["oracle_min_cost"], 0);
    const auto again = run({"pipeline", "--instance-seed", "3", "--nodes", "2", "--max-weight", "2", "--encoding",
                            "hubo", "--seeds", "1,2,3", "--stop-on-optimum"});
    ASSERT_EQ(again.out, r.out);
    ASSERT_EQ(run({"pipeline", "--steps", "0"}).code, 3);
}

TEST_F(cli, noise_budget) {
    const auto r = run({"noise-budget", "--e", "1.24e-3", "--gates", "2865", "--good", "4000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_DOUBLE_EQ(j["p_good"].get<double>(), p_good(1.24e-3, 2865));
    ASSERT_EQ(j["shots"].get<std::uint64_t>(), required_shots(1.24e-3, 2865, 4000));
    ASSERT_EQ(run({"noise-budget", "--e", "1.5", "--gates", "1", "--good", "1"}).code, 3);
    ASSERT_EQ(run({"noise-budget", "--e", "0.1", "--gates", "1"}).code, 2);
}

TEST_F(cli, compile_methods) {
    const auto parity = run({"compile", "--graph", path("tangle2.json"), "--encoding", "hubo", "--steps", "2",
                             "--topology", "heavy-hex:1", "--out", path("c.txt")});
    ASSERT_EQ(parity.code, 0) << parity.err;
    const auto jp = nlohmann::json::parse(parity.out);
    const auto naive = run({"compile", "--graph", path("tangle2.json"), "--encoding", "hubo", "--steps", "2",
                            "--topology", "heavy-hex:1", "--method", "naive"});
    ASSERT_EQ(naive.code, 0) << naive.err;
    const auto jn = nlohmann::json::parse(naive.out);
    ASSERT_LE(jp["two_qubit_count"].get<int>(), jn["two_qubit_count"].get<int>());
    ASSERT_EQ(slurp(path("c.txt")).substr(0, 9), "qubits 14");
    ASSERT_EQ(run({"compile", "--graph", path("tangle2.json"), "--topology", "ring:4"}).code, 2);
    ASSERT_EQ(run({"compile", "--graph", path("tangle2.json"), "--steps", "3", "--topology", "linear:3"}).code, 4);
}

TEST_F(cli, compile_with_external_solver) {
    const std::vector<std::string> base{"compile", "--graph", path("tangle2.json"), "--encoding", "hubo", "--steps", "2",
                                        "--topology", "linear:4"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return run(args);
    };
    auto r = with({"--wcnf-out", path("l.wcnf"), "--swap-depth", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_NE(slurp(path("l.wcnf")).find("p wcnf"), std::string::npos);
    r = with({"--wcnf-out", path("m.wcnf"), "--wcnf-format", "modern"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(slurp(path("m.wcnf")).find("p wcnf"), std::string::npos);

    r = with({"--maxsat-solver", TINY_MAXSAT, "--swap-depth", "1"});
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_EQ(nlohmann::json::parse(r.out)["method"].get<std::string>().substr(0, 6), "parity");

    std::ofstream(path("bad.out")) << "s UNSATISFIABLE\n";
    ASSERT_EQ(with({"--maxsat-output", path("bad.out")}).code, 5);
}

TEST_F(cli, sweep) {
    const std::vector<std::string> args{"sweep",  "--graph", path("tangle2.json"), "--encoding", "hubo", "--p",
                                        "1,2",    "--beta",  "0:1:3",              "--gamma",    "0:0.5:2"};
    auto serial = args;
    serial.insert(serial.end(), {"--workers", "1"});
    auto parallel = args;
    parallel.insert(parallel.end(), {"--workers", "3"});
    const auto a = run(serial);
    const auto b = run(parallel);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(a.out, b.out);
    ASSERT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 1 + 2 * 3 * 2);
    auto bad = args;
    bad[6] = "1,x";
    ASSERT_EQ(run(bad).code, 2);
}

TEST_F(cli, workers_environment) {
    const std::vector<std::string> args{"sweep", "--graph", path("tangle2.json"), "--beta", "0:1:2", "--gamma", "0:1:2"};
    ::setenv("TANGLE_WORKERS", "2", 1);
    const auto ok = run(args);
    ::setenv("TANGLE_WORKERS", "zero", 1);
    const auto bad = run(args);
    ::unsetenv("TANGLE_WORKERS");
    ASSERT_EQ(ok.code, 0) << ok.err;
    ASSERT_EQ(bad.code, 2);
    ASSERT_NE(bad.err.find("TANGLE_WORKERS"), std::string::npos);
}

TEST_F(cli, config_file_and_precedence) {
    std::ofstream(path("c.toml")) << "[noise-budget]\ne = 0.5\ngates = 1\ngood = 10\n";
    const auto from_file = run({"--config", path("c.toml"), "noise-budget"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    ASSERT_EQ(nlohmann::json::parse(from_file.out)["shots"], 20);
    const auto overridden = run({"--config", path("c.toml"), "noise-budget", "--gates", "2"});
    ASSERT_EQ(nlohmann::json::parse(overridden.out)["shots"], 40);
}

TEST_F(cli, exit_codes) {
    ASSERT_EQ(run({}).code, 2);
    ASSERT_EQ(run({"--help"}).code, 0);
    ASSERT_EQ(run({"oracle"}).code, 2);
    ASSERT_EQ(run({"oracle", "--graph", path("tangle2.json"), "--bogus"}).code, 2);
    ASSERT_EQ(run({"frobnicate"}).code, 2);
    ASSERT_EQ(run({"oracle", "--graph", path("missing.json")}).code, 1);
    std::ofstream(path("broken.json")) << "{\"n\": 2, \"weights\": [1,";
    const auto broken = run({"oracle", "--graph", path("broken.json")});
    ASSERT_EQ(broken.code, 1);
    ASSERT_FALSE(broken.err.empty());
    ASSERT_EQ(run({"solve", "--graph", path("tangle2.json"), "--encoding", "binary"}).code, 2);
    ASSERT_EQ(run({"solve", "--graph", path("tangle2.json"), "--steps", "0"}).code, 3);
    ASSERT_EQ(run({"oracle", "--graph", path("tangle2.json"), "--steps", "9", "--cap", "10"}).code, 4);
}
