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

#include "tangle/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <thread>

#include "tangle/annealing.hpp"
#include "tangle/encoding.hpp"
#include "tangle/error.hpp"
#include "tangle/graph.hpp"
#include "tangle/ising.hpp"
#include "tangle/noise.hpp"
#include "tangle/qaoa.hpp"
#include "tangle/topology.hpp"
#include "tangle/transpile.hpp"
#include "tangle/wcnf.hpp"

namespace tangle {

namespace {

using nlohmann::json;

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw Error("cannot write " + path);
    }
}

/// Writes to a file, or to stdout when the path is empty or "-".
void emit(std::ostream &out, const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        out << text;
    } else {
        write_file(path, text);
    }
}

std::size_t worker_count() {
    if (const char *env = std::getenv("TANGLE_WORKERS")) {
        try {
            const long n = std::stol(env);
            if (n >= 1) {
                return static_cast<std::size_t>(n);
            }
        } catch (const std::exception &) {
        }
        throw ConfigError(std::string("TANGLE_WORKERS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs jobs 0..count-1 on a bounded pool; results keep job order.
template <typename Result>
std::vector<Result> parallel_map(std::size_t count, std::size_t workers, const std::function<Result(std::size_t)> &job) {
    std::vector<Result> results(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                results[i] = job(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < std::min(workers, count); ++w) {
        pool.emplace_back(work);
    }
    work();
    for (auto &th : pool) {
        th.join();
    }
    for (const auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return results;
}

std::string walk_text(const Walk &w) {
    std::string s = "[";
    for (std::size_t i = 0; i < w.steps.size(); ++i) {
        s += (i ? "," : "") + std::to_string(w.steps[i]);
    }
    return s + "]";
}

std::string fmt(double x) {
    std::ostringstream s;
    s << std::setprecision(12) << x;
    return s.str();
}

/// Where the cost function comes from: a graph to encode or a stored
/// polynomial.
struct ProblemArgs {
    std::string graph;
    std::string poly;
    std::string encoding = "hubo";
    long steps = -1;
    std::uint32_t nodes = 0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;

    void add(CLI::App *cmd, bool allow_poly) {
        cmd->add_option("--graph", graph, "Tangle JSON file");
        if (allow_poly) {
            cmd->add_option("--poly", poly, "Binary polynomial JSON file (instead of --graph)");
            cmd->add_option("--nodes", nodes, "Node count for the QUBO prior when using --poly");
        }
        cmd->add_option("--encoding,--kind", encoding, "qubo or hubo");
        cmd->add_option("--steps", steps, "Walk length T (default: sum of weights)");
        cmd->add_option("--lambda1", lambda1, "One-hot (QUBO) or edge (HUBO) penalty; 0 keeps the default");
        cmd->add_option("--lambda2", lambda2, "QUBO edge penalty; 0 keeps the default");
    }
};

struct Problem {
    std::optional<OrientedGraph> graph;
    EncodingKind kind = EncodingKind::Hubo;
    std::uint32_t steps = 0;
    std::uint32_t nodes = 0;
    BinaryPolynomial poly;
};

BinaryPolynomial encode(const OrientedGraph &g, EncodingKind kind, std::uint32_t steps, double l1, double l2) {
    if (kind == EncodingKind::Qubo) {
        return encode_qubo(g, steps, l1 > 0 ? l1 : kDefaultQuboOneHot, l2 > 0 ? l2 : kDefaultQuboEdge);
    }
    return encode_hubo(g, steps, l1 > 0 ? l1 : kDefaultHuboEdge);
}

std::uint32_t resolve_steps(long steps, const OrientedGraph &g) {
    if (steps < 0) {
        return default_walk_length(g);
    }
    return static_cast<std::uint32_t>(steps);
}

Problem load_problem(const ProblemArgs &a) {
    Problem pb;
    pb.kind = encoding_kind_from_string(a.encoding);
    if (!a.graph.empty()) {
        pb.graph = graph_from_json(read_file(a.graph));
        pb.nodes = pb.graph->node_count();
    }
    if (!a.poly.empty()) {
        pb.poly = polynomial_from_json(read_file(a.poly));
        if (!pb.graph) {
            pb.nodes = a.nodes;
            if (pb.kind == EncodingKind::Qubo && pb.nodes == 0) {
                throw ConfigError("--poly with a QUBO needs --nodes or --graph for the prior");
            }
        }
        if (a.steps >= 0) {
            pb.steps = static_cast<std::uint32_t>(a.steps);
        }
        return pb;
    }
    if (!pb.graph) {
        throw ConfigError("one of --graph or --poly is required");
    }
    pb.steps = resolve_steps(a.steps, *pb.graph);
    pb.poly = encode(*pb.graph, pb.kind, pb.steps, a.lambda1, a.lambda2);
    return pb;
}

std::vector<std::size_t> parse_list(const std::string &text, const std::string &what) {
    std::vector<std::size_t> values;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, ',');) {
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            values.push_back(v);
        } catch (const std::exception &) {
            throw ConfigError("bad " + what + " list '" + text + "'");
        }
    }
    if (values.empty()) {
        throw ConfigError("empty " + what + " list");
    }
    return values;
}

GridAxis parse_axis(const std::string &text, const std::string &what) {
    double lo = 0, hi = 0;
    std::size_t count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(text);
    if (!(in >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' || count == 0 || !in.eof()) {
        throw ConfigError("--" + what + " expects lo:hi:count, got '" + text + "'");
    }
    return GridAxis{lo, hi, count};
}

struct ScheduleArgs {
    std::size_t layers = 1;
    double delta_beta = 0.75;
    double delta_gamma = 0.30;
    std::uint64_t shots = 400;
    double alpha = 1.0;
    std::size_t iterations = 5;
    std::uint64_t seed = 1;
    std::optional<double> target;
    bool shift = false;
    bool no_prior_samples = false;

    void add(CLI::App *cmd) {
        cmd->add_option("--p", layers, "QAOA layers")->check(CLI::PositiveNumber);
        cmd->add_option("--delta-beta", delta_beta, "Mixer ramp amplitude");
        cmd->add_option("--delta-gamma", delta_gamma, "Phase ramp amplitude");
        cmd->add_option("--shots", shots, "Samples per iteration");
        cmd->add_option("--alpha", alpha, "CVaR fraction kept for the update")->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--iters", iterations, "Iterations")->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "Sampling seed");
        cmd->add_option("--target", target, "Stop once an energy <= target is sampled");
        cmd->add_flag("--shift-energies", shift, "Subtract the batch minimum before weighting");
        cmd->add_flag("--no-prior-samples", no_prior_samples, "Do not sample and record the initial prior");
    }

    IterativeConfig config() const {
        if (alpha <= 0.0) {
            throw ConfigError("--alpha must be in (0, 1]");
        }
        IterativeConfig c;
        c.layers = layers;
        c.delta_beta = delta_beta;
        c.delta_gamma = delta_gamma;
        c.shots = shots;
        c.alpha = alpha;
        c.iterations = iterations;
        c.seed = seed;
        c.target_energy = target;
        c.shift_energies = shift;
        c.record_prior = !no_prior_samples;
        return c;
    }
};

json walk_json(const Walk &w) {
    return json(w.steps);
}

json decode_json(const DecodeSummary &d, const std::optional<OrientedGraph> &g) {
    json j = {{"feasible", d.feasible}, {"valid_walk", d.valid_walk}, {"note", d.note}};
    if (d.feasible) {
        j["walk"] = walk_json(d.walk);
        if (g) {
            j["walk_cost"] = walk_cost(*g, d.walk);
        }
    }
    return j;
}

int cmd_generate(std::ostream &out, const TangleParams &params, const std::string &path, bool with_walk) {
    const OrientedGraph g = generate_tangle(params);
    emit(out, path, graph_to_json(g));
    if (with_walk) {
        out << "planted walk " << walk_text(planted_walk(params)) << "\n";
    }
    return 0;
}

int cmd_encode(std::ostream &out, const ProblemArgs &args, bool ising, const std::string &path) {
    const Problem pb = load_problem(args);
    emit(out, path, ising ? ising_to_json(to_ising(pb.poly)) : polynomial_to_json(pb.poly));
    return 0;
}

RunRecord solve_problem(const Problem &pb, const IterativeConfig &config) {
    const IsingPolynomial h = to_ising(pb.poly);
    const PriorDistribution prior = initial_prior(pb.kind, pb.nodes, h.num_qubits());
    return iterative_qaoa(h, prior, config);
}

int cmd_solve(std::ostream &out, const ProblemArgs &args, const ScheduleArgs &sched, const std::string &json_path,
              const std::string &csv_path) {
    const Problem pb = load_problem(args);
    const RunRecord record = solve_problem(pb, sched.config());
    if (!json_path.empty()) {
        write_file(json_path, run_record_to_json(record));
    }
    if (!csv_path.empty()) {
        write_file(csv_path, histogram_csv(record));
    }
    out << "qubits " << record.num_qubits << "\n";
    out << "best_energy " << fmt(record.best_energy) << "\n";
    out << "termination " << record.termination << "\n";
    if (record.target_hit_iteration) {
        out << "target_hit_iteration " << *record.target_hit_iteration << "\n";
    }
    if (pb.graph && pb.steps > 0) {
        const auto d = decode(pb.kind, record.best_bits(), *pb.graph, pb.steps);
        if (d.feasible) {
            out << "walk " << walk_text(d.walk) << " cost " << walk_cost(*pb.graph, d.walk)
                << (d.valid_walk ? "" : " (broken edges)") << "\n";
        } else {
            out << "infeasible " << d.note << "\n";
        }
    }
    return 0;
}

int cmd_anneal(std::ostream &out, const ProblemArgs &args, const AnnealConfig &config) {
    const Problem pb = load_problem(args);
    const AnnealResult r = simulated_annealing(pb.poly, config);
    out << "energy " << fmt(r.energy) << "\n";
    std::string bits;
    for (std::uint8_t b : r.bits) {
        bits += b ? '1' : '0';
    }
    out << "bits " << bits << "\n";
    if (pb.graph && pb.steps > 0) {
        const auto d = decode(pb.kind, r.bits, *pb.graph, pb.steps);
        out << (d.feasible ? "walk " + walk_text(d.walk) : "infeasible " + d.note) << "\n";
    }
    return 0;
}

int cmd_sweep(std::ostream &out, const ProblemArgs &args, const std::string &layers, const std::string &beta,
              const std::string &gamma, std::size_t workers, const std::string &path) {
    const Problem pb = load_problem(args);
    const IsingPolynomial h = to_ising(pb.poly);
    const std::vector<double> energies = diagonal(h);
    const std::vector<std::uint64_t> optimal = ground_states(energies);
    SweepConfig config;
    config.layers = parse_list(layers, "layer");
    config.beta = parse_axis(beta, "beta");
    config.gamma = parse_axis(gamma, "gamma");
    config.workers = workers ? workers : worker_count();
    const auto rows = sweep(h, initial_prior(pb.kind, pb.nodes, h.num_qubits()), optimal, config);
    emit(out, path, sweep_to_csv(rows));
    return 0;
}

int cmd_oracle(std::ostream &out, const std::string &graph, long steps, std::uint64_t cap) {
    if (graph.empty()) {
        throw ConfigError("--graph is required");
    }
    const OrientedGraph g = graph_from_json(read_file(graph));
    const std::uint32_t t = resolve_steps(steps, g);
    const OptimalWalks best = enumerate_optimal_walks(g, t, cap);
    if (!best.has_walk()) {
        out << "no walk of length " << t << "\n";
        return 0;
    }
    out << "min_cost " << *best.min_cost << "\n";
    out << "walks " << best.walks.size() << "\n";
    for (const Walk &w : best.walks) {
        out << walk_text(w) << "\n";
    }
    return 0;
}

int cmd_noise(std::ostream &out, double e, std::uint64_t gates, std::uint64_t good) {
    const json j = {{"p_good", p_good(e, gates)}, {"shots", required_shots(e, gates, good)}};
    out << j.dump() << "\n";
    return 0;
}

struct CompileArgs {
    std::string circuit;
    std::string layer = "cost";
    double gamma = 0.3;
    std::string topology = "heavy-hex:3";
    std::string method = "parity";
    std::string depths;
    std::uint32_t max_order = 6;
    std::uint64_t layout_seed = 0;
    std::string wcnf_out;
    std::string wcnf_format = "classic";
    std::uint32_t swap_depth = 1;
    std::string solver;
    std::string solver_output;
    std::string out;
    bool no_self_check = false;
};

int cmd_compile(std::ostream &out, const ProblemArgs &args, const ScheduleArgs &sched, const CompileArgs &ca) {
    Circuit logical;
    if (!ca.circuit.empty()) {
        logical = circuit_from_text(read_file(ca.circuit));
    } else {
        const Problem pb = load_problem(args);
        const IsingPolynomial h = to_ising(pb.poly);
        if (ca.layer == "cost") {
            logical = cost_layer(h, ca.gamma);
        } else if (ca.layer == "qaoa") {
            logical = qaoa_circuit(h, lr_schedule(sched.layers, sched.delta_beta, sched.delta_gamma),
                                   initial_prior(pb.kind, pb.nodes, h.num_qubits()));
        } else {
            throw ConfigError("--layer must be cost or qaoa");
        }
    }
    const Topology t = build_topology(ca.topology);
    if (ca.wcnf_format != "classic" && ca.wcnf_format != "modern") {
        throw ConfigError("--wcnf-format must be classic or modern");
    }
    std::optional<WcnfProblem> wcnf;
    if (!ca.wcnf_out.empty() || !ca.solver.empty() || !ca.solver_output.empty()) {
        wcnf = build_wcnf(interactions(logical), logical.num_qubits(), t, ca.swap_depth, ca.max_order);
    }
    const auto format = ca.wcnf_format == "modern" ? WcnfFormat::Modern : WcnfFormat::Classic;
    if (!ca.wcnf_out.empty()) {
        write_file(ca.wcnf_out, wcnf_to_text(*wcnf, format));
    }

    CompiledCircuit compiled;
    if (ca.method == "naive") {
        compiled = compile_naive(logical, t, ca.layout_seed);
    } else if (ca.method == "parity") {
        ParityOptions options;
        options.max_order = ca.max_order;
        options.self_check = !ca.no_self_check;
        if (!ca.depths.empty()) {
            for (std::size_t d : parse_list(ca.depths, "depth")) {
                options.depth_candidates.push_back(static_cast<std::uint32_t>(d));
            }
        }
        if (!ca.solver.empty() || !ca.solver_output.empty()) {
            const std::string text = !ca.solver_output.empty() ? read_file(ca.solver_output)
                                                               : run_maxsat_solver(ca.solver, wcnf_to_text(*wcnf, format));
            options.layout = import_maxsat_layout(text, *wcnf).plan;
        }
        compiled = compile_parity(logical, t, options);
    } else {
        throw ConfigError("--method must be parity or naive");
    }
    if (!ca.out.empty()) {
        write_file(ca.out, circuit_to_text(compiled.placed.circuit));
    }
    const json j = {{"method", compiled.method},
                    {"topology", t.name()},
                    {"logical_qubits", logical.num_qubits()},
                    {"physical_qubits", t.num_qubits()},
                    {"two_qubit_count", compiled.metrics.two_qubit_count},
                    {"two_qubit_depth", compiled.metrics.two_qubit_depth},
                    {"total_ops", compiled.metrics.total_ops},
                    {"swap_depth", compiled.swap_depth},
                    {"initial_layout", compiled.placed.initial_layout},
                    {"final_layout", compiled.placed.final_layout}};
    out << j.dump(2) << "\n";
    return 0;
}

struct PipelineArgs {
    TangleParams tangle;
    long length = -1;
    std::string encoding = "hubo";
    long steps = -1;
    std::string seeds = "1";
    bool stop_on_optimum = false;
    std::string out;
};

int cmd_pipeline(std::ostream &out, const PipelineArgs &pa, const ScheduleArgs &sched) {
    TangleParams params = pa.tangle;
    if (pa.length >= 0) {
        params.walk_length = static_cast<std::uint32_t>(pa.length);
    }
    const OrientedGraph g = generate_tangle(params);
    const EncodingKind kind = encoding_kind_from_string(pa.encoding);
    const std::uint32_t steps = resolve_steps(pa.steps, g);
    Problem pb;
    pb.graph = g;
    pb.kind = kind;
    pb.steps = steps;
    pb.nodes = g.node_count();
    pb.poly = encode(g, kind, steps, 0.0, 0.0);
    const OptimalWalks oracle = enumerate_optimal_walks(g, steps);

    const auto seeds = parse_list(pa.seeds, "seed");
    IterativeConfig base = sched.config();
    if (pa.stop_on_optimum && oracle.has_walk()) {
        base.target_energy = static_cast<double>(*oracle.min_cost);
    }
    const auto records = parallel_map<RunRecord>(seeds.size(), worker_count(), [&](std::size_t i) {
        IterativeConfig c = base;
        c.seed = seeds[i];
        return solve_problem(pb, c);
    });

    json runs = json::array();
    out << "seed  best_energy  hit_iter  walk_cost  optimal  walk\n";
    for (const RunRecord &r : records) {
        const DecodeSummary d = decode(kind, r.best_bits(), g, steps);
        const bool optimal = d.feasible && d.valid_walk && oracle.has_walk() && walk_cost(g, d.walk) == *oracle.min_cost;
        json run = {{"seed", r.config.seed},
                    {"best_energy", r.best_energy},
                    {"termination", r.termination},
                    {"decoded", decode_json(d, pb.graph)},
                    {"optimal", optimal}};
        run["target_hit_iteration"] = r.target_hit_iteration ? json(*r.target_hit_iteration) : json(nullptr);
        runs.push_back(std::move(run));
        out << std::left << std::setw(6) << r.config.seed << std::setw(13) << fmt(r.best_energy) << std::setw(10)
            << (r.target_hit_iteration ? std::to_string(*r.target_hit_iteration) : "-") << std::setw(11)
            << (d.feasible ? std::to_string(walk_cost(g, d.walk)) : "-") << std::setw(9) << (optimal ? "yes" : "no")
            << (d.feasible ? walk_text(d.walk) : d.note) << "\n";
    }
    json summary = {{"instance",
                     {{"seed", params.seed},
                      {"nodes", params.nodes},
                      {"max_weight", params.max_weight},
                      {"edge_density", params.edge_density},
                      {"graph", json::parse(graph_to_json(g))}}},
                    {"encoding", to_string(kind)},
                    {"steps", steps},
                    {"qubits", pb.poly.num_vars()},
                    {"schedule",
                     {{"p", base.layers},
                      {"delta_beta", base.delta_beta},
                      {"delta_gamma", base.delta_gamma},
                      {"shots", base.shots},
                      {"alpha", base.alpha},
                      {"iterations", base.iterations}}},
                    {"runs", std::move(runs)}};
    summary["oracle_min_cost"] = oracle.has_walk() ? json(*oracle.min_cost) : json(nullptr);
    summary["oracle_walks"] = oracle.walks.size();
    if (!pa.out.empty()) {
        write_file(pa.out, summary.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Oriented tangle resolution with Iterative-QAOA and circuit compilation", "tangle"};
    app.set_config("--config", "", "TOML/INI file with option values; explicit flags take precedence");
    app.require_subcommand(1);
    std::function<int()> action;

    TangleParams gen;
    long gen_length = -1;
    std::string gen_out;
    bool gen_walk = false;
    auto *generate = app.add_subcommand("generate", "Generate a synthetic tangle with a planted walk");
    generate->add_option("--seed", gen.seed, "Generator seed");
    generate->add_option("--nodes", gen.nodes, "Node count")->check(CLI::PositiveNumber);
    generate->add_option("--max-weight", gen.max_weight, "Largest node weight")->check(CLI::PositiveNumber);
    generate->add_option("--density", gen.edge_density, "Extra edge probability")->check(CLI::Range(0.0, 1.0));
    generate->add_option("--length", gen_length, "Force the planted walk length");
    generate->add_option("--out,-o", gen_out, "Output file (default stdout)");
    generate->add_flag("--print-walk", gen_walk, "Also print the planted walk");
    generate->callback([&] {
        action = [&] {
            if (gen_length >= 0) {
                gen.walk_length = static_cast<std::uint32_t>(gen_length);
            }
            return cmd_generate(out, gen, gen_out, gen_walk);
        };
    });

    ProblemArgs enc_args;
    bool enc_ising = false;
    std::string enc_out;
    auto *encode_cmd = app.add_subcommand("encode", "Encode a tangle as a QUBO or HUBO polynomial");
    enc_args.add(encode_cmd, false);
    encode_cmd->add_flag("--ising", enc_ising, "Emit the Ising form instead");
    encode_cmd->add_option("--out,-o", enc_out, "Output file (default stdout)");
    encode_cmd->callback([&] { action = [&] { return cmd_encode(out, enc_args, enc_ising, enc_out); }; });

    ProblemArgs solve_args;
    ScheduleArgs solve_sched;
    std::string solve_json, solve_csv;
    auto *solve_cmd = app.add_subcommand("solve", "Run Iterative-QAOA on an encoded tangle");
    solve_args.add(solve_cmd, true);
    solve_sched.add(solve_cmd);
    solve_cmd->add_option("--out,-o", solve_json, "RunRecord JSON output");
    solve_cmd->add_option("--histogram", solve_csv, "Energy histogram CSV output");
    solve_cmd->callback([&] {
        action = [&] { return cmd_solve(out, solve_args, solve_sched, solve_json, solve_csv); };
    });

    ProblemArgs anneal_args;
    AnnealConfig anneal_config;
    auto *anneal_cmd = app.add_subcommand("anneal", "Classical simulated-annealing baseline");
    anneal_args.add(anneal_cmd, true);
    anneal_cmd->add_option("--sweeps", anneal_config.sweeps, "Metropolis sweeps");
    anneal_cmd->add_option("--t0", anneal_config.initial_temperature, "Initial temperature");
    anneal_cmd->add_option("--t1", anneal_config.final_temperature, "Final temperature");
    anneal_cmd->add_option("--seed", anneal_config.seed, "Seed");
    anneal_cmd->callback([&] { action = [&] { return cmd_anneal(out, anneal_args, anneal_config); }; });

    ProblemArgs sweep_args;
    std::string sweep_layers = "1", sweep_beta = "0:1.5:16", sweep_gamma = "0:0.6:16", sweep_out;
    std::size_t sweep_workers = 0;
    auto *sweep_cmd = app.add_subcommand("sweep", "Grid of optimal-state probability over ramp amplitudes");
    sweep_args.add(sweep_cmd, true);
    sweep_cmd->add_option("--p", sweep_layers, "Comma-separated layer counts");
    sweep_cmd->add_option("--beta", sweep_beta, "delta_beta axis lo:hi:count");
    sweep_cmd->add_option("--gamma", sweep_gamma, "delta_gamma axis lo:hi:count");
    sweep_cmd->add_option("--workers", sweep_workers, "Worker threads (default TANGLE_WORKERS or cores)");
    sweep_cmd->add_option("--out,-o", sweep_out, "CSV output (default stdout)");
    sweep_cmd->callback([&] {
        action = [&] {
            return cmd_sweep(out, sweep_args, sweep_layers, sweep_beta, sweep_gamma, sweep_workers, sweep_out);
        };
    });

    ProblemArgs compile_args;
    ScheduleArgs compile_sched;
    CompileArgs ca;
    auto *compile_cmd = app.add_subcommand("compile", "Compile a cost circuit to a coupling topology");
    compile_args.add(compile_cmd, true);
    compile_cmd->add_option("--p", compile_sched.layers, "QAOA layers for --layer qaoa");
    compile_cmd->add_option("--delta-beta", compile_sched.delta_beta, "Mixer ramp amplitude");
    compile_cmd->add_option("--delta-gamma", compile_sched.delta_gamma, "Phase ramp amplitude");
    compile_cmd->add_option("--circuit", ca.circuit, "Logical circuit text file (instead of --graph/--poly)");
    compile_cmd->add_option("--layer", ca.layer, "cost (one phase layer) or qaoa (full circuit)");
    compile_cmd->add_option("--gamma", ca.gamma, "Phase angle for --layer cost");
    compile_cmd->add_option("--topology", ca.topology, "linear:N, grid:RxC or heavy-hex:C");
    compile_cmd->add_option("--method", ca.method, "parity or naive");
    compile_cmd->add_option("--depths", ca.depths, "Comma-separated SWAP depths to try");
    compile_cmd->add_option("--max-order", ca.max_order, "Largest interaction made local by layout search");
    compile_cmd->add_option("--layout-seed", ca.layout_seed, "Naive layout seed (0 = identity)");
    compile_cmd->add_option("--wcnf-out", ca.wcnf_out, "Write the layout MAX-SAT instance");
    compile_cmd->add_option("--wcnf-format", ca.wcnf_format, "classic or modern");
    compile_cmd->add_option("--swap-depth", ca.swap_depth, "SWAP layers in the MAX-SAT instance");
    compile_cmd->add_option("--maxsat-solver", ca.solver, "Solver command, run as '<cmd> <file.wcnf>'");
    compile_cmd->add_option("--maxsat-output", ca.solver_output, "Saved solver output to import");
    compile_cmd->add_option("--out,-o", ca.out, "Compiled circuit text output");
    compile_cmd->add_flag("--no-self-check", ca.no_self_check, "Skip the equivalence self-check");
    compile_cmd->callback([&] { action = [&] { return cmd_compile(out, compile_args, compile_sched, ca); }; });

    double noise_e = 0.0;
    std::uint64_t noise_gates = 0, noise_good = 1;
    auto *noise_cmd = app.add_subcommand("noise-budget", "Shots needed to collect error-free samples");
    noise_cmd->add_option("--e", noise_e, "Two-qubit gate error rate")->required();
    noise_cmd->add_option("--gates", noise_gates, "Two-qubit gate count")->required();
    noise_cmd->add_option("--good", noise_good, "Error-free samples wanted")->required();
    noise_cmd->callback([&] { action = [&] { return cmd_noise(out, noise_e, noise_gates, noise_good); }; });

    std::string oracle_graph;
    long oracle_steps = -1;
    std::uint64_t oracle_cap = kDefaultEnumerationCap;
    auto *oracle_cmd = app.add_subcommand("oracle", "Enumerate optimal walks exhaustively");
    oracle_cmd->add_option("--graph", oracle_graph, "Tangle JSON file")->required();
    oracle_cmd->add_option("--steps", oracle_steps, "Walk length T (default: sum of weights)");
    oracle_cmd->add_option("--cap", oracle_cap, "Largest number of sequences to enumerate");
    oracle_cmd->callback([&] { action = [&] { return cmd_oracle(out, oracle_graph, oracle_steps, oracle_cap); }; });

    PipelineArgs pa;
    ScheduleArgs pipe_sched;
    auto *pipe_cmd = app.add_subcommand("pipeline", "Generate, encode, solve, decode and check against the oracle");
    pipe_cmd->add_option("--instance-seed", pa.tangle.seed, "Generator seed");
    pipe_cmd->add_option("--nodes", pa.tangle.nodes, "Node count")->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--max-weight", pa.tangle.max_weight, "Largest node weight")->check(CLI::PositiveNumber);
    pipe_cmd->add_option("--density", pa.tangle.edge_density, "Extra edge probability")->check(CLI::Range(0.0, 1.0));
    pipe_cmd->add_option("--length", pa.length, "Force the planted walk length");
    pipe_cmd->add_option("--encoding", pa.encoding, "qubo or hubo");
    pipe_cmd->add_option("--steps", pa.steps, "Walk length T (default: sum of weights)");
    pipe_cmd->add_option("--seeds", pa.seeds, "Comma-separated sampling seeds");
    pipe_cmd->add_flag("--stop-on-optimum", pa.stop_on_optimum, "Stop each run once the oracle optimum is sampled");
    pipe_cmd->add_option("--out,-o", pa.out, "Summary JSON output");
    pipe_sched.add(pipe_cmd);
    pipe_cmd->callback([&] { action = [&] { return cmd_pipeline(out, pa, pipe_sched); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return ConfigError("").exit_code();
    }
    try {
        return action ? action() : 0;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tangle
