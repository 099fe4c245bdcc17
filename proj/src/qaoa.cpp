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

#include "tangle/qaoa.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "tangle/error.hpp"
#include "tangle/rng.hpp"

namespace tangle {

using Complex = std::complex<double>;

QaoaSchedule lr_schedule(std::size_t layers, double delta_beta, double delta_gamma) {
    if (layers == 0) {
        throw DomainError("QAOA needs at least one layer");
    }
    QaoaSchedule s{layers, delta_beta, delta_gamma, {}, {}};
    for (std::size_t k = 1; k <= layers; ++k) {
        const double ramp = static_cast<double>(2 * k - 1) / static_cast<double>(2 * layers);
        s.betas.push_back((1.0 - ramp) * delta_beta);
        s.gammas.push_back(ramp * delta_gamma);
    }
    return s;
}

PriorDistribution initial_prior(EncodingKind kind, std::uint32_t nodes, std::uint32_t num_qubits) {
    if (kind == EncodingKind::Qubo && nodes == 0) {
        throw DomainError("graph must have at least one node");
    }
    const double p = kind == EncodingKind::Qubo ? 1.0 / (2.0 * nodes) : 0.5;
    return PriorDistribution{std::vector<double>(num_qubits, p)};
}

namespace {

void check_prior(const PriorDistribution &prior, std::size_t n) {
    if (prior.probs.size() != n) {
        throw DomainError("prior has " + std::to_string(prior.probs.size()) + " entries for " + std::to_string(n) +
                          " qubits");
    }
    for (double p : prior.probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DomainError("prior probabilities must lie in [0, 1]");
        }
    }
}

std::vector<Complex> product_state(const PriorDistribution &prior) {
    std::vector<Complex> psi{1.0};
    psi.reserve(std::size_t{1} << prior.probs.size());
    for (double p : prior.probs) {
        const double a0 = std::sqrt(1.0 - p);
        const double a1 = std::sqrt(p);
        const std::size_t half = psi.size();
        psi.resize(2 * half);
        for (std::size_t x = 0; x < half; ++x) {
            psi[x + half] = psi[x] * a1;
            psi[x] *= a0;
        }
    }
    return psi;
}

using Mat2 = std::array<Complex, 4>;

Mat2 mul(const Mat2 &a, const Mat2 &b) {
    return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3]};
}

Mat2 ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return {c, -s, s, c};
}

Mat2 rz(double theta) {
    return {std::polar(1.0, -theta / 2), 0.0, 0.0, std::polar(1.0, theta / 2)};
}

void apply_single(std::vector<Complex> &psi, std::size_t qubit, const Mat2 &u) {
    const std::size_t step = std::size_t{1} << qubit;
    for (std::size_t base = 0; base < psi.size(); base += 2 * step) {
        for (std::size_t x = base; x < base + step; ++x) {
            const Complex a = psi[x];
            const Complex b = psi[x + step];
            psi[x] = u[0] * a + u[1] * b;
            psi[x + step] = u[2] * a + u[3] * b;
        }
    }
}

}  // namespace

std::vector<double> simulate_diagonal(std::span<const double> energies, const PriorDistribution &prior,
                                      const QaoaSchedule &schedule) {
    const std::size_t n = prior.probs.size();
    if (energies.size() != (std::size_t{1} << n)) {
        throw DomainError("energy table does not match the prior width");
    }
    check_prior(prior, n);
    std::vector<Complex> psi = product_state(prior);

    // exp(-i beta H_M) with H_M = sum -sin(phi) X - cos(phi) Z is
    // Ry(phi) Rz(-2 beta) Ry(-phi) on every qubit.
    std::vector<double> phis(n);
    for (std::size_t q = 0; q < n; ++q) {
        phis[q] = 2.0 * std::asin(std::sqrt(prior.probs[q]));
    }
    for (std::size_t k = 0; k < schedule.layers; ++k) {
        const double gamma = schedule.gammas.at(k);
        if (gamma != 0.0) {
            for (std::size_t x = 0; x < psi.size(); ++x) {
                psi[x] *= std::polar(1.0, -gamma * energies[x]);
            }
        }
        const double beta = schedule.betas.at(k);
        for (std::size_t q = 0; q < n; ++q) {
            apply_single(psi, q, mul(ry(phis[q]), mul(rz(-2.0 * beta), ry(-phis[q]))));
        }
    }
    std::vector<double> probs(psi.size());
    for (std::size_t x = 0; x < psi.size(); ++x) {
        probs[x] = std::norm(psi[x]);
    }
    return probs;
}

std::vector<double> simulate(const IsingPolynomial &h, const PriorDistribution &prior, const QaoaSchedule &schedule,
                             std::uint32_t max_qubits) {
    if (h.num_qubits() > max_qubits) {
        throw SizeError("simulation of " + std::to_string(h.num_qubits()) + " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
    }
    check_prior(prior, h.num_qubits());
    const auto energies = diagonal(h, max_qubits);
    return simulate_diagonal(energies, prior, schedule);
}

std::vector<double> prior_distribution(const PriorDistribution &prior) {
    const auto psi = product_state(prior);
    std::vector<double> probs(psi.size());
    for (std::size_t x = 0; x < psi.size(); ++x) {
        probs[x] = std::norm(psi[x]);
    }
    return probs;
}

SampleBatch sample(std::span<const double> probs, std::uint64_t shots, std::uint64_t seed, const IsingPolynomial &h) {
    if (probs.size() != (std::size_t{1} << h.num_qubits())) {
        throw DomainError("probability vector does not match the Hamiltonian width");
    }
    SampleBatch batch;
    batch.num_qubits = h.num_qubits();
    batch.shots = shots;
    if (shots == 0) {
        return batch;
    }
    std::vector<double> cdf(probs.size());
    double running = 0.0;
    for (std::size_t x = 0; x < probs.size(); ++x) {
        if (probs[x] < 0.0) {
            throw DomainError("negative probability");
        }
        running += probs[x];
        cdf[x] = running;
    }
    if (!(running > 0.0)) {
        throw DomainError("probability vector has no mass");
    }
    std::uint64_t last_positive = 0;
    for (std::size_t x = 0; x < probs.size(); ++x) {
        if (probs[x] > 0.0) {
            last_positive = x;
        }
    }
    Rng rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.uniform() * running;
        // The first cdf entry strictly above u always carries positive mass.
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::uint64_t index = it == cdf.end() ? last_positive : static_cast<std::uint64_t>(it - cdf.begin());
        ++counts[index];
    }
    batch.samples.reserve(counts.size());
    for (const auto &[index, count] : counts) {
        const auto bits = index_to_bits(index, h.num_qubits());
        batch.samples.push_back(Sample{index, ising_energy(h, bits), count});
    }
    return batch;
}

SampleBatch cvar_filter(const SampleBatch &batch, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw DomainError("CVaR fraction must lie in (0, 1]");
    }
    SampleBatch out;
    out.num_qubits = batch.num_qubits;
    out.iteration = batch.iteration;
    // Guard against alpha * shots landing a hair above an integer.
    const auto quota = static_cast<std::uint64_t>(std::ceil(alpha * static_cast<double>(batch.shots) - 1e-9));
    std::vector<Sample> order = batch.samples;
    std::sort(order.begin(), order.end(), [](const Sample &a, const Sample &b) {
        return a.energy != b.energy ? a.energy < b.energy : a.index < b.index;
    });
    std::uint64_t kept = 0;
    for (const Sample &s : order) {
        if (kept == quota) {
            break;
        }
        const std::uint64_t take = std::min(s.count, quota - kept);
        out.samples.push_back(Sample{s.index, s.energy, take});
        kept += take;
    }
    out.shots = kept;
    std::sort(out.samples.begin(), out.samples.end(),
              [](const Sample &a, const Sample &b) { return a.index < b.index; });
    return out;
}

double beta_t(std::size_t iteration, std::size_t max_iterations) {
    if (iteration < 1 || max_iterations < 1) {
        throw DomainError("iterations are numbered from 1");
    }
    if (max_iterations == 1) {
        return 0.015;
    }
    const double x = static_cast<double>(iteration - 1) / static_cast<double>(max_iterations - 1);
    return 0.015 + 0.030 * x * x;
}

PriorDistribution update_prior(const SampleBatch &batch, double beta, double clip, bool shift_energies) {
    if (batch.samples.empty()) {
        throw DomainError("cannot update the prior from an empty batch");
    }
    if (!(clip >= 0.0 && clip <= 0.5)) {
        throw DomainError("clip must lie in [0, 0.5]");
    }
    double shift = 0.0;
    if (shift_energies) {
        shift = std::numeric_limits<double>::infinity();
        for (const Sample &s : batch.samples) {
            shift = std::min(shift, s.energy);
        }
    }
    // Log-domain weights relative to the smallest exponent for stability.
    std::vector<double> exponents;
    double least = std::numeric_limits<double>::infinity();
    for (const Sample &s : batch.samples) {
        const double e = s.energy - shift;
        exponents.push_back(beta * e * e);
        least = std::min(least, exponents.back());
    }
    std::vector<double> weights;
    double total = 0.0;
    for (std::size_t k = 0; k < batch.samples.size(); ++k) {
        weights.push_back(static_cast<double>(batch.samples[k].count) * std::exp(-(exponents[k] - least)));
        total += weights.back();
    }
    PriorDistribution out;
    out.probs.assign(batch.num_qubits, 0.0);
    for (std::uint32_t q = 0; q < batch.num_qubits; ++q) {
        double z = 0.0;
        for (std::size_t k = 0; k < batch.samples.size(); ++k) {
            const bool one = (batch.samples[k].index >> q) & 1;
            z += (one ? -weights[k] : weights[k]) / total;
        }
        out.probs[q] = std::clamp(0.5 * (1.0 - z), clip, 1.0 - clip);
    }
    return out;
}

namespace {

IterationRecord summarise(const SampleBatch &batch, std::size_t index, std::vector<double> prior, double beta) {
    IterationRecord rec;
    rec.index = index;
    rec.prior = std::move(prior);
    rec.beta_t = beta;
    rec.shots = batch.shots;
    rec.min_energy = std::numeric_limits<double>::infinity();
    for (const Sample &s : batch.samples) {
        rec.histogram[s.energy] += s.count;
        rec.min_energy = std::min(rec.min_energy, s.energy);
    }
    return rec;
}

}  // namespace

std::vector<std::uint8_t> RunRecord::best_bits() const {
    return index_to_bits(best_index, num_qubits);
}

RunRecord iterative_qaoa(const IsingPolynomial &h, const PriorDistribution &initial, const IterativeConfig &config) {
    if (config.shots == 0) {
        throw DomainError("iterative QAOA needs at least one shot per iteration");
    }
    if (config.iterations == 0) {
        throw DomainError("iterative QAOA needs at least one iteration");
    }
    if (h.num_qubits() > config.max_qubits) {
        throw SizeError("simulation of " + std::to_string(h.num_qubits()) + " qubits exceeds the cap of " +
                        std::to_string(config.max_qubits));
    }
    check_prior(initial, h.num_qubits());
    // Validates alpha before any work is done.
    (void)cvar_filter(SampleBatch{h.num_qubits(), 0, 0, {}}, config.alpha);

    const QaoaSchedule schedule = lr_schedule(config.layers, config.delta_beta, config.delta_gamma);
    const std::vector<double> energies = diagonal(h, config.max_qubits);

    RunRecord record;
    record.config = config;
    record.num_qubits = h.num_qubits();
    record.best_energy = std::numeric_limits<double>::infinity();

    if (config.record_prior) {
        const auto probs = prior_distribution(initial);
        SampleBatch batch = sample(probs, config.shots, mix_seed(config.seed, 0), h);
        record.prior_samples = summarise(batch, 0, initial.probs, 0.0);
        record.prior_samples->kept = batch.shots;
        record.prior_samples->best_so_far = record.prior_samples->min_energy;
    }

    PriorDistribution prior = initial;
    record.termination = "max_iterations";
    for (std::size_t j = 1; j <= config.iterations; ++j) {
        const auto probs = simulate_diagonal(energies, prior, schedule);
        SampleBatch batch = sample(probs, config.shots, mix_seed(config.seed, j), h);
        batch.iteration = static_cast<std::uint32_t>(j);
        const double beta = beta_t(j, config.iterations);
        IterationRecord rec = summarise(batch, j, prior.probs, beta);
        for (const Sample &s : batch.samples) {
            if (s.energy < record.best_energy) {
                record.best_energy = s.energy;
                record.best_index = s.index;
            }
        }
        rec.best_so_far = record.best_energy;

        const SampleBatch kept = cvar_filter(batch, config.alpha);
        rec.kept = kept.shots;
        record.iterations.push_back(std::move(rec));

        if (config.target_energy && record.best_energy <= *config.target_energy + 1e-9) {
            record.target_hit_iteration = j;
            record.termination = "target_reached";
            break;
        }
        prior = update_prior(kept, beta, config.clip, config.shift_energies);
    }
    record.final_prior = prior.probs;
    return record;
}

double p_opt(std::span<const double> probs, std::span<const std::uint64_t> optimal) {
    double total = 0.0;
    for (std::uint64_t i : optimal) {
        if (i >= probs.size()) {
            throw DomainError("optimal index out of range");
        }
        total += probs[i];
    }
    return total;
}

std::vector<std::uint64_t> ground_states(std::span<const double> energies, double tol) {
    if (energies.empty()) {
        return {};
    }
    const double lo = *std::min_element(energies.begin(), energies.end());
    std::vector<std::uint64_t> out;
    for (std::size_t x = 0; x < energies.size(); ++x) {
        if (energies[x] <= lo + tol) {
            out.push_back(x);
        }
    }
    return out;
}

double GridAxis::at(std::size_t i) const {
    if (count <= 1) {
        return lo;
    }
    return lo + (hi - lo) * (static_cast<double>(i) / static_cast<double>(count - 1));
}

std::vector<SweepRow> sweep(const IsingPolynomial &h, const PriorDistribution &prior,
                            std::span<const std::uint64_t> optimal, const SweepConfig &config) {
    if (config.beta.count == 0 || config.gamma.count == 0) {
        throw DomainError("sweep axes need at least one point");
    }
    check_prior(prior, h.num_qubits());
    const std::vector<double> energies = diagonal(h);
    std::vector<SweepRow> rows;
    for (std::size_t p : config.layers) {
        for (std::size_t b = 0; b < config.beta.count; ++b) {
            for (std::size_t g = 0; g < config.gamma.count; ++g) {
                rows.push_back(SweepRow{p, config.beta.at(b), config.gamma.at(g), 0.0});
            }
        }
    }
    for (const SweepRow &row : rows) {
        if (row.layers == 0) {
            throw DomainError("QAOA needs at least one layer");
        }
    }
    auto evaluate = [&](std::size_t i) {
        SweepRow &row = rows[i];
        const auto probs = simulate_diagonal(energies, prior, lr_schedule(row.layers, row.delta_beta, row.delta_gamma));
        row.p_opt = p_opt(probs, optimal);
    };
    const std::size_t workers = std::max<std::size_t>(1, std::min(config.workers, rows.size()));
    if (workers == 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            evaluate(i);
        }
        return rows;
    }
    // Static striping: each row is written by exactly one worker.
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < rows.size(); i += workers) {
                evaluate(i);
            }
        });
    }
    for (auto &t : pool) {
        t.join();
    }
    return rows;
}

namespace {

std::string fmt_double(double x) {
    std::ostringstream out;
    out << std::setprecision(17) << x;
    return out.str();
}

nlohmann::json iteration_json(const IterationRecord &rec) {
    nlohmann::json hist = nlohmann::json::array();
    for (const auto &[energy, count] : rec.histogram) {
        hist.push_back({{"energy", energy}, {"count", count}});
    }
    return {{"iteration", rec.index}, {"prior", rec.prior},          {"beta_t", rec.beta_t},
            {"shots", rec.shots},     {"kept", rec.kept},            {"min_energy", rec.min_energy},
            {"best_so_far", rec.best_so_far}, {"histogram", std::move(hist)}};
}

}  // namespace

std::string sweep_to_csv(std::span<const SweepRow> rows) {
    std::ostringstream out;
    out << "p,delta_beta,delta_gamma,p_opt\n";
    for (const SweepRow &r : rows) {
        out << r.layers << ',' << fmt_double(r.delta_beta) << ',' << fmt_double(r.delta_gamma) << ','
            << fmt_double(r.p_opt) << '\n';
    }
    return out.str();
}

std::string run_record_to_json(const RunRecord &record) {
    const IterativeConfig &c = record.config;
    nlohmann::json config = {{"p", c.layers},
                             {"delta_beta", c.delta_beta},
                             {"delta_gamma", c.delta_gamma},
                             {"shots", c.shots},
                             {"alpha", c.alpha},
                             {"iterations", c.iterations},
                             {"seed", c.seed},
                             {"clip", c.clip},
                             {"shift_energies", c.shift_energies}};
    config["target_energy"] = c.target_energy ? nlohmann::json(*c.target_energy) : nlohmann::json(nullptr);
    nlohmann::json iterations = nlohmann::json::array();
    if (record.prior_samples) {
        iterations.push_back(iteration_json(*record.prior_samples));
    }
    for (const auto &rec : record.iterations) {
        iterations.push_back(iteration_json(rec));
    }
    nlohmann::json j = {{"config", std::move(config)},
                        {"num_qubits", record.num_qubits},
                        {"best_energy", record.best_energy},
                        {"best_index", record.best_index},
                        {"best_bits", record.best_bits()},
                        {"final_prior", record.final_prior},
                        {"termination", record.termination},
                        {"iterations", std::move(iterations)}};
    j["target_hit_iteration"] =
        record.target_hit_iteration ? nlohmann::json(*record.target_hit_iteration) : nlohmann::json(nullptr);
    return j.dump(2) + "\n";
}

std::string histogram_csv(const RunRecord &record) {
    std::ostringstream out;
    out << "iteration,energy,frequency\n";
    auto emit = [&](const IterationRecord &rec) {
        for (const auto &[energy, count] : rec.histogram) {
            out << rec.index << ',' << fmt_double(energy) << ','
                << fmt_double(static_cast<double>(count) / static_cast<double>(rec.shots)) << '\n';
        }
    };
    if (record.prior_samples) {
        emit(*record.prior_samples);
    }
    for (const auto &rec : record.iterations) {
        emit(rec);
    }
    return out.str();
}

}  // namespace tangle
