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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tangle/encoding.hpp"
#include "tangle/ising.hpp"

namespace tangle {

/// Linear-ramp QAOA angles. beta_k ramps down and gamma_k ramps up across
/// the p layers, sampled at layer midpoints.
struct QaoaSchedule {
    std::size_t layers = 0;
    double delta_beta = 0.0;
    double delta_gamma = 0.0;
    std::vector<double> betas;
    std::vector<double> gammas;
};

QaoaSchedule lr_schedule(std::size_t layers, double delta_beta, double delta_gamma);

/// Per-qubit probability of measuring 1 in the warm-start product state.
struct PriorDistribution {
    std::vector<double> probs;

    bool operator==(const PriorDistribution &) const = default;
};

/// One-hot QUBO layouts start at 1/(2N) per bit; binary HUBO layouts at 1/2
/// whatever the node count.
PriorDistribution initial_prior(EncodingKind kind, std::uint32_t nodes, std::uint32_t num_qubits);

/// Exact statevector simulation of the warm-started LR-QAOA circuit.
/// Returns |amplitude|^2 per basis index (bit i = qubit i).
std::vector<double> simulate(const IsingPolynomial &h, const PriorDistribution &prior, const QaoaSchedule &schedule,
                             std::uint32_t max_qubits = kDefaultQubitCap);

/// Same as simulate() with the energy diagonal already tabulated.
std::vector<double> simulate_diagonal(std::span<const double> energies, const PriorDistribution &prior,
                                      const QaoaSchedule &schedule);

/// Product-state probabilities of the prior alone (no QAOA layers).
std::vector<double> prior_distribution(const PriorDistribution &prior);

struct Sample {
    std::uint64_t index = 0;
    double energy = 0.0;
    std::uint64_t count = 0;

    bool operator==(const Sample &) const = default;
};

/// Distinct outcomes sorted by basis index, with multiplicities.
struct SampleBatch {
    std::uint32_t num_qubits = 0;
    std::uint32_t iteration = 0;
    std::uint64_t shots = 0;
    std::vector<Sample> samples;

    bool operator==(const SampleBatch &) const = default;
};

/// Multinomial draw of `shots` outcomes; energies via ising_energy.
SampleBatch sample(std::span<const double> probs, std::uint64_t shots, std::uint64_t seed, const IsingPolynomial &h);

/// Keeps the ceil(alpha * shots) lowest-energy shots. Shots tied at the
/// cutoff energy are taken in ascending basis-index order.
SampleBatch cvar_filter(const SampleBatch &batch, double alpha);

/// Feedback inverse temperature for iteration j in 1..max_iterations:
/// quadratic in (j-1) from 0.015 up to 0.045.
double beta_t(std::size_t iteration, std::size_t max_iterations = 5);

constexpr double kDefaultClip = 0.15;

/// Boltzmann-weighted Z expectations of the batch mapped back to bit-flip
/// probabilities and clipped to [clip, 1 - clip]. With `shift_energies`
/// the batch minimum is subtracted before squaring.
PriorDistribution update_prior(const SampleBatch &batch, double beta, double clip = kDefaultClip,
                               bool shift_energies = false);

struct IterativeConfig {
    std::size_t layers = 1;
    double delta_beta = 0.75;
    double delta_gamma = 0.30;
    std::uint64_t shots = 400;
    double alpha = 1.0;
    std::size_t iterations = 5;
    std::uint64_t seed = 1;
    /// Stop as soon as an energy <= target is sampled.
    std::optional<double> target_energy;
    bool shift_energies = false;
    double clip = kDefaultClip;
    /// Also sample the initial prior and store it as iteration 0.
    bool record_prior = true;
    std::uint32_t max_qubits = kDefaultQubitCap;
};

struct IterationRecord {
    std::size_t index = 0;
    std::vector<double> prior;
    double beta_t = 0.0;
    std::uint64_t shots = 0;
    std::uint64_t kept = 0;
    /// Exact energy -> count over all shots of the iteration.
    std::map<double, std::uint64_t> histogram;
    double min_energy = 0.0;
    double best_so_far = 0.0;

    bool operator==(const IterationRecord &) const = default;
};

struct RunRecord {
    IterativeConfig config;
    std::uint32_t num_qubits = 0;
    /// Iteration 0 (prior samples) when config.record_prior.
    std::optional<IterationRecord> prior_samples;
    std::vector<IterationRecord> iterations;
    double best_energy = 0.0;
    std::uint64_t best_index = 0;
    /// First QAOA iteration whose samples reached the target energy.
    std::optional<std::size_t> target_hit_iteration;
    std::vector<double> final_prior;
    std::string termination;

    std::vector<std::uint8_t> best_bits() const;
};

RunRecord iterative_qaoa(const IsingPolynomial &h, const PriorDistribution &initial, const IterativeConfig &config);

/// Probability mass on a set of basis indices.
double p_opt(std::span<const double> probs, std::span<const std::uint64_t> optimal);

/// Basis indices whose energy is within `tol` of the minimum.
std::vector<std::uint64_t> ground_states(std::span<const double> energies, double tol = 1e-9);

/// Inclusive evenly spaced axis lo..hi with `count` points. Point i is
/// lo + (hi - lo) * (i / (count - 1)), so refining count to 2*count - 1
/// reproduces every coarse point bit for bit.
struct GridAxis {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 1;

    double at(std::size_t i) const;
    GridAxis refined() const {
        return GridAxis{lo, hi, count > 1 ? 2 * count - 1 : 1};
    }
};

struct SweepConfig {
    std::vector<std::size_t> layers{1};
    GridAxis beta{0.0, 1.0, 11};
    GridAxis gamma{0.0, 1.0, 11};
    std::size_t workers = 1;
};

struct SweepRow {
    std::size_t layers = 0;
    double delta_beta = 0.0;
    double delta_gamma = 0.0;
    double p_opt = 0.0;

    bool operator==(const SweepRow &) const = default;
};

/// p_opt over the (p, delta_beta, delta_gamma) grid, rows ordered by p,
/// then delta_beta, then delta_gamma regardless of worker count.
std::vector<SweepRow> sweep(const IsingPolynomial &h, const PriorDistribution &prior,
                            std::span<const std::uint64_t> optimal, const SweepConfig &config);

std::string sweep_to_csv(std::span<const SweepRow> rows);

std::string run_record_to_json(const RunRecord &record);
/// iteration,energy,frequency rows; iteration 0 is the prior when recorded.
std::string histogram_csv(const RunRecord &record);

}  // namespace tangle
