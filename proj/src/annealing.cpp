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

#include "tangle/annealing.hpp"

#include <cmath>

#include "tangle/error.hpp"
#include "tangle/rng.hpp"

namespace tangle {

AnnealResult simulated_annealing(const BinaryPolynomial &p, const AnnealConfig &config) {
    if (!(config.initial_temperature > 0.0 && config.final_temperature > 0.0)) {
        throw DomainError("annealing temperatures must be positive");
    }
    const std::uint32_t n = p.num_vars();
    std::vector<std::pair<Monomial, double>> terms(p.terms().begin(), p.terms().end());
    std::vector<std::vector<std::size_t>> touching(n);
    for (std::size_t k = 0; k < terms.size(); ++k) {
        for (std::uint32_t v : terms[k].first) {
            touching[v].push_back(k);
        }
    }

    Rng rng(config.seed);
    std::vector<std::uint8_t> bits(n);
    for (auto &b : bits) {
        b = static_cast<std::uint8_t>(rng.below(2));
    }
    double energy = eval_binary(p, bits);
    AnnealResult best{bits, energy};
    if (config.sweeps == 0 || n == 0) {
        return best;
    }

    // Energy change from flipping v: sign * sum of coefficients of the terms
    // through v whose other variables are all set.
    auto delta = [&](std::uint32_t v) {
        double d = 0.0;
        for (std::size_t k : touching[v]) {
            bool on = true;
            for (std::uint32_t u : terms[k].first) {
                if (u != v && !bits[u]) {
                    on = false;
                    break;
                }
            }
            if (on) {
                d += terms[k].second;
            }
        }
        return bits[v] ? -d : d;
    };

    const double ratio = config.sweeps > 1 ? std::pow(config.final_temperature / config.initial_temperature,
                                                      1.0 / static_cast<double>(config.sweeps - 1))
                                           : 1.0;
    double temperature = config.initial_temperature;
    for (std::size_t sweep = 0; sweep < config.sweeps; ++sweep) {
        for (std::uint32_t v = 0; v < n; ++v) {
            const double d = delta(v);
            if (d <= 0.0 || rng.uniform() < std::exp(-d / temperature)) {
                bits[v] ^= 1;
                energy += d;
                if (energy < best.energy) {
                    best.bits = bits;
                    best.energy = energy;
                }
            }
        }
        temperature *= ratio;
    }
    // Re-evaluate to shed accumulated rounding in the running energy.
    best.energy = eval_binary(p, best.bits);
    return best;
}

}  // namespace tangle
