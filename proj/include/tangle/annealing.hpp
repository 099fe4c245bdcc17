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
#include <vector>

#include "tangle/polynomial.hpp"

namespace tangle {

struct AnnealConfig {
    /// Full passes over all variables. 0 returns the initial assignment.
    std::size_t sweeps = 1000;
    double initial_temperature = 10.0;
    double final_temperature = 0.05;
    std::uint64_t seed = 1;
};

struct AnnealResult {
    std::vector<std::uint8_t> bits;
    double energy = 0.0;
};

/// Single-flip Metropolis with a geometric temperature schedule. Starts from
/// a uniformly random assignment drawn from the seed; returns the best
/// assignment seen.
AnnealResult simulated_annealing(const BinaryPolynomial &p, const AnnealConfig &config);

}  // namespace tangle
