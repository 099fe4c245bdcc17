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

namespace tangle {

/// Independent two-qubit error model: each of G gates fails with rate e.
struct NoiseModel {
    double error_rate = 0.0;
    std::uint64_t gates = 0;
    std::uint64_t good_samples = 1;
};

/// Probability that a shot sees no two-qubit error, (1 - e)^G.
double p_good(double error_rate, std::uint64_t gates);

/// Shots needed to expect `good_samples` error-free shots: ceil(M / p_good).
std::uint64_t required_shots(double error_rate, std::uint64_t gates, std::uint64_t good_samples);

inline double p_good(const NoiseModel &m) {
    return p_good(m.error_rate, m.gates);
}
inline std::uint64_t required_shots(const NoiseModel &m) {
    return required_shots(m.error_rate, m.gates, m.good_samples);
}

}  // namespace tangle
