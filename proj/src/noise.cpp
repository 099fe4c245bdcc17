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

#include "tangle/noise.hpp"

#include <cmath>
#include <limits>

#include "tangle/error.hpp"

namespace tangle {

double p_good(double error_rate, std::uint64_t gates) {
    if (!(error_rate > 0.0 && error_rate < 1.0)) {
        throw DomainError("two-qubit error rate must lie in (0, 1)");
    }
    // exp(G log1p(-e)) keeps the product exact-ish for large G.
    return std::exp(static_cast<double>(gates) * std::log1p(-error_rate));
}

std::uint64_t required_shots(double error_rate, std::uint64_t gates, std::uint64_t good_samples) {
    if (good_samples < 1) {
        throw DomainError("need at least one good sample");
    }
    const double p = p_good(error_rate, gates);
    if (gates == 0) {
        return good_samples;
    }
    const double shots = std::ceil(static_cast<double>(good_samples) / p);
    if (!(shots < static_cast<double>(std::numeric_limits<std::uint64_t>::max()))) {
        throw SizeError("required shot count overflows");
    }
    return static_cast<std::uint64_t>(shots);
}

}  // namespace tangle
