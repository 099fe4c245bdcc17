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

#include "tangle/graph.hpp"

namespace fixtures {

/// Two nodes of weight 1 joined as 0+ -> 1+ and 1+ -> 0+ plus mates.
inline tangle::OrientedGraph tangle2() {
    return tangle::OrientedGraph(2, {1, 1}, {{0, 2}, {2, 0}, {1, 3}, {3, 1}});
}

/// Planted instance with a fixed walk length.
inline tangle::OrientedGraph planted(std::uint64_t seed, std::uint32_t nodes, std::uint32_t length,
                                     double density = 0.3) {
    tangle::TangleParams p;
    p.seed = seed;
    p.nodes = nodes;
    p.max_weight = length;
    p.edge_density = density;
    p.walk_length = length;
    return tangle::generate_tangle(p);
}

}  // namespace fixtures
