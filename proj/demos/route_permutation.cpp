// Copyright 2026 The qroute Authors
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

// Moves one data word per node of a 16-node hypercube to a random
// destination with a compiled reversible circuit, then checks the result.

#include <cstdio>
#include <random>

#include "qroute/datamove.hpp"
#include "qroute/selftest.hpp"
#include "qroute/topology.hpp"

int main() {
    using namespace qroute;
    const std::size_t N = 16, d = 4;
    std::mt19937_64 rng(2026);

    const auto topo = build_topology(Family::hypercube, {.n = N});
    const auto pn = packet_network_for(topo);
    const auto perm = random_permutation(N, rng);
    const auto data = random_words(N, d, rng);

    auto mover = build_data_mover(N, d, pn.net, perm);
    const auto m = metrics(mover.circuit);
    const bool local = gates_local(mover.circuit, bit_nodes(mover, pn.wire_to_node), topo);

    // run the circuit on the data
    std::vector<std::uint8_t> bits(mover.circuit.width(), 0);
    const auto &X = mover.circuit.reg("x");
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t b = 0; b < d; ++b) bits[X.offset + i * d + b] = (data[i] >> b) & 1;
    const auto out = simulate(mover.circuit, bits);

    std::printf("node  data  dest-gets  result\n");
    const auto want = permute_oracle<std::uint64_t>(data, perm);
    bool ok = true;
    for (std::size_t i = 0; i < N; ++i) {
        std::uint64_t v = 0;
        for (std::size_t b = 0; b < d; ++b) v |= std::uint64_t{out[X.offset + i * d + b]} << b;
        ok = ok && v == want[i];
        std::printf("%4zu  %4llu  x[%2zu]      %4llu\n", i, (unsigned long long)data[i], perm[i],
                    (unsigned long long)v);
    }
    std::printf("\nwidth=%zu depth=%zu gates=%zu stage_depth=%zu local=%s correct=%s\n", m.width, m.depth, m.size,
                m.stage_depth, local ? "true" : "false", ok ? "true" : "false");
    return ok && local ? 0 : 1;
}
