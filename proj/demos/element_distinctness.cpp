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

// Element distinctness on a 64-entry table with one planted repeat, for a
// few sample sizes, showing the cost ledger of each run.

#include <cstdio>
#include <random>

#include "qroute/algorithms.hpp"

int main() {
    using namespace qroute;
    std::mt19937_64 rng(7);
    const std::size_t N = 64;
    const auto f = planted_table(N, rng);

    std::printf("  S  pair        oracle_calls  stage_depth  width  rounds\n");
    for (std::size_t S : {2, 4, 8, 16}) {
        auto r = element_distinctness(f, S, rng);
        if (r.pair) {
            std::printf("%3zu  (%2zu, %2zu)  %12zu  %11zu  %5zu  %6zu%s\n", S, r.pair->first, r.pair->second,
                        r.ledger.oracle_calls, r.ledger.stage_depth, r.ledger.width, r.amplification_rounds,
                        r.internal ? "  (inside first sample)" : "");
        } else {
            std::printf("%3zu  distinct  %12zu  %11zu  %5zu  %6zu\n", S, r.ledger.oracle_calls,
                        r.ledger.stage_depth, r.ledger.width, r.amplification_rounds);
        }
    }
    return 0;
}
