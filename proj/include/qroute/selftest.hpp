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

#pragma once

// Batched oracle-equivalence checks for the data mover and the lookups:
// simulate 64 cases per pass, compare with the reference functions, and
// require every ancilla back at zero.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qroute/datamove.hpp"
#include "qroute/pram.hpp"
#include "qroute/revcirc.hpp"

namespace qroute {

struct EquivalenceReport {
    std::size_t cases = 0;
    std::size_t mismatches = 0;
    std::size_t dirty = 0;  // cases that left an ancilla set

    bool ok() const { return cases > 0 && mismatches == 0 && dirty == 0; }
    EquivalenceReport &operator+=(const EquivalenceReport &o) {
        cases += o.cases;
        mismatches += o.mismatches;
        dirty += o.dirty;
        return *this;
    }
};

struct LookupCase {
    std::vector<std::size_t> j;
    std::vector<std::uint64_t> y, x;
};

inline std::uint64_t low_mask(std::size_t d) { return d >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << d) - 1; }

inline LookupCase random_lookup_case(std::size_t N, std::size_t d, std::mt19937_64 &rng) {
    LookupCase q;
    for (std::size_t i = 0; i < N; ++i) {
        q.j.push_back(std::uniform_int_distribution<std::size_t>(0, N - 1)(rng));
        q.y.push_back(rng() & low_mask(d));
        q.x.push_back(rng() & low_mask(d));
    }
    return q;
}

/// all-same (every target index), identity and two-hot index patterns, each
/// with `data_per_pattern` random data sets.
inline std::vector<LookupCase> adversarial_lookup_cases(std::size_t N, std::size_t d, std::mt19937_64 &rng,
                                                        std::size_t data_per_pattern = 8) {
    std::vector<std::vector<std::size_t>> patterns;
    for (std::size_t s = 0; s < N; ++s) patterns.push_back(query_pattern(QueryPattern::all_same, N, s));
    patterns.push_back(query_pattern(QueryPattern::identity, N));
    patterns.push_back(query_pattern(QueryPattern::two_hot, N));
    std::vector<LookupCase> out;
    for (const auto &p : patterns) {
        for (std::size_t k = 0; k < data_per_pattern; ++k) {
            auto q = random_lookup_case(N, d, rng);
            q.j = p;
            out.push_back(std::move(q));
        }
    }
    return out;
}

/// Checks a U(N,N) circuit (registers j, y, x) against gather_oracle.
inline EquivalenceReport check_parallel_lookup(const ReversibleCircuit &c, std::size_t N, std::size_t d,
                                               const std::vector<LookupCase> &cases) {
    const auto &J = c.reg("j");
    const auto &Y = c.reg("y");
    const auto &X = c.reg("x");
    const std::size_t A = J.size / N;
    EquivalenceReport rep;
    std::vector<std::uint64_t> state(c.width());
    for (std::size_t base = 0; base < cases.size(); base += 64) {
        const std::size_t lanes = std::min<std::size_t>(64, cases.size() - base);
        std::fill(state.begin(), state.end(), 0);
        for (std::size_t lane = 0; lane < lanes; ++lane) {
            const auto &q = cases[base + lane];
            for (std::size_t i = 0; i < N; ++i) {
                if (A) set_register(state, slice_register(J, i * A, A), q.j[i], lane);
                set_register(state, slice_register(Y, i * d, d), q.y[i], lane);
                set_register(state, slice_register(X, i * d, d), q.x[i], lane);
            }
        }
        simulate_batch(c, state);
        const std::uint64_t dirty = dirty_ancilla_lanes(c, state);
        for (std::size_t lane = 0; lane < lanes; ++lane) {
            const auto &q = cases[base + lane];
            const auto want = gather_oracle(q.j, q.y, q.x);
            bool good = true;
            for (std::size_t i = 0; i < N; ++i) {
                if (A && get_register(state, slice_register(J, i * A, A), lane) != q.j[i]) good = false;
                if (get_register(state, slice_register(X, i * d, d), lane) != q.x[i]) good = false;
                if (get_register(state, slice_register(Y, i * d, d), lane) != want[i]) good = false;
            }
            rep.mismatches += good ? 0 : 1;
            rep.dirty += (dirty >> lane) & 1;
        }
        rep.cases += lanes;
    }
    return rep;
}

/// Checks a V_N circuit against permute_oracle. `perms` holds one
/// permutation per case, or a single one shared by all cases. When the
/// circuit has a "j" register the permutation is loaded into it.
inline EquivalenceReport check_data_mover(const ReversibleCircuit &c, std::size_t N, std::size_t d,
                                          const std::vector<std::vector<std::size_t>> &perms,
                                          const std::vector<std::vector<std::uint64_t>> &data) {
    const auto &X = c.reg("x");
    const bool quantum = c.has_reg("j");
    const std::size_t A = quantum ? c.reg("j").size / N : 0;
    EquivalenceReport rep;
    std::vector<std::uint64_t> state(c.width());
    for (std::size_t base = 0; base < data.size(); base += 64) {
        const std::size_t lanes = std::min<std::size_t>(64, data.size() - base);
        std::fill(state.begin(), state.end(), 0);
        for (std::size_t lane = 0; lane < lanes; ++lane) {
            const auto &perm = perms[perms.size() == 1 ? 0 : base + lane];
            for (std::size_t i = 0; i < N; ++i) {
                set_register(state, slice_register(X, i * d, d), data[base + lane][i], lane);
                if (quantum) set_register(state, slice_register(c.reg("j"), i * A, A), perm[i], lane);
            }
        }
        simulate_batch(c, state);
        const std::uint64_t dirty = dirty_ancilla_lanes(c, state);
        for (std::size_t lane = 0; lane < lanes; ++lane) {
            const auto &perm = perms[perms.size() == 1 ? 0 : base + lane];
            const auto want = permute_oracle<std::uint64_t>(data[base + lane], perm);
            bool good = true;
            for (std::size_t i = 0; i < N; ++i) {
                if (get_register(state, slice_register(X, i * d, d), lane) != want[i]) good = false;
                if (quantum && get_register(state, slice_register(c.reg("j"), i * A, A), lane) != perm[i]) good = false;
            }
            rep.mismatches += good ? 0 : 1;
            rep.dirty += (dirty >> lane) & 1;
        }
        rep.cases += lanes;
    }
    return rep;
}

inline std::vector<std::size_t> random_permutation(std::size_t N, std::mt19937_64 &rng) {
    std::vector<std::size_t> p(N);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), rng);
    return p;
}

inline std::vector<std::uint64_t> random_words(std::size_t N, std::size_t d, std::mt19937_64 &rng) {
    std::vector<std::uint64_t> v(N);
    for (auto &x : v) x = rng() & low_mask(d);
    return v;
}

/// `perms` compiled movers with one random data vector each, plus `cases`
/// lanes through the quantum-destination mover.
inline EquivalenceReport data_mover_selftest(std::size_t N, std::size_t d, const ComparatorNetwork &net,
                                             std::size_t perms, std::size_t cases, std::mt19937_64 &rng) {
    EquivalenceReport rep;
    for (std::size_t t = 0; t < perms; ++t) {
        auto p = random_permutation(N, rng);
        auto m = build_data_mover(N, d, net, p);
        rep += check_data_mover(m.circuit, N, d, {p}, {random_words(N, d, rng)});
    }
    if (cases > 0) {
        auto q = build_data_mover(N, d, net);
        std::vector<std::vector<std::size_t>> ps;
        std::vector<std::vector<std::uint64_t>> xs;
        for (std::size_t t = 0; t < cases; ++t) {
            ps.push_back(random_permutation(N, rng));
            xs.push_back(random_words(N, d, rng));
        }
        rep += check_data_mover(q.circuit, N, d, ps, xs);
    }
    return rep;
}

}  // namespace qroute
