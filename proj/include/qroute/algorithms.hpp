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

// Search applications built on the lookup circuits: predicate oracles,
// lockstep Grover searches, element distinctness and collision finding.
//
// The search dynamics are exact two-level (marked / unmarked) amplitude
// evolutions; the compiled oracles are checked against the predicates on
// every basis input, which is what lets the dynamics use the predicate
// directly as a phase oracle.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qroute/common.hpp"
#include "qroute/gadgets.hpp"
#include "qroute/pram.hpp"
#include "qroute/qsim.hpp"
#include "qroute/revcirc.hpp"
#include "qroute/reversible_sort.hpp"
#include "qroute/sortnet.hpp"

namespace qroute {

/// Per-run resource counters. "Time" is stage-depth, not wall clock.
struct CostLedger {
    std::size_t oracle_calls = 0;
    std::size_t pram_calls = 0;
    std::size_t stage_depth = 0;
    std::size_t width = 0;

    void charge(std::size_t calls, std::size_t pram, std::size_t depth) {
        oracle_calls += calls;
        pram_calls += pram;
        stage_depth += depth;
    }
    void widen(std::size_t w) { width = std::max(width, w); }
};

/// A predicate on r entries of d bits, both as a reversible circuit and as
/// a reference function. The circuit has registers "in" (r*d bits, entry k
/// at [k*d, (k+1)*d), LSB first), "out" (1 bit, XORed with the value) and
/// any number of clean ancillas.
struct Predicate {
    std::string name;
    std::size_t r = 1;
    std::size_t d = 1;
    ReversibleCircuit circuit;
    std::function<bool(std::span<const std::uint64_t>)> eval;
};

inline void check_predicate(const Predicate &p) {
    if (p.r == 0 || p.d == 0) fail("predicate '", p.name, "' needs r >= 1 and d >= 1");
    if (!p.eval) fail("predicate '", p.name, "' has no reference function");
    if (!p.circuit.has_reg("in") || !p.circuit.has_reg("out")) fail("predicate '", p.name, "' lacks in/out registers");
    if (p.circuit.reg("in").size != p.r * p.d)
        fail("predicate '", p.name, "' reads ", p.circuit.reg("in").size, " bits, expected ", p.r * p.d);
    if (p.circuit.reg("out").size != 1) fail("predicate '", p.name, "' must have a 1-bit output");
}

namespace detail {

inline std::pair<CircuitBuilder, std::pair<Register, Register>> predicate_shell(std::size_t r, std::size_t d) {
    CircuitBuilder bld;
    Register in = bld.add_register("in", r * d, RegisterKind::input);
    Register out = bld.add_register("out", 1, RegisterKind::inout);
    return {std::move(bld), {in, out}};
}

}  // namespace detail

/// Constant predicate.
inline Predicate constant_predicate(std::size_t r, std::size_t d, bool value) {
    auto [bld, regs] = detail::predicate_shell(r, d);
    bld.begin_stage("alpha");
    if (value) bld.x(regs.second[0]);
    bld.end_stage();
    return {value ? "true" : "false", r, d, std::move(bld).build(),
            [value](std::span<const std::uint64_t>) { return value; }};
}

/// [entry == target].
inline Predicate equals_target(std::size_t d, std::uint64_t target) {
    if (d < 64 && (target >> d) != 0) fail("target ", target, " does not fit in ", d, " bits");
    auto [bld, regs] = detail::predicate_shell(1, d);
    Register scr = bld.add_register("and_scratch", gadgets::and_scratch_needed(d), RegisterKind::ancilla);
    std::vector<gadgets::Literal> lits;
    for (std::size_t b = 0; b < d; ++b) lits.push_back({regs.first[b], ((target >> b) & 1) == 0});
    bld.begin_stage("alpha");
    gadgets::multi_and(bld, lits, regs.second[0], gadgets::bits_of(scr));
    bld.end_stage();
    return {"equals " + std::to_string(target), 1, d, std::move(bld).build(),
            [target](std::span<const std::uint64_t> e) { return e[0] == target; }};
}

/// [entry_0 == entry_1]: XOR one entry into the other, test for zero, undo.
inline Predicate entries_equal(std::size_t d) {
    auto [bld, regs] = detail::predicate_shell(2, d);
    Register scr = bld.add_register("and_scratch", gadgets::and_scratch_needed(d), RegisterKind::ancilla);
    const Register &in = regs.first;
    std::vector<gadgets::Literal> lits;
    for (std::size_t b = 0; b < d; ++b) lits.push_back({in[d + b], true});
    bld.begin_stage("alpha");
    for (std::size_t b = 0; b < d; ++b) bld.cnot(in[b], in[d + b]);
    gadgets::multi_and(bld, lits, regs.second[0], gadgets::bits_of(scr));
    for (std::size_t b = 0; b < d; ++b) bld.cnot(in[b], in[d + b]);
    bld.end_stage();
    return {"entries equal", 2, d, std::move(bld).build(),
            [](std::span<const std::uint64_t> e) { return e[0] == e[1]; }};
}

/// O_alpha = U(1,N)^r, alpha, U(1,N)^r. Registers "j" (r indices of
/// ceil(log2 N) bits, input), "b" (1 bit, inout), "x" (N*d, input) and clean
/// ancillas "loaded", "lookup_scratch", "alpha_scratch". The r lookups reuse
/// one set of lookup ancillas, so they run one after another.
inline ReversibleCircuit compose_oracle(const Predicate &alpha, std::size_t N, std::size_t d, std::size_t r) {
    check_predicate(alpha);
    if (N < 2) fail("compose_oracle needs N >= 2, got ", N);
    if (alpha.d != d || alpha.r != r)
        fail("predicate '", alpha.name, "' takes ", alpha.r, "x", alpha.d, " bits, oracle supplies ", r, "x", d);
    const std::size_t A = ceil_log2(N);
    const auto look = build_single_lookup(N, d);
    const std::size_t look_extra = look.width() - A - d - N * d;
    const std::size_t alpha_extra = alpha.circuit.width() - r * d - 1;

    CircuitBuilder bld;
    Register j = bld.add_register("j", r * A, RegisterKind::input);
    Register b = bld.add_register("b", 1, RegisterKind::inout);
    Register x = bld.add_register("x", N * d, RegisterKind::input);
    Register loaded = bld.add_register("loaded", r * d, RegisterKind::ancilla);
    Register lscr = bld.add_register("lookup_scratch", look_extra, RegisterKind::ancilla);
    Register ascr = bld.add_register("alpha_scratch", alpha_extra, RegisterKind::ancilla);
    auto c = std::move(bld).build();

    auto lookup_map = [&](std::size_t k) {
        std::vector<Bit> map(look.width());
        std::size_t next = 0;
        for (const auto &reg : look.registers()) {
            for (std::size_t i = 0; i < reg.size; ++i) {
                if (reg.name == "j") map[reg[i]] = j[k * A + i];
                else if (reg.name == "y") map[reg[i]] = loaded[k * d + i];
                else if (reg.name == "x") map[reg[i]] = x[i];
                else map[reg[i]] = lscr[next++];
            }
        }
        return map;
    };
    std::vector<Bit> amap(alpha.circuit.width());
    std::size_t next = 0;
    for (const auto &reg : alpha.circuit.registers()) {
        for (std::size_t i = 0; i < reg.size; ++i) {
            if (reg.name == "in") amap[reg[i]] = loaded[i];
            else if (reg.name == "out") amap[reg[i]] = b[0];
            else amap[reg[i]] = ascr[next++];
        }
    }
    for (std::size_t k = 0; k < r; ++k) c = compose(c, look, lookup_map(k));
    c = compose(c, alpha.circuit, amap);
    for (std::size_t k = r; k-- > 0;) c = compose(c, look, lookup_map(k));
    return c;
}

struct OracleCheck {
    bool agrees = true;
    bool clean = true;
    std::size_t cases = 0;
};

/// Runs the composed oracle on every (j_1..j_r, b) for the fixed database x
/// and compares against the predicate, 64 cases per simulation.
inline OracleCheck check_oracle(const ReversibleCircuit &oracle, const Predicate &alpha,
                                std::span<const std::uint64_t> x, std::size_t d) {
    const std::size_t N = x.size();
    const std::size_t r = alpha.r;
    const std::size_t A = ceil_log2(N);
    std::size_t tuples = 1;
    for (std::size_t k = 0; k < r; ++k) tuples *= N;
    const std::size_t total = 2 * tuples;
    const Register &jr = oracle.reg("j");
    const Register &br = oracle.reg("b");
    const Register &xr = oracle.reg("x");
    auto tuple_of = [&](std::size_t t) {
        std::vector<std::size_t> idx(r);
        for (std::size_t k = 0; k < r; ++k, t /= N) idx[k] = t % N;
        return idx;
    };
    OracleCheck out;
    std::vector<std::uint64_t> state(oracle.width());
    for (std::size_t base = 0; base < total; base += 64) {
        const std::size_t lanes = std::min<std::size_t>(64, total - base);
        std::fill(state.begin(), state.end(), 0);
        for (std::size_t lane = 0; lane < 64; ++lane)
            for (std::size_t i = 0; i < N; ++i) set_register(state, slice_register(xr, i * d, d), x[i], lane);
        for (std::size_t lane = 0; lane < lanes; ++lane) {
            const std::size_t c = base + lane;
            auto idx = tuple_of(c / 2);
            for (std::size_t k = 0; k < r; ++k) set_register(state, slice_register(jr, k * A, A), idx[k], lane);
            set_register(state, br, c % 2, lane);
        }
        simulate_batch(oracle, state);
        if (dirty_ancilla_lanes(oracle, state) != 0) out.clean = false;
        for (std::size_t lane = 0; lane < lanes; ++lane) {
            const std::size_t c = base + lane;
            auto idx = tuple_of(c / 2);
            std::vector<std::uint64_t> entries(r);
            for (std::size_t k = 0; k < r; ++k) {
                entries[k] = x[idx[k]];
                if (get_register(state, slice_register(jr, k * A, A), lane) != idx[k]) out.agrees = false;
            }
            const std::uint64_t want = (c % 2) ^ (alpha.eval(entries) ? 1 : 0);
            if (get_register(state, br, lane) != want) out.agrees = false;
            for (std::size_t i = 0; i < N; ++i)
                if (get_register(state, slice_register(xr, i * d, d), lane) != x[i]) out.agrees = false;
        }
        out.cases += lanes;
    }
    return out;
}

struct LookupCost {
    std::size_t stage_depth = 0;
    std::size_t width = 0;
};

/// Packet network for a U(N,N) over 2N wires without a host graph.
inline ComparatorNetwork lookup_network(std::size_t N) {
    const std::size_t w = 2 * N;
    return is_power_of_two(w) ? bitonic_network(ceil_log2(w)) : oets_network(w);
}

/// Stage-depth and width of a compiled U(N,N), memoized.
inline LookupCost parallel_lookup_cost(std::size_t N, std::size_t d) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, LookupCost> cache;
    std::lock_guard lock(mu);
    auto it = cache.find({N, d});
    if (it != cache.end()) return it->second;
    auto m = metrics(build_parallel_lookup(N, d, lookup_network(N)));
    LookupCost c{m.stage_depth, m.width};
    cache.emplace(std::make_pair(N, d), c);
    return c;
}

/// Outcome of independent Grover searches advanced in lockstep with an
/// unknown number of marked items: each round every open search draws an
/// iteration count below the shared bound m (which grows by `growth` up to
/// sqrt of its domain), runs it, measures and checks the result with one
/// more oracle call. Shorter searches idle (identity padding) until the
/// longest one of the round finishes.
struct LockstepOutcome {
    std::vector<std::optional<std::size_t>> found;
    std::vector<std::size_t> iterations;  // Grover iterations actually run per search
    std::vector<std::size_t> padding;     // idle iteration slots per search
    std::size_t oracle_calls = 0;         // lockstep oracle-call slots
    std::size_t rounds = 0;
};

struct LockstepOptions {
    double growth = 1.2;
    std::size_t extra_rounds = 12;
};

inline LockstepOutcome lockstep_search(const std::vector<std::vector<bool>> &marked, std::mt19937_64 &rng,
                                       const LockstepOptions &opt = {}) {
    if (opt.growth <= 1.0) fail("lockstep growth must exceed 1");
    const std::size_t n = marked.size();
    LockstepOutcome out;
    out.found.assign(n, std::nullopt);
    out.iterations.assign(n, 0);
    out.padding.assign(n, 0);
    if (n == 0) return out;
    std::vector<std::size_t> count(n, 0);
    std::vector<std::vector<std::size_t>> hits(n);
    double widest = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (marked[i].empty()) fail("search ", i, " has an empty domain");
        for (std::size_t v = 0; v < marked[i].size(); ++v)
            if (marked[i][v]) hits[i].push_back(v);
        count[i] = hits[i].size();
        widest = std::max(widest, std::sqrt(double(marked[i].size())));
    }
    const std::size_t max_rounds =
        static_cast<std::size_t>(std::ceil(std::log(widest) / std::log(opt.growth))) + opt.extra_rounds;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double m = 1.0;
    std::vector<bool> open(n, true);
    std::size_t remaining = n;
    for (std::size_t round = 0; round < max_rounds && remaining > 0; ++round) {
        std::vector<std::size_t> k(n, 0);
        std::size_t longest = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (!open[i]) continue;
            const double cap = std::min(m, std::sqrt(double(marked[i].size())));
            const auto bound = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(cap)));
            k[i] = std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
            longest = std::max(longest, k[i]);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!open[i]) {
                out.padding[i] += longest;
                continue;
            }
            out.iterations[i] += k[i];
            out.padding[i] += longest - k[i];
            const double p = count[i] == 0 ? 0.0
                                           : grover_closed_form(double(marked[i].size()), double(count[i]), k[i]);
            if (unit(rng) < p) {
                const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, count[i] - 1)(rng);
                out.found[i] = hits[i][pick];
                open[i] = false;
                --remaining;
            }
        }
        out.oracle_calls += longest + 1;
        ++out.rounds;
        m = std::min(m * opt.growth, widest);
    }
    return out;
}

struct MultiGroverOptions {
    LockstepOptions lockstep{};
    bool verify_oracles = true;
};

struct MultiGroverResult {
    /// Per predicate: the index tuple (j_1..j_r) found, or nullopt for "no solution".
    std::vector<std::optional<std::vector<std::size_t>>> solutions;
    std::vector<std::size_t> iterations;
    std::vector<std::size_t> padding;
    std::size_t rounds = 0;
    CostLedger ledger;
};

/// Up to N searches over r-tuples of database indices, one per predicate,
/// run in lockstep. Each lockstep oracle call is costed as r parallel loads
/// via U(N,N), the predicates, and r unloads.
inline MultiGroverResult multi_grover(const std::vector<Predicate> &alphas, std::span<const std::uint64_t> x,
                                      std::size_t d, std::size_t r, std::mt19937_64 &rng,
                                      const MultiGroverOptions &opt = {}) {
    const std::size_t N = x.size();
    if (N < 2) fail("multi_grover needs a database of at least 2 entries");
    if (alphas.size() > N) fail(alphas.size(), " predicates exceed the ", N, " processors");
    std::size_t D = 1;
    for (std::size_t k = 0; k < r; ++k) {
        D *= N;
        if (D > (std::size_t{1} << 22)) fail("search space N^r too large to simulate");
    }
    std::size_t alpha_depth = 1, alpha_width = 0;
    for (const auto &a : alphas) {
        check_predicate(a);
        if (a.r != r || a.d != d) fail("predicate '", a.name, "' does not take ", r, " entries of ", d, " bits");
        if (opt.verify_oracles) {
            auto chk = check_oracle(compose_oracle(a, N, d, r), a, x, d);
            if (!chk.agrees || !chk.clean) fail("predicate '", a.name, "' circuit disagrees with its reference");
        }
        alpha_depth = std::max(alpha_depth, metrics(a.circuit).stage_depth);
        alpha_width = std::max(alpha_width, a.circuit.width());
    }
    std::vector<std::vector<bool>> marked(alphas.size(), std::vector<bool>(D));
    std::vector<std::uint64_t> entries(r);
    for (std::size_t t = 0; t < D; ++t) {
        std::size_t rest = t;
        for (std::size_t k = 0; k < r; ++k, rest /= N) entries[k] = x[rest % N];
        for (std::size_t i = 0; i < alphas.size(); ++i) marked[i][t] = alphas[i].eval(entries);
    }
    auto run = lockstep_search(marked, rng, opt.lockstep);

    MultiGroverResult res;
    res.iterations = run.iterations;
    res.padding = run.padding;
    res.rounds = run.rounds;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!run.found[i]) {
            res.solutions.emplace_back();
            continue;
        }
        std::vector<std::size_t> tuple(r);
        std::size_t rest = *run.found[i];
        for (std::size_t k = 0; k < r; ++k, rest /= N) tuple[k] = rest % N;
        res.solutions.emplace_back(std::move(tuple));
    }
    const auto uc = parallel_lookup_cost(N, d);
    res.ledger.charge(run.oracle_calls, 2 * r * run.oracle_calls,
                      run.oracle_calls * (2 * r * uc.stage_depth + alpha_depth));
    res.ledger.widen(uc.width + N * alpha_width);
    return res;
}

using IndexPair = std::pair<std::size_t, std::size_t>;

struct DistinctnessOptions {
    LockstepOptions schedule{.growth = 1.2, .extra_rounds = 8};
    std::size_t estimate_samples = 4096;
    /// Use this first sample instead of a random one.
    std::optional<std::vector<std::size_t>> forced_sample;
};

struct DistinctnessResult {
    std::optional<IndexPair> pair;    // nullopt means "distinct"
    bool internal = false;            // found inside the first sample, before any search
    std::size_t amplification_rounds = 0;  // amplification iterations (reflection pairs) run
    std::size_t measured_runs = 0;         // times the amplified subroutine was measured
    std::size_t block_iterations = 0;      // Grover iterations per block search
    std::size_t per_round_stage_depth = 0;  // one parallel membership-oracle call
    double success_estimate = 0.0;     // estimated success probability of one subroutine run
    CostLedger ledger;
};

namespace detail {

inline std::size_t value_bits(std::span<const std::uint64_t> f) {
    std::uint64_t top = 0;
    for (auto v : f) top = std::max(top, v);
    return std::max<std::size_t>(1, std::bit_width(top));
}

inline ComparatorNetwork sample_network(std::size_t S) {
    return is_power_of_two(S) ? bitonic_network(ceil_log2(S)) : oets_network(S);
}

struct SortedSample {
    std::vector<std::size_t> order;  // sample indices sorted by f value
    std::size_t stage_depth = 0;
    std::size_t width = 0;
};

/// Sorts (f(i), i) pairs with the compiled reversible sort, simulated.
inline SortedSample sort_sample(std::span<const std::uint64_t> f, std::span<const std::size_t> sample) {
    const std::size_t S = sample.size();
    SortedSample out;
    if (S <= 1) {
        out.order.assign(sample.begin(), sample.end());
        return out;
    }
    const std::size_t kb = value_bits(f);
    const std::size_t pb = std::max<std::size_t>(1, ceil_log2(f.size()));
    const auto net = sample_network(S);
    const auto circ = compile_reversible_sort(net, kb, pb);
    const std::size_t w = kb + pb;
    std::vector<std::uint8_t> in(circ.width(), 0);
    const auto &el = circ.reg("elements");
    for (std::size_t e = 0; e < S; ++e) {
        const std::uint64_t packed = f[sample[e]] | (std::uint64_t(sample[e]) << kb);
        for (std::size_t b = 0; b < w; ++b) in[el[e * w + b]] = (packed >> b) & 1;
    }
    auto res = simulate(circ, in);
    for (std::size_t e = 0; e < S; ++e) {
        std::uint64_t packed = 0;
        for (std::size_t b = 0; b < w; ++b) packed |= std::uint64_t(res[el[e * w + b]]) << b;
        out.order.push_back(static_cast<std::size_t>(packed >> kb));
    }
    auto m = metrics(circ);
    out.stage_depth = m.stage_depth;
    out.width = m.width;
    return out;
}

inline std::vector<std::size_t> draw_sample(std::size_t N, std::size_t S, std::mt19937_64 &rng) {
    std::vector<std::size_t> all(N);
    for (std::size_t i = 0; i < N; ++i) all[i] = i;
    for (std::size_t i = 0; i < S; ++i) {
        std::size_t k = std::uniform_int_distribution<std::size_t>(i, N - 1)(rng);
        std::swap(all[i], all[k]);
    }
    all.resize(S);
    return all;
}

/// One run of the distinctness subroutine on sample L: an internal
/// collision, or S block searches for x outside L with f(x) in f(L).
class SubroutineModel {
   public:
    SubroutineModel(std::span<const std::uint64_t> f, std::size_t S) : f_(f), S_(S) {
        const std::size_t N = f.size();
        block_ = (N + S - 1) / S;
        iters_ = static_cast<std::size_t>(std::floor(std::numbers::pi / 4 * std::sqrt(double(block_))));
        for (std::size_t i = 0; i < N; ++i) pre_[f[i]].push_back(i);
    }

    std::size_t block_size() const { return block_; }
    std::size_t iterations() const { return iters_; }

    /// Success probability given L, with the block marked counts filled in.
    double success(std::span<const std::size_t> L, std::vector<std::size_t> &counts,
                   std::vector<IndexPair> &witness) const {
        const std::size_t N = f_.size();
        witness.clear();
        counts.clear();
        std::unordered_map<std::uint64_t, std::size_t> seen;
        for (std::size_t i : L) {
            auto [it, fresh] = seen.emplace(f_[i], i);
            if (!fresh) {
                witness.push_back({it->second, i});
                return 1.0;
            }
        }
        counts.assign((N + block_ - 1) / block_, 0);
        std::vector<bool> inL(N, false);
        for (std::size_t i : L) inL[i] = true;
        for (std::size_t i : L) {
            for (std::size_t z : pre_.at(f_[i])) {
                if (inL[z]) continue;
                ++counts[z / block_];
                witness.push_back({i, z});
            }
        }
        double miss = 1.0;
        for (std::size_t b = 0; b < counts.size(); ++b) {
            if (counts[b] == 0) continue;
            const std::size_t size = std::min(block_, N - b * block_);
            miss *= 1.0 - grover_closed_form(double(size), double(counts[b]), iters_);
        }
        return 1.0 - miss;
    }

    /// Draws one successful run's output: rejection sampling of the
    /// subroutine conditioned on success.
    std::optional<IndexPair> sample_success(std::mt19937_64 &rng, std::size_t max_tries = 1u << 20) const {
        std::vector<std::size_t> counts;
        std::vector<IndexPair> witness;
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (std::size_t t = 0; t < max_tries; ++t) {
            auto L = draw_sample(f_.size(), S_, rng);
            const double s = success(L, counts, witness);
            if (s == 1.0 && counts.empty()) return witness.front();
            if (witness.empty()) continue;
            // measure each block; keep the first block that hits
            for (std::size_t b = 0; b < counts.size(); ++b) {
                if (counts[b] == 0) continue;
                const std::size_t size = std::min(block_, f_.size() - b * block_);
                if (unit(rng) >= grover_closed_form(double(size), double(counts[b]), iters_)) continue;
                std::vector<IndexPair> in_block;
                for (auto w : witness)
                    if (w.second / block_ == b) in_block.push_back(w);
                return in_block[std::uniform_int_distribution<std::size_t>(0, in_block.size() - 1)(rng)];
            }
        }
        return std::nullopt;
    }

    double estimate(std::mt19937_64 &rng, std::size_t samples) const {
        std::vector<std::size_t> counts;
        std::vector<IndexPair> witness;
        double total = 0.0;
        for (std::size_t t = 0; t < samples; ++t) total += success(draw_sample(f_.size(), S_, rng), counts, witness);
        return samples ? total / double(samples) : 0.0;
    }

   private:
    std::span<const std::uint64_t> f_;
    std::size_t S_;
    std::size_t block_ = 1;
    std::size_t iters_ = 0;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> pre_;
};

inline IndexPair ordered(IndexPair p) { return p.first < p.second ? p : IndexPair{p.second, p.first}; }

}  // namespace detail

/// Stage-depth of one parallel membership call g_L with S sorted entries of
/// d bits: a binary search of ceil(log2 S)+1 probes, each a U(S,S) lookup,
/// plus the f query feeding it.
inline std::size_t membership_stage_depth(std::size_t S, std::size_t d) {
    if (S <= 1) return 2;
    return (ceil_log2(S) + 1) * parallel_lookup_cost(S, d).stage_depth + 1;
}

/// Finds i != j with f(i) == f(j), or reports "distinct" (nullopt).
///
/// A first sample of S inputs is sorted by value with the compiled
/// reversible sort; a repeated value there is returned at once. Otherwise
/// the subroutine (fresh sample, membership function g_L, S parallel block
/// searches) is amplitude-amplified with a growing random iteration count,
/// its success probability estimated by sampling.
inline DistinctnessResult element_distinctness(std::span<const std::uint64_t> f, std::size_t S, std::mt19937_64 &rng,
                                               const DistinctnessOptions &opt = {}) {
    const std::size_t N = f.size();
    if (S < 1 || S > N) fail("sample size S=", S, " outside [1, ", N, "]");
    DistinctnessResult res;
    const std::size_t vb = detail::value_bits(f);

    std::vector<std::size_t> first;
    if (opt.forced_sample) {
        first = *opt.forced_sample;
        if (first.size() != S) fail("forced sample has ", first.size(), " entries, expected ", S);
        std::vector<bool> seen(N, false);
        for (std::size_t i : first) {
            if (i >= N || seen[i]) fail("forced sample index ", i, " invalid or repeated");
            seen[i] = true;
        }
    } else {
        first = detail::draw_sample(N, S, rng);
    }
    auto sorted = detail::sort_sample(f, first);
    res.ledger.charge(0, 0, sorted.stage_depth);
    res.ledger.widen(sorted.width);
    for (std::size_t e = 0; e + 1 < sorted.order.size(); ++e) {
        if (f[sorted.order[e]] == f[sorted.order[e + 1]]) {
            res.pair = detail::ordered({sorted.order[e], sorted.order[e + 1]});
            res.internal = true;
            return res;
        }
    }

    detail::SubroutineModel model(f, S);
    res.block_iterations = model.iterations();
    res.per_round_stage_depth = membership_stage_depth(S, vb);
    const std::size_t pram_per_call = S <= 1 ? 0 : ceil_log2(S) + 1;
    // one subroutine run: sort the sample, then k block-search iterations,
    // each calling g_L forward and back around a diffusion
    const std::size_t run_depth = sorted.stage_depth + model.iterations() * (2 * res.per_round_stage_depth + 1);
    const std::size_t run_calls = model.iterations();
    res.ledger.widen(S * (vb + ceil_log2(N) + 1) + (S > 1 ? parallel_lookup_cost(S, vb).width : 0));

    const double p = model.estimate(rng, opt.estimate_samples);
    res.success_estimate = p;
    const double theta = std::asin(std::sqrt(std::clamp(p, 0.0, 1.0)));
    const double m_cap = std::max(1.0, std::sqrt(double(N) / double(S)));
    const std::size_t max_rounds =
        static_cast<std::size_t>(std::ceil(std::log(m_cap) / std::log(opt.schedule.growth))) +
        opt.schedule.extra_rounds;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double m = 1.0;
    for (std::size_t round = 0; round < max_rounds; ++round) {
        const auto bound = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(m)));
        const std::size_t j = std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng);
        // j amplification iterations each run the subroutine forward and back
        const std::size_t runs = 2 * j + 1;
        res.amplification_rounds += j;
        ++res.measured_runs;
        res.ledger.charge(runs * run_calls, runs * run_calls * 2 * pram_per_call, runs * run_depth + 2 * j);
        const double s = std::sin((2.0 * double(j) + 1.0) * theta);
        if (p > 0.0 && unit(rng) < s * s) {
            auto hit = model.sample_success(rng);
            if (hit && hit->first != hit->second && f[hit->first] == f[hit->second]) {
                res.pair = detail::ordered(*hit);
                return res;
            }
        }
        m = std::min(m * opt.schedule.growth, m_cap);
    }
    return res;
}

/// A shuffled injective table, with one planted collision unless
/// `injective`.
inline std::vector<std::uint64_t> planted_table(std::size_t N, std::mt19937_64 &rng, bool injective = false) {
    std::vector<std::uint64_t> f(N);
    std::iota(f.begin(), f.end(), 0);
    std::shuffle(f.begin(), f.end(), rng);
    if (!injective && N >= 2) {
        const std::size_t a = rng() % N;
        const std::size_t b = (a + 1 + rng() % (N - 1)) % N;
        f[b] = f[a];
    }
    return f;
}

/// A random 2-1 table (or a random 1-1 one when `injective`).
inline std::vector<std::uint64_t> pairing_table(std::size_t N, std::mt19937_64 &rng, bool injective = false) {
    if (!injective && N % 2) fail("a 2-1 table needs even N");
    std::vector<std::size_t> perm(N);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::uint64_t> f(N);
    for (std::size_t i = 0; i < N; ++i) f[perm[i]] = injective ? i : i / 2;
    return f;
}

struct CollisionOptions {
    DistinctnessOptions distinctness{};
    /// Reduction sample size is ceil(factor * sqrt(N)).
    double sample_factor = 2.0;
    std::size_t direct_rounds = 4;
    LockstepOptions lockstep{};
};

struct CollisionResult {
    std::optional<IndexPair> pair;  // nullopt means "one-to-one"
    std::size_t sampled = 0;
    std::size_t searches = 0;
    std::size_t search_domain = 0;
    CostLedger ledger;
};

/// Rejects tables where some value has more than two preimages.
inline void check_collision_promise(std::span<const std::uint64_t> f) {
    std::unordered_map<std::uint64_t, std::size_t> count;
    for (auto v : f)
        if (++count[v] > 2) fail("value ", v, " has more than two preimages; f is neither 1-1 nor 2-1");
}

/// Collision finding by reduction: restrict f to ceil(2 sqrt N) random
/// inputs and solve element distinctness there with sample size S.
inline CollisionResult collision_finding(std::span<const std::uint64_t> f, std::size_t S, std::mt19937_64 &rng,
                                         const CollisionOptions &opt = {}) {
    check_collision_promise(f);
    const std::size_t N = f.size();
    if (N < 2) fail("collision finding needs N >= 2");
    const std::size_t T = std::min(N, static_cast<std::size_t>(std::ceil(opt.sample_factor * std::sqrt(double(N)))));
    auto pick = detail::draw_sample(N, T, rng);
    std::vector<std::uint64_t> g(T);
    for (std::size_t i = 0; i < T; ++i) g[i] = f[pick[i]];
    auto ed = element_distinctness(g, std::clamp<std::size_t>(S, 1, T), rng, opt.distinctness);
    CollisionResult res;
    res.sampled = T;
    res.ledger = ed.ledger;
    res.searches = std::min(S, T);
    res.search_domain = (T + res.searches - 1) / res.searches;
    if (ed.pair) res.pair = detail::ordered({pick[ed.pair->first], pick[ed.pair->second]});
    return res;
}

/// Direct path: S random inputs, then S parallel Grover searches over
/// disjoint blocks of about N/S^2 inputs for a partner outside the sample.
/// Repeated with fresh samples up to `direct_rounds` times.
inline CollisionResult collision_finding_direct(std::span<const std::uint64_t> f, std::size_t S,
                                                std::mt19937_64 &rng, const CollisionOptions &opt = {}) {
    check_collision_promise(f);
    const std::size_t N = f.size();
    if (S < 1 || S > N) fail("sample size S=", S, " outside [1, ", N, "]");
    const std::size_t block = std::max<std::size_t>(1, (N + S * S - 1) / (S * S));
    CollisionResult res;
    res.sampled = S;
    res.searches = S;
    res.search_domain = block;
    const std::size_t vb = detail::value_bits(f);
    const std::size_t call_depth = membership_stage_depth(S, vb);
    for (std::size_t round = 0; round < opt.direct_rounds; ++round) {
        auto L = detail::draw_sample(N, S, rng);
        auto sorted = detail::sort_sample(f, L);
        res.ledger.charge(0, 0, sorted.stage_depth);
        res.ledger.widen(sorted.width);
        for (std::size_t e = 0; e + 1 < sorted.order.size(); ++e) {
            if (f[sorted.order[e]] == f[sorted.order[e + 1]]) {
                res.pair = detail::ordered({sorted.order[e], sorted.order[e + 1]});
                return res;
            }
        }
        std::unordered_map<std::uint64_t, std::size_t> in_sample;
        for (std::size_t i : L) in_sample.emplace(f[i], i);
        const std::size_t offset = std::uniform_int_distribution<std::size_t>(0, N - 1)(rng);
        std::vector<std::vector<bool>> marked(S, std::vector<bool>(block));
        for (std::size_t s = 0; s < S; ++s) {
            for (std::size_t b = 0; b < block; ++b) {
                const std::size_t z = (offset + s * block + b) % N;
                auto it = in_sample.find(f[z]);
                marked[s][b] = it != in_sample.end() && it->second != z;
            }
        }
        auto run = lockstep_search(marked, rng, opt.lockstep);
        res.ledger.charge(run.oracle_calls, run.oracle_calls * 2 * (S <= 1 ? 0 : ceil_log2(S) + 1),
                          run.oracle_calls * call_depth);
        for (std::size_t s = 0; s < S; ++s) {
            if (!run.found[s]) continue;
            const std::size_t z = (offset + s * block + *run.found[s]) % N;
            const std::size_t partner = in_sample.at(f[z]);
            if (partner != z && f[partner] == f[z]) {
                res.pair = detail::ordered({partner, z});
                return res;
            }
        }
    }
    return res;
}

}  // namespace qroute
