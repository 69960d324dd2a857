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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qroute/gadgets.hpp"
#include "qroute/reversible_sort.hpp"
#include "qroute/revcirc.hpp"
#include "qroute/sortnet.hpp"

namespace qroute {

/// Packet of a parallel lookup:
///   address (LSB first), flag (question 0, answer 1), target data y,
///   memory data x, aux phase, aux action.
struct LookupLayout {
    std::size_t N = 0;
    std::size_t address_bits = 0;
    std::size_t data_bits = 0;
    std::size_t phases = 0;       // n = ceil(log2 2N)
    std::size_t phase_bits = 0;   // wide enough to hold the value n
    std::size_t scratch_bits = 0; // per packet
    Register packets;
    Register scratch;

    LookupLayout(std::size_t n_nodes, std::size_t d) : N(n_nodes), address_bits(ceil_log2(n_nodes)), data_bits(d) {
        phases = ceil_log2(2 * N);
        phase_bits = ceil_log2(phases + 1);
    }

    std::size_t packet_count() const { return 2 * N; }
    std::size_t packet_bits() const { return address_bits + 1 + 2 * data_bits + phase_bits + 1; }
    std::size_t key_bits() const { return address_bits + 1; }

    Bit bit(std::size_t p, std::size_t off) const { return packets[p * packet_bits() + off]; }
    Bit addr(std::size_t p, std::size_t b) const { return bit(p, b); }
    Bit flag(std::size_t p) const { return bit(p, address_bits); }
    Bit y(std::size_t p, std::size_t b) const { return bit(p, address_bits + 1 + b); }
    Bit x(std::size_t p, std::size_t b) const { return bit(p, address_bits + 1 + data_bits + b); }
    Bit phase(std::size_t p, std::size_t b) const { return bit(p, address_bits + 1 + 2 * data_bits + b); }
    Bit action(std::size_t p) const { return bit(p, address_bits + 1 + 2 * data_bits + phase_bits); }
    Bit scr(std::size_t p, std::size_t i) const { return scratch[p * scratch_bits + i]; }

    std::vector<Bit> scratch_of(std::size_t p) const {
        std::vector<Bit> v(scratch_bits);
        for (std::size_t i = 0; i < scratch_bits; ++i) v[i] = scr(p, i);
        return v;
    }

    /// Sort view: key (address MSB first, flag); the aux fields are zero
    /// whenever the sort runs, so only y and x travel.
    ElementBits element(std::size_t p) const {
        ElementBits e;
        for (std::size_t b = address_bits; b-- > 0;) e.key.push_back(addr(p, b));
        e.key.push_back(flag(p));
        for (std::size_t b = 0; b < data_bits; ++b) e.payload.push_back(y(p, b));
        for (std::size_t b = 0; b < data_bits; ++b) e.payload.push_back(x(p, b));
        return e;
    }

    /// Scratch needed by one packet during a cascade phase.
    std::size_t cascade_scratch() const {
        const std::size_t eligible_lits = 2 + phase_bits + address_bits;
        const std::size_t moved = data_bits + phase_bits;  // bits written under the action bit
        std::size_t need = 1 + std::max(gadgets::and_scratch_needed(1 + phase_bits),
                                        gadgets::and_scratch_needed(eligible_lits));
        need = std::max(need, moved > 0 ? moved - 1 : 0);
        need = std::max(need, gadgets::and_scratch_needed(phase_bits));
        return need;
    }
};

namespace detail {

// One half (even or odd pairs) of cascade phase k.
inline void cascade_half(CircuitBuilder &bld, const LookupLayout &L, std::size_t k, bool odd) {
    using gadgets::Literal;
    const std::size_t span = std::size_t{1} << k;
    const std::size_t stamp = k + 1;
    for (std::size_t l = 0; l + span < L.packet_count(); ++l) {
        if ((((l >> k) & 1) != 0) != odd) continue;
        const std::size_t r = l + span;
        auto scr = L.scratch_of(l);
        const Bit o = scr[0];
        std::span<const Bit> rest(scr.data() + 1, scr.size() - 1);

        // o = flag_r OR phase_r != 0
        std::vector<Literal> nor;
        nor.push_back({L.flag(r), true});
        for (std::size_t b = 0; b < L.phase_bits; ++b) nor.push_back({L.phase(r, b), true});
        gadgets::multi_and(bld, nor, o, rest);
        bld.x(o);
        for (std::size_t b = 0; b < L.address_bits; ++b) bld.cnot(L.addr(l, b), L.addr(r, b));

        std::vector<Literal> elig;
        elig.push_back({L.flag(l), true});
        for (std::size_t b = 0; b < L.phase_bits; ++b) elig.push_back({L.phase(l, b), true});
        elig.push_back({o, false});
        for (std::size_t b = 0; b < L.address_bits; ++b) elig.push_back({L.addr(r, b), true});
        gadgets::multi_and(bld, elig, L.action(l), rest);

        for (std::size_t b = 0; b < L.address_bits; ++b) bld.cnot(L.addr(l, b), L.addr(r, b));
        bld.x(o);
        gadgets::multi_and(bld, nor, o, rest);

        // under the action bit: x_l ^= x_r, phase_l ^= k+1
        std::vector<Bit> targets;
        std::vector<Bit> sources;
        for (std::size_t b = 0; b < L.data_bits; ++b) {
            targets.push_back(L.x(l, b));
            sources.push_back(L.x(r, b));
        }
        for (std::size_t b = 0; b < L.phase_bits; ++b) {
            if ((stamp >> b) & 1) {
                targets.push_back(L.phase(l, b));
                sources.push_back(Bit(-1));
            }
        }
        std::vector<Bit> controls{L.action(l)};
        for (std::size_t i = 1; i < targets.size(); ++i) controls.push_back(scr[i - 1]);
        auto fan = gadgets::fanout(bld, L.action(l), std::span<const Bit>(controls).subspan(1));
        for (std::size_t i = 0; i < targets.size(); ++i) {
            if (sources[i] == Bit(-1)) {
                bld.cnot(controls[i], targets[i]);
            } else {
                bld.toffoli(controls[i], sources[i], targets[i]);
            }
        }
        bld.add_inverse(fan);

        // action_l ^= [phase_l == k+1]
        std::vector<Literal> done;
        for (std::size_t b = 0; b < L.phase_bits; ++b) done.push_back({L.phase(l, b), ((stamp >> b) & 1) == 0});
        gadgets::multi_and(bld, done, L.action(l), scr);
    }
}

}  // namespace detail

/// Emits the cascade: n phases, one stage each. Returns every phase's gates
/// so the caller can run it backwards.
inline std::vector<std::vector<Gate>> emit_cascade(CircuitBuilder &bld, const LookupLayout &L,
                                                   const std::string &label = "cascade") {
    if (L.scratch_bits < L.cascade_scratch()) fail("cascade needs ", L.cascade_scratch(), " scratch bits per packet");
    std::vector<std::vector<Gate>> phases;
    for (std::size_t k = 0; k < L.phases; ++k) {
        bld.begin_stage(label);
        bld.begin_capture();
        detail::cascade_half(bld, L, k, false);
        detail::cascade_half(bld, L, k, true);
        phases.push_back(bld.end_capture());
        bld.end_stage();
    }
    return phases;
}

inline void emit_uncascade(CircuitBuilder &bld, const std::vector<std::vector<Gate>> &phases,
                           const std::string &label = "uncascade") {
    for (auto it = phases.rbegin(); it != phases.rend(); ++it) {
        bld.begin_stage(label);
        bld.add_inverse(*it);
        bld.end_stage();
    }
}

/// Every packet: y ^= x. One stage.
inline void emit_copy(CircuitBuilder &bld, const LookupLayout &L, const std::string &label = "copy") {
    bld.begin_stage(label);
    for (std::size_t p = 0; p < L.packet_count(); ++p)
        for (std::size_t b = 0; b < L.data_bits; ++b) bld.cnot(L.x(p, b), L.y(p, b));
    bld.end_stage();
}

namespace detail {

inline LookupLayout standalone_packets(CircuitBuilder &bld, std::size_t N, std::size_t d, bool with_scratch) {
    if (N == 0 || d == 0) fail("lookup needs N >= 1 and d >= 1");
    LookupLayout L(N, d);
    L.packets = bld.add_register("packets", L.packet_count() * L.packet_bits(), RegisterKind::inout);
    if (with_scratch) {
        L.scratch_bits = L.cascade_scratch();
        L.scratch = bld.add_register("scratch", L.packet_count() * L.scratch_bits, RegisterKind::ancilla);
    }
    return L;
}

}  // namespace detail

/// Cascade alone over 2N packets assumed sorted by (address, flag).
/// Register "packets" uses the LookupLayout bit order.
inline ReversibleCircuit build_cascade(std::size_t N, std::size_t d) {
    CircuitBuilder bld;
    auto L = detail::standalone_packets(bld, N, d, true);
    emit_cascade(bld, L);
    return std::move(bld).build();
}

inline ReversibleCircuit build_copy(std::size_t N, std::size_t d) {
    CircuitBuilder bld;
    auto L = detail::standalone_packets(bld, N, d, false);
    emit_copy(bld, L);
    return std::move(bld).build();
}

/// U_(N,N): registers "j" (N indices of ceil(log2 N) bits, input), "y"
/// (N*d, inout), "x" (N*d, input) and clean ancillas "packets", "sigma",
/// "scratch". Query i reads x[j_i] into y_i for any index pattern.
inline ReversibleCircuit build_parallel_lookup(std::size_t N, std::size_t d, const ComparatorNetwork &net,
                                               const SortOptions &sort_opt = {.fanout_swap = true,
                                                                              .scratch_per_wire = true}) {
    if (N == 0 || d == 0) fail("parallel lookup needs N >= 1 and d >= 1");
    if (net.wire_count() != 2 * N) fail("parallel lookup over N=", N, " needs a ", 2 * N, "-wire network, got ", net.wire_count());
    CircuitBuilder bld;
    LookupLayout L(N, d);
    const std::size_t A = L.address_bits;
    Register jreg = bld.add_register("j", N * A, RegisterKind::input);
    Register yreg = bld.add_register("y", N * d, RegisterKind::inout);
    Register xreg = bld.add_register("x", N * d, RegisterKind::input);
    L.packets = bld.add_register("packets", L.packet_count() * L.packet_bits(), RegisterKind::ancilla);
    Register sigma = bld.add_register("sigma", net.comparator_count(), RegisterKind::ancilla);

    const std::size_t elem_bits = L.key_bits() + 2 * d;
    const std::size_t sort_slot = sort_scratch_per_slot(L.key_bits(), elem_bits, sort_opt);
    const std::size_t slots = sort_scratch_slots(net, sort_opt);
    // the sort and the cascade never overlap, so they share scratch
    L.scratch_bits = std::max(L.cascade_scratch(), sort_opt.scratch_per_wire ? sort_slot : 0);
    std::size_t scratch_size = L.packet_count() * L.scratch_bits;
    if (!sort_opt.scratch_per_wire) scratch_size = std::max(scratch_size, sort_slot * slots);
    L.scratch = bld.add_register("scratch", scratch_size, RegisterKind::ancilla);

    // F: packet 2i = (i, a, 0, x_i), packet 2i+1 = (j_i, q, y_i, 0)
    bld.begin_stage("format");
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t b = 0; b < A; ++b) {
            if ((i >> b) & 1) bld.x(L.addr(2 * i, b));
            bld.swap(jreg[i * A + b], L.addr(2 * i + 1, b));
        }
        bld.x(L.flag(2 * i));
        for (std::size_t b = 0; b < d; ++b) {
            bld.swap(xreg[i * d + b], L.x(2 * i, b));
            bld.swap(yreg[i * d + b], L.y(2 * i + 1, b));
        }
    }
    bld.end_stage();

    std::vector<ElementBits> elems(L.packet_count());
    for (std::size_t p = 0; p < elems.size(); ++p) elems[p] = L.element(p);
    const std::size_t slot_size = sort_opt.scratch_per_wire ? L.scratch_bits : sort_slot;
    auto sorted = emit_sort(bld, net, elems, sigma, L.scratch, slot_size, "sort", sort_opt);

    auto phases = emit_cascade(bld, L);
    emit_copy(bld, L);
    emit_uncascade(bld, phases);
    emit_unsort(bld, sorted, "unsort");

    // F-hat: return inputs, clear constants, and clear the answer packets'
    // y (which now holds a copy of x_i).
    bld.begin_stage("unformat");
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t b = 0; b < d; ++b) bld.cnot(L.x(2 * i, b), L.y(2 * i, b));
        for (std::size_t b = 0; b < d; ++b) {
            bld.swap(xreg[i * d + b], L.x(2 * i, b));
            bld.swap(yreg[i * d + b], L.y(2 * i + 1, b));
        }
        for (std::size_t b = 0; b < A; ++b) {
            if ((i >> b) & 1) bld.x(L.addr(2 * i, b));
            bld.swap(jreg[i * A + b], L.addr(2 * i + 1, b));
        }
        bld.x(L.flag(2 * i));
    }
    bld.end_stage();
    return std::move(bld).build();
}

/// U_(1,N): registers "j" (ceil(log2 N) bits, input), "y" (d, inout), "x"
/// (N*d, input) and clean ancillas. j is fanned out to every cell, each cell
/// tests j == c, masks its data, and an XOR tree folds the masked data into
/// y. Everything but the final fold is uncomputed.
inline ReversibleCircuit build_single_lookup(std::size_t N, std::size_t d) {
    if (N == 0 || d == 0) fail("single lookup needs N >= 1 and d >= 1");
    const std::size_t A = ceil_log2(N);
    CircuitBuilder bld;
    Register j = bld.add_register("j", A, RegisterKind::input);
    Register y = bld.add_register("y", d, RegisterKind::inout);
    Register x = bld.add_register("x", N * d, RegisterKind::input);
    Register jc = bld.add_register("jcopies", N * A, RegisterKind::ancilla);
    Register eq = bld.add_register("select", N * d, RegisterKind::ancilla);  // d copies of [j == c]
    Register masked = bld.add_register("masked", N * d, RegisterKind::ancilla);
    const std::size_t and_scr = gadgets::and_scratch_needed(A);
    Register scr = bld.add_register("and_scratch", N * and_scr, RegisterKind::ancilla);

    bld.begin_capture();
    bld.begin_stage("fanout");
    for (std::size_t b = 0; b < A; ++b) {
        std::vector<Bit> copies(N);
        for (std::size_t c = 0; c < N; ++c) copies[c] = jc[c * A + b];
        gadgets::fanout(bld, j[b], copies);
    }
    bld.end_stage();
    bld.begin_stage("select");
    for (std::size_t c = 0; c < N; ++c) {
        std::vector<gadgets::Literal> lits;
        for (std::size_t b = 0; b < A; ++b) lits.push_back({jc[c * A + b], ((c >> b) & 1) == 0});
        std::vector<Bit> s;
        for (std::size_t i = 0; i < and_scr; ++i) s.push_back(scr[c * and_scr + i]);
        gadgets::multi_and(bld, lits, eq[c * d], s);
        std::vector<Bit> copies;
        for (std::size_t b = 1; b < d; ++b) copies.push_back(eq[c * d + b]);
        gadgets::fanout(bld, eq[c * d], copies);
    }
    bld.end_stage();
    bld.begin_stage("mask");
    for (std::size_t c = 0; c < N; ++c)
        for (std::size_t b = 0; b < d; ++b) bld.toffoli(eq[c * d + b], x[c * d + b], masked[c * d + b]);
    bld.end_stage();
    bld.begin_stage("fold");
    for (std::size_t s = 1; s < N; s *= 2) {
        for (std::size_t c = 0; c + s < N; c += 2 * s)
            for (std::size_t b = 0; b < d; ++b) bld.cnot(masked[(c + s) * d + b], masked[c * d + b]);
    }
    bld.end_stage();
    auto compute = bld.end_capture();

    bld.begin_stage("load");
    for (std::size_t b = 0; b < d; ++b) bld.cnot(masked[b], y[b]);
    bld.end_stage();

    bld.begin_stage("unload");
    bld.add_inverse(compute);
    bld.end_stage();
    return std::move(bld).build();
}

/// U_(1,N) realized as U_(N,N) with one live query (query 0) and the other
/// N-1 queries pinned to index 0; their garbage copies of x_0 are cleared
/// with CNOTs. Same register names as build_single_lookup.
inline ReversibleCircuit build_single_lookup_via_parallel(std::size_t N, std::size_t d, const ComparatorNetwork &net) {
    auto par = build_parallel_lookup(N, d, net);
    const std::size_t A = ceil_log2(N);
    CircuitBuilder bld;
    Register j = bld.add_register("j", A, RegisterKind::input);
    Register y = bld.add_register("y", d, RegisterKind::inout);
    Register x = bld.add_register("x", N * d, RegisterKind::input);
    Register dead_j = bld.add_register("dead_j", (N - 1) * A, RegisterKind::ancilla);
    Register dead_y = bld.add_register("dead_y", (N - 1) * d, RegisterKind::ancilla);
    Register rest = bld.add_register("lookup_ancilla", par.width() - N * (A + 2 * d), RegisterKind::ancilla);
    auto shell = std::move(bld).build();

    std::vector<Bit> map(par.width());
    const auto &pj = par.reg("j");
    const auto &py = par.reg("y");
    const auto &px = par.reg("x");
    for (std::size_t b = 0; b < A; ++b) map[pj[b]] = j[b];
    for (std::size_t b = 0; b < (N - 1) * A; ++b) map[pj[A + b]] = dead_j[b];
    for (std::size_t b = 0; b < d; ++b) map[py[b]] = y[b];
    for (std::size_t b = 0; b < (N - 1) * d; ++b) map[py[d + b]] = dead_y[b];
    for (std::size_t b = 0; b < N * d; ++b) map[px[b]] = x[b];
    std::size_t next = 0;
    for (const auto &r : par.registers()) {
        if (r.name == "j" || r.name == "y" || r.name == "x") continue;
        for (std::size_t i = 0; i < r.size; ++i) map[r[i]] = rest[next++];
    }
    auto composed = compose(shell, par, map);

    CircuitBuilder tail;
    for (const auto &r : composed.registers()) tail.add_register(r.name, r.size, r.kind);
    tail.begin_stage("cleanup");
    for (std::size_t q = 0; q + 1 < N; ++q)
        for (std::size_t b = 0; b < d; ++b) tail.cnot(x[b], dead_y[q * d + b]);
    tail.end_stage();
    return compose(composed, std::move(tail).build());
}

/// Reference gather: y'_i = y_i XOR x[j_i].
inline std::vector<std::uint64_t> gather_oracle(std::span<const std::size_t> j, std::span<const std::uint64_t> y,
                                                std::span<const std::uint64_t> x) {
    if (j.size() != y.size()) fail("gather_oracle: ", j.size(), " indices but ", y.size(), " targets");
    std::vector<std::uint64_t> out(y.begin(), y.end());
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (j[i] >= x.size()) fail("gather_oracle: index ", j[i], " out of range for ", x.size(), " cells");
        out[i] ^= x[j[i]];
    }
    return out;
}

/// Index patterns that stress the cascade.
enum class QueryPattern { all_same, identity, two_hot, random };

inline std::vector<std::size_t> query_pattern(QueryPattern p, std::size_t N, std::uint64_t salt = 0) {
    std::vector<std::size_t> j(N);
    for (std::size_t i = 0; i < N; ++i) {
        switch (p) {
            case QueryPattern::all_same: j[i] = salt % N; break;
            case QueryPattern::identity: j[i] = i; break;
            case QueryPattern::two_hot: j[i] = (i % 2 == 0) ? 0 : N - 1; break;
            case QueryPattern::random: {
                std::uint64_t z = salt + 0x9e3779b97f4a7c15ULL * (i + 1);
                z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
                z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
                j[i] = (z ^ (z >> 31)) % N;
                break;
            }
        }
    }
    return j;
}

}  // namespace qroute
