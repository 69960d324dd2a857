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
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qroute/reversible_sort.hpp"
#include "qroute/revcirc.hpp"
#include "qroute/sortnet.hpp"
#include "qroute/topology.hpp"

namespace qroute {

/// Bit offsets of the 2N packets of a data mover. Packet p holds an address
/// (LSB first), a flag (question 0 < answer 1) and a data field.
struct PacketLayout {
    std::size_t packets = 0;
    std::size_t address_bits = 0;
    std::size_t data_bits = 0;
    Register reg;  // all packets, packet p at [p*packet_bits(), ...)

    std::size_t packet_bits() const { return address_bits + 1 + data_bits; }
    std::size_t key_bits() const { return address_bits + 1; }
    Bit addr(std::size_t p, std::size_t b) const { return reg[p * packet_bits() + b]; }
    Bit flag(std::size_t p) const { return reg[p * packet_bits() + address_bits]; }
    Bit data(std::size_t p, std::size_t b) const { return reg[p * packet_bits() + address_bits + 1 + b]; }

    /// Sort view: key is (address MSB first, flag), payload is the data.
    ElementBits element(std::size_t p) const {
        ElementBits e;
        for (std::size_t b = address_bits; b-- > 0;) e.key.push_back(addr(p, b));
        e.key.push_back(flag(p));
        for (std::size_t b = 0; b < data_bits; ++b) e.payload.push_back(data(p, b));
        return e;
    }
};

/// A reversible circuit together with the network wire that hosts each bit;
/// the hosting node of bit b is wire_to_node[bit_wire[b]].
struct HostedCircuit {
    ReversibleCircuit circuit;
    std::vector<std::size_t> bit_wire;
};

/// True iff every gate touches bits on pairwise equal or adjacent nodes.
inline bool gates_local(const ReversibleCircuit &c, std::span<const std::size_t> bit_node, const Topology &topo) {
    if (bit_node.size() != c.width()) fail("bit_node has ", bit_node.size(), " entries for width ", c.width());
    for (const auto &slice : c.slices()) {
        for (const auto &g : slice) {
            auto sup = g.support();
            for (std::size_t i = 0; i < sup.size(); ++i) {
                for (std::size_t j = 0; j < i; ++j) {
                    const std::size_t u = bit_node[sup[i]], v = bit_node[sup[j]];
                    if (u != v && !topo.adjacent(u, v)) return false;
                }
            }
        }
    }
    return true;
}

/// Maps bit -> node through a wire placement.
inline std::vector<std::size_t> bit_nodes(const HostedCircuit &h, std::span<const std::size_t> wire_to_node) {
    std::vector<std::size_t> out(h.bit_wire.size());
    for (std::size_t b = 0; b < out.size(); ++b) out[b] = wire_to_node[h.bit_wire[b]];
    return out;
}

namespace detail {

inline void check_permutation(std::span<const std::size_t> perm) {
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t v : perm) {
        if (v >= perm.size()) fail("permutation entry ", v, " out of range for size ", perm.size());
        if (seen[v]) fail("permutation repeats destination ", v);
        seen[v] = true;
    }
}

inline void set_constant(CircuitBuilder &bld, std::span<const Bit> bits, std::size_t value) {
    for (std::size_t b = 0; b < bits.size(); ++b) {
        if ((value >> b) & 1) bld.x(bits[b]);
    }
}

inline void build_data_mover_impl(CircuitBuilder &bld, std::vector<std::size_t> &wire, std::size_t N, std::size_t d,
                                  const ComparatorNetwork &net, std::optional<std::span<const std::size_t>> perm) {
    if (N == 0 || d == 0) fail("data mover needs N >= 1 and d >= 1");
    if (net.wire_count() != 2 * N) fail("data mover over N=", N, " needs a ", 2 * N, "-wire network, got ", net.wire_count());
    const std::size_t A = ceil_log2(N);
    const SortOptions opt{.fanout_swap = true, .scratch_per_wire = true};

    auto host = [&](const Register &r, auto &&wire_of) {
        wire.resize(bld.width());
        for (std::size_t i = 0; i < r.size; ++i) wire[r[i]] = wire_of(i);
    };

    Register x = bld.add_register("x", N * d, RegisterKind::inout);
    host(x, [&](std::size_t i) { return 2 * (i / d); });
    std::optional<Register> jreg;
    if (!perm && A > 0) {
        jreg = bld.add_register("j", N * A, RegisterKind::input);
        host(*jreg, [&](std::size_t i) { return 2 * (i / A); });
    }
    PacketLayout pk{2 * N, A, d, {}};
    pk.reg = bld.add_register("packets", 2 * N * pk.packet_bits(), RegisterKind::ancilla);
    host(pk.reg, [&](std::size_t i) { return i / pk.packet_bits(); });
    Register sigma = bld.add_register("sigma", net.comparator_count(), RegisterKind::ancilla);
    {
        std::size_t idx = 0;
        wire.resize(bld.width());
        for (const auto &layer : net.layers())
            for (const auto &c : layer) wire[sigma[idx++]] = c.lo;
    }
    const std::size_t slot = sort_scratch_per_slot(pk.key_bits(), pk.packet_bits(), opt);
    Register scratch = bld.add_register("scratch", slot * sort_scratch_slots(net, opt), RegisterKind::ancilla);
    host(scratch, [&](std::size_t i) { return i / slot; });

    auto addr_bits = [&](std::size_t p) {
        std::vector<Bit> v;
        for (std::size_t b = 0; b < A; ++b) v.push_back(pk.addr(p, b));
        return v;
    };

    // F: answer packet 2i = (i, a, x_i), question packet 2i+1 = (j_i, q, 0).
    auto format = [&] {
        for (std::size_t i = 0; i < N; ++i) {
            set_constant(bld, addr_bits(2 * i), i);
            bld.x(pk.flag(2 * i));
            for (std::size_t b = 0; b < d; ++b) bld.swap(x[i * d + b], pk.data(2 * i, b));
            if (perm) {
                set_constant(bld, addr_bits(2 * i + 1), (*perm)[i]);
            } else {
                for (std::size_t b = 0; b < A; ++b) bld.cnot((*jreg)[i * A + b], pk.addr(2 * i + 1, b));
            }
        }
    };
    bld.begin_stage("format");
    format();
    bld.end_stage();

    std::vector<ElementBits> elems(2 * N);
    for (std::size_t p = 0; p < 2 * N; ++p) elems[p] = pk.element(p);
    auto sorted = emit_sort(bld, net, elems, sigma, scratch, slot, "sort", opt);

    // P: sorted order pairs the question for address m with its answer.
    bld.begin_stage("swap");
    for (std::size_t m = 0; m < N; ++m) {
        for (std::size_t b = 0; b < d; ++b) bld.swap(pk.data(2 * m, b), pk.data(2 * m + 1, b));
    }
    bld.end_stage();

    emit_unsort(bld, sorted, "unsort");

    // F-hat: deliver question data to x_i and clear the constant fields.
    bld.begin_stage("unformat");
    for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t b = 0; b < d; ++b) bld.swap(pk.data(2 * i + 1, b), x[i * d + b]);
        set_constant(bld, addr_bits(2 * i), i);
        bld.x(pk.flag(2 * i));
        if (perm) {
            set_constant(bld, addr_bits(2 * i + 1), (*perm)[i]);
        } else {
            for (std::size_t b = 0; b < A; ++b) bld.cnot((*jreg)[i * A + b], pk.addr(2 * i + 1, b));
        }
    }
    bld.end_stage();
}

}  // namespace detail

/// V_N with a classical destination list: output register i receives
/// x[perm[i]] (0-based). Registers "x" (N*d, inout), "packets", "sigma",
/// "scratch" (all clean ancillas).
inline HostedCircuit build_data_mover(std::size_t N, std::size_t d, const ComparatorNetwork &net,
                                      std::span<const std::size_t> perm) {
    if (perm.size() != N) fail("permutation has ", perm.size(), " entries, expected ", N);
    detail::check_permutation(perm);
    CircuitBuilder bld;
    HostedCircuit out;
    detail::build_data_mover_impl(bld, out.bit_wire, N, d, net, perm);
    out.circuit = std::move(bld).build();
    return out;
}

/// V_N with destinations as circuit input: register "j" holds N indices of
/// ceil(log2 N) bits (index i at bits [i*A, (i+1)*A)). Behaviour is defined
/// only when the indices form a permutation.
inline HostedCircuit build_data_mover(std::size_t N, std::size_t d, const ComparatorNetwork &net) {
    CircuitBuilder bld;
    HostedCircuit out;
    detail::build_data_mover_impl(bld, out.bit_wire, N, d, net, std::nullopt);
    out.circuit = std::move(bld).build();
    return out;
}

/// Moves of whole registers precomputed for one known permutation.
struct SwapSchedule {
    std::size_t registers = 0;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> layers;

    std::size_t swap_count() const {
        std::size_t n = 0;
        for (const auto &l : layers) n += l.size();
        return n;
    }
};

/// Routes position i <- position perm[i] through `net`: every comparator of
/// the sort on target positions becomes a SWAP or nothing. Empty layers are
/// dropped.
inline SwapSchedule compile_fixed_permutation(std::span<const std::size_t> perm, const ComparatorNetwork &net) {
    detail::check_permutation(perm);
    if (net.wire_count() != perm.size()) {
        fail("permutation of ", perm.size(), " registers with a ", net.wire_count(), "-wire network");
    }
    // element now at position p must end at the i with perm[i] == p
    std::vector<std::size_t> key(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) key[perm[i]] = i;
    SwapSchedule s;
    s.registers = perm.size();
    // networks with descending comparators shuffle even sorted input
    if (std::is_sorted(perm.begin(), perm.end())) return s;
    for (const auto &layer : net.layers()) {
        std::vector<std::pair<std::size_t, std::size_t>> swaps;
        for (const auto &c : layer) {
            if (key[c.hi] < key[c.lo]) {
                std::swap(key[c.lo], key[c.hi]);
                swaps.emplace_back(c.lo, c.hi);
            }
        }
        if (!swaps.empty()) s.layers.push_back(std::move(swaps));
    }
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (key[i] != i) fail("network did not sort the permutation; it is not a sorting network");
    }
    return s;
}

template <typename T>
void apply_schedule(const SwapSchedule &s, std::span<T> values) {
    if (values.size() != s.registers) fail("schedule over ", s.registers, " registers applied to ", values.size());
    for (const auto &layer : s.layers)
        for (auto [a, b] : layer) std::swap(values[a], values[b]);
}

/// The schedule as a circuit over registers of d bits (register r at
/// [r*d, (r+1)*d)), one stage per layer.
inline ReversibleCircuit schedule_circuit(const SwapSchedule &s, std::size_t d) {
    CircuitBuilder bld;
    Register r = bld.add_register("x", s.registers * d, RegisterKind::inout);
    for (const auto &layer : s.layers) {
        bld.begin_stage("move");
        for (auto [a, b] : layer)
            for (std::size_t i = 0; i < d; ++i) bld.swap(r[a * d + i], r[b * d + i]);
        bld.end_stage();
    }
    return std::move(bld).build();
}

/// In-memory reference: out[i] = values[perm[i]].
template <typename T>
std::vector<T> permute_oracle(std::span<const T> values, std::span<const std::size_t> perm) {
    std::vector<T> out(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) out[i] = values[perm[i]];
    return out;
}

}  // namespace qroute
