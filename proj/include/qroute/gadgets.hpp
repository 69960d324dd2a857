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

#include <cstddef>
#include <span>
#include <vector>

#include "qroute/common.hpp"
#include "qroute/revcirc.hpp"

// Small reversible building blocks shared by the sort, lookup and oracle
// constructions. Every gadget leaves its scratch bits as it found them.

namespace qroute::gadgets {

struct Literal {
    Bit bit = 0;
    bool negated = false;
};

inline std::size_t and_scratch_needed(std::size_t literals) { return literals > 2 ? literals - 2 : 0; }

/// target ^= AND of literals, computed with a balanced Toffoli tree of depth
/// ceil(log2 m) and uncomputed afterwards. Needs m-2 clean scratch bits.
/// Negated literal bits are flipped around the tree.
inline void multi_and(CircuitBuilder &b, std::span<const Literal> lits, Bit target, std::span<const Bit> scratch) {
    const std::size_t m = lits.size();
    if (scratch.size() < and_scratch_needed(m)) fail("multi_and needs ", and_scratch_needed(m), " scratch bits");
    for (const auto &l : lits) {
        if (l.negated) b.x(l.bit);
    }
    if (m == 0) {
        b.x(target);
    } else if (m == 1) {
        b.cnot(lits[0].bit, target);
    } else if (m == 2) {
        b.toffoli(lits[0].bit, lits[1].bit, target);
    } else {
        std::vector<Gate> compute;
        std::vector<Bit> level;
        for (const auto &l : lits) level.push_back(l.bit);
        std::size_t next = 0;
        while (level.size() > 2) {
            std::vector<Bit> up;
            for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
                Bit s = scratch[next++];
                compute.push_back({GateKind::TOFFOLI, {level[i], level[i + 1], s}});
                up.push_back(s);
            }
            if (level.size() % 2 == 1) up.push_back(level.back());
            level = std::move(up);
        }
        b.add_all(compute);
        b.toffoli(level[0], level[1], target);
        b.add_inverse(compute);
    }
    for (const auto &l : lits) {
        if (l.negated) b.x(l.bit);
    }
}

/// Copies `src` into every bit of `copies` (assumed zero) with a CNOT doubling
/// tree; returns the gates so the caller can undo them.
inline std::vector<Gate> fanout(CircuitBuilder &b, Bit src, std::span<const Bit> copies) {
    std::vector<Gate> gates;
    std::vector<Bit> have{src};
    std::size_t next = 0;
    while (next < copies.size()) {
        const std::size_t holders = have.size();
        for (std::size_t i = 0; i < holders && next < copies.size(); ++i) {
            Gate g{GateKind::CNOT, {have[i], copies[next], 0}};
            gates.push_back(g);
            b.add(g);
            have.push_back(copies[next++]);
        }
    }
    return gates;
}

inline std::size_t greater_scratch_needed(std::size_t key_bits) { return key_bits; }

/// out ^= [a > b] for unsigned keys given MSB first. Ripple scan with a
/// running "prefix equal" chain; b is XORed with a in place and restored.
/// Gate-depth O(k). Needs k scratch bits.
inline void compare_greater(CircuitBuilder &bld, std::span<const Bit> a, std::span<const Bit> b, Bit out,
                            std::span<const Bit> scratch) {
    const std::size_t k = a.size();
    if (b.size() != k) fail("compare_greater: key widths differ");
    if (k == 0) return;
    if (scratch.size() < k) fail("compare_greater needs ", k, " scratch bits");
    bld.begin_capture();
    for (std::size_t i = 0; i < k; ++i) bld.cnot(a[i], b[i]);  // b_i := a_i ^ b_i
    // eq_i = [a_0..a_i == b_0..b_i]
    bld.cnot(b[0], scratch[0]);
    bld.x(scratch[0]);
    for (std::size_t i = 1; i < k; ++i) {
        bld.x(b[i]);
        bld.toffoli(scratch[i - 1], b[i], scratch[i]);
        bld.x(b[i]);
    }
    std::vector<Gate> prep = bld.end_capture();
    // first differing bit at i with a_i = 1 means a > b
    bld.toffoli(b[0], a[0], out);
    for (std::size_t i = 1; i < k; ++i) {
        // eq_{i-1} ^ eq_i == eq_{i-1} & (a_i != b_i)
        bld.cnot(scratch[i - 1], scratch[i]);
        bld.toffoli(scratch[i], a[i], out);
        bld.cnot(scratch[i - 1], scratch[i]);
    }
    bld.add_inverse(prep);
}

/// Swaps the bit lists `a` and `b` when `control` is set. With fanout scratch
/// (|a|-1 bits) the control is copied by a CNOT tree so all Fredkins run in
/// one timeslice; otherwise they run serially on the shared control.
inline void controlled_swap(CircuitBuilder &bld, Bit control, std::span<const Bit> a, std::span<const Bit> b,
                            std::span<const Bit> fanout_scratch, bool use_fanout) {
    if (a.size() != b.size()) fail("controlled_swap: widths differ");
    if (a.empty()) return;
    if (!use_fanout || a.size() == 1) {
        for (std::size_t i = 0; i < a.size(); ++i) bld.fredkin(control, a[i], b[i]);
        return;
    }
    if (fanout_scratch.size() < a.size() - 1) fail("controlled_swap needs ", a.size() - 1, " fanout bits");
    auto copies = fanout_scratch.first(a.size() - 1);
    auto gates = fanout(bld, control, copies);
    bld.fredkin(control, a[0], b[0]);
    for (std::size_t i = 1; i < a.size(); ++i) bld.fredkin(copies[i - 1], a[i], b[i]);
    bld.add_inverse(gates);
}

/// target_i ^= src_i & control for every i, fanning the control out first
/// when scratch allows.
inline void controlled_copy(CircuitBuilder &bld, Bit control, std::span<const Bit> src, std::span<const Bit> dst,
                            std::span<const Bit> fanout_scratch, bool use_fanout) {
    if (src.size() != dst.size()) fail("controlled_copy: widths differ");
    if (src.empty()) return;
    if (!use_fanout || src.size() == 1) {
        for (std::size_t i = 0; i < src.size(); ++i) bld.toffoli(control, src[i], dst[i]);
        return;
    }
    if (fanout_scratch.size() < src.size() - 1) fail("controlled_copy needs ", src.size() - 1, " fanout bits");
    auto copies = fanout_scratch.first(src.size() - 1);
    auto gates = fanout(bld, control, copies);
    bld.toffoli(control, src[0], dst[0]);
    for (std::size_t i = 1; i < src.size(); ++i) bld.toffoli(copies[i - 1], src[i], dst[i]);
    bld.add_inverse(gates);
}

inline std::vector<Bit> bits_of(const Register &r) {
    std::vector<Bit> out(r.size);
    for (std::size_t i = 0; i < r.size; ++i) out[i] = r[i];
    return out;
}

/// Register bits most-significant first (registers store LSB at offset).
inline std::vector<Bit> bits_msb_first(const Register &r) {
    std::vector<Bit> out(r.size);
    for (std::size_t i = 0; i < r.size; ++i) out[i] = r[r.size - 1 - i];
    return out;
}

/// X on each bit of r where `value` has a one: XORs a classical constant.
inline void xor_constant(CircuitBuilder &bld, const Register &r, std::uint64_t value) {
    for (std::size_t i = 0; i < r.size; ++i) {
        if ((value >> i) & 1) bld.x(r[i]);
    }
}

}  // namespace qroute::gadgets
