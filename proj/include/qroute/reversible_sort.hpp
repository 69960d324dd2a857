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
#include <span>
#include <string>
#include <vector>

#include "qroute/gadgets.hpp"
#include "qroute/revcirc.hpp"
#include "qroute/sortnet.hpp"

namespace qroute {

struct SortOptions {
    /// Fan the sorting bit out before the controlled swap (log-depth swap
    /// instead of a serial Fredkin chain).
    bool fanout_swap = true;
    /// Give every wire its own scratch slot (used by the comparator whose
    /// `lo` is that wire) instead of sharing slots across a layer. Keeps all
    /// scratch on the node of its comparator.
    bool scratch_per_wire = false;
};

/// Bits of one sortable element. `key` is most-significant first and is the
/// only part compared; `payload` travels along.
struct ElementBits {
    std::vector<Bit> key;
    std::vector<Bit> payload;

    std::size_t width() const { return key.size() + payload.size(); }
};

/// Gates of every comparator layer, kept so the sort can be run backwards.
struct SortEmission {
    std::vector<std::vector<Gate>> layers;
};

/// Scratch bits one comparator needs (shared between the comparison and the
/// fan-out, which never overlap in time).
inline std::size_t sort_scratch_per_slot(std::size_t key_bits, std::size_t element_bits, const SortOptions &opt) {
    std::size_t need = gadgets::greater_scratch_needed(key_bits);
    if (opt.fanout_swap && element_bits > 1) need = std::max(need, element_bits - 1);
    return need;
}

/// Scratch slots needed: one per comparator of the widest layer, or one per
/// wire with `scratch_per_wire`.
inline std::size_t sort_scratch_slots(const ComparatorNetwork &net, const SortOptions &opt = {}) {
    if (opt.scratch_per_wire) return net.wire_count();
    std::size_t widest = 0;
    for (const auto &layer : net.layers()) widest = std::max(widest, layer.size());
    return widest;
}

/// Emits the reversible sort: per comparator, compute [key(lo) > key(hi)] into
/// a fresh sorting bit of `sigma`, then swap the whole elements on it. Each
/// comparator layer is one stage with `label`.
inline SortEmission emit_sort(CircuitBuilder &bld, const ComparatorNetwork &net, std::span<const ElementBits> elems,
                              const Register &sigma, const Register &scratch, std::size_t slot_size,
                              const std::string &label, const SortOptions &opt = {}) {
    if (elems.size() != net.wire_count()) {
        fail("sort over ", elems.size(), " elements with a ", net.wire_count(), "-wire network");
    }
    if (sigma.size < net.comparator_count()) fail("sorting-bit register too small");
    if (scratch.size < slot_size * sort_scratch_slots(net, opt)) fail("sort scratch register too small");
    SortEmission out;
    std::size_t bit_index = 0;
    std::vector<Bit> a_bits, b_bits, scratch_bits;
    for (const auto &layer : net.layers()) {
        bld.begin_stage(label);
        bld.begin_capture();
        for (std::size_t idx = 0; idx < layer.size(); ++idx) {
            const auto &c = layer[idx];
            const std::size_t slot = opt.scratch_per_wire ? c.lo : idx;
            const ElementBits &lo = elems[c.lo];
            const ElementBits &hi = elems[c.hi];
            const Bit s = sigma[bit_index++];
            scratch_bits.clear();
            for (std::size_t i = 0; i < slot_size; ++i) scratch_bits.push_back(scratch[slot * slot_size + i]);
            gadgets::compare_greater(bld, lo.key, hi.key, s, scratch_bits);
            a_bits = lo.key;
            a_bits.insert(a_bits.end(), lo.payload.begin(), lo.payload.end());
            b_bits = hi.key;
            b_bits.insert(b_bits.end(), hi.payload.begin(), hi.payload.end());
            gadgets::controlled_swap(bld, s, a_bits, b_bits, scratch_bits, opt.fanout_swap);
        }
        out.layers.push_back(bld.end_capture());
        bld.end_stage();
    }
    return out;
}

/// Runs a previously emitted sort backwards, one stage per layer.
inline void emit_unsort(CircuitBuilder &bld, const SortEmission &sort, const std::string &label) {
    for (auto it = sort.layers.rbegin(); it != sort.layers.rend(); ++it) {
        bld.begin_stage(label);
        bld.add_inverse(*it);
        bld.end_stage();
    }
}

/// Standalone reversible sort of T = net.wire_count() elements of
/// key_bits + payload_bits bits. Registers: "elements" (element e occupies
/// bits [e*w, (e+1)*w), key in the low key_bits as an unsigned integer,
/// payload above it), "sigma" (one sorting bit per comparator, network
/// order) and "scratch".
inline ReversibleCircuit compile_reversible_sort(const ComparatorNetwork &net, std::size_t key_bits,
                                                 std::size_t payload_bits, const SortOptions &opt = {}) {
    if (key_bits == 0) fail("compile_reversible_sort needs key_bits >= 1");
    const std::size_t T = net.wire_count();
    const std::size_t w = key_bits + payload_bits;
    CircuitBuilder bld;
    Register elements = bld.add_register("elements", T * w, RegisterKind::inout);
    Register sigma = bld.add_register("sigma", net.comparator_count(), RegisterKind::record);
    const std::size_t slot = sort_scratch_per_slot(key_bits, w, opt);
    Register scratch = bld.add_register("scratch", slot * sort_scratch_slots(net, opt), RegisterKind::ancilla);
    std::vector<ElementBits> elems(T);
    for (std::size_t e = 0; e < T; ++e) {
        Register el = slice_register(elements, e * w, w);
        for (std::size_t i = 0; i < key_bits; ++i) elems[e].key.push_back(el[key_bits - 1 - i]);
        for (std::size_t i = 0; i < payload_bits; ++i) elems[e].payload.push_back(el[key_bits + i]);
    }
    emit_sort(bld, net, elems, sigma, scratch, slot, "sort", opt);
    return std::move(bld).build();
}

}  // namespace qroute
