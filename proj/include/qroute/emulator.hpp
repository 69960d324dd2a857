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
#include <cmath>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "qroute/datamove.hpp"
#include "qroute/qsim.hpp"
#include "qroute/sortnet.hpp"
#include "qroute/topology.hpp"

namespace qroute {

/// Logical circuits use the quantum gate set restricted to one and two
/// qubits, with arbitrary pairs.
using LogicalCircuit = QuantumCircuit;

inline bool emulatable(QGateKind k) {
    return k != QGateKind::TOFFOLI && k != QGateKind::FREDKIN && k != QGateKind::PHASE_ORACLE;
}

/// Physical slots: every node owns two wires of the packet network; the
/// lower-numbered one is the home of the logical qubit with that node's
/// index, the other is a guest slot that holds |0> between gates.
struct SlotMap {
    std::vector<std::size_t> home;   // node -> wire
    std::vector<std::size_t> guest;  // node -> wire

    explicit SlotMap(std::span<const std::size_t> wire_to_node) {
        const std::size_t N = wire_to_node.size() / 2;
        home.assign(N, SIZE_MAX);
        guest.assign(N, SIZE_MAX);
        for (std::size_t w = 0; w < wire_to_node.size(); ++w) {
            const std::size_t v = wire_to_node[w];
            if (v >= N) fail("wire ", w, " placed on node ", v, " of ", N);
            if (home[v] == SIZE_MAX) {
                home[v] = w;
            } else if (guest[v] == SIZE_MAX) {
                guest[v] = w;
            } else {
                fail("node ", v, " hosts more than two wires");
            }
        }
        for (std::size_t v = 0; v < N; ++v) {
            if (guest[v] == SIZE_MAX) fail("node ", v, " hosts fewer than two wires");
        }
    }

    /// Default block placement: node v owns wires 2v and 2v+1.
    static SlotMap blocks(std::size_t nodes) { return SlotMap(block_assignment(2 * nodes, 2)); }
};

struct GateAssignment {
    std::size_t gate = 0;       // index in the timeslice
    std::size_t processor = 0;  // node that executes it
    bool moved = false;         // partner qubit brought to the guest slot
};

struct SliceAssignment {
    std::vector<GateAssignment> gates;
    /// Slot permutation over 2N wires: slot i receives the content of slot
    /// forward[i].
    std::vector<std::size_t> forward;
};

/// Assigns every gate to the home of its first qubit. A two-qubit gate whose
/// qubits sit on non-adjacent nodes (or on every pair when `topo` is null)
/// pulls its second qubit into the processor's guest slot, trading places
/// with the empty guest register.
inline SliceAssignment assign_gates(std::span<const QGate> slice, const SlotMap &slots, const Topology *topo = nullptr) {
    const std::size_t nodes = slots.home.size();
    SliceAssignment out;
    out.forward.resize(2 * nodes);
    std::iota(out.forward.begin(), out.forward.end(), 0);
    std::vector<bool> busy(nodes, false);
    for (std::size_t g = 0; g < slice.size(); ++g) {
        const auto &gate = slice[g];
        if (!emulatable(gate.kind)) fail("gate ", qgate_name(gate.kind), " is not supported by the emulator");
        for (Qubit q : gate.qubits) {
            if (q >= nodes) fail("qubit ", q, " has no home among ", nodes, " nodes");
            if (busy[q]) fail("timeslice uses qubit ", q, " twice");
            busy[q] = true;
        }
        GateAssignment a{g, gate.qubits[0], false};
        if (gate.qubits.size() == 2) {
            const std::size_t p = gate.qubits[0], b = gate.qubits[1];
            a.moved = topo == nullptr || !topo->adjacent(p, b);
            if (a.moved) {
                out.forward[slots.guest[p]] = slots.home[b];
                out.forward[slots.home[b]] = slots.guest[p];
            }
        }
        out.gates.push_back(a);
    }
    return out;
}

inline SliceAssignment assign_gates(std::span<const QGate> slice, std::size_t nodes, const Topology *topo = nullptr) {
    return assign_gates(slice, SlotMap::blocks(nodes), topo);
}

struct SlicePlan {
    SliceAssignment assignment;
    SwapSchedule schedule;  // forward movement; run backwards to return
    std::size_t stage_depth = 0;
};

struct EmulationPlan {
    std::vector<std::size_t> home;  // logical qubit -> node
    std::vector<SlicePlan> slices;
};

struct EmulationResult {
    EmulationPlan plan;
    QuantumCircuit circuit;                 // over 2N physical wires
    std::vector<std::size_t> wire_to_node;  // physical wire -> node
    std::size_t logical_depth = 0;
    std::size_t stage_depth = 0;            // sum over slices of movement layers + 1
    std::size_t max_slice_stage_depth = 0;

    double overhead() const { return logical_depth ? double(stage_depth) / double(logical_depth) : 0.0; }
};

struct EmulateOptions {
    /// Gates on adjacent nodes run across the edge without moving.
    bool skip_adjacent = true;
};

/// Rewrites `c` into a circuit whose every two-qubit gate acts on wires of
/// equal or adjacent nodes. Per timeslice: forward SWAP schedule, the gate
/// layer, the schedule reversed.
inline EmulationResult emulate(const LogicalCircuit &c, const Topology &topo, const PacketNetwork &pn,
                               const EmulateOptions &opt = {}) {
    const std::size_t N = topo.node_count();
    if (c.width > N) fail("logical width ", c.width, " exceeds ", N, " nodes");
    if (pn.net.wire_count() != 2 * N) fail("packet network has ", pn.net.wire_count(), " wires, need ", 2 * N);
    c.validate();
    const SlotMap slots(pn.wire_to_node);
    EmulationResult r;
    r.wire_to_node = pn.wire_to_node;
    r.plan.home.resize(c.width);
    std::iota(r.plan.home.begin(), r.plan.home.end(), 0);
    r.circuit.width = 2 * N;
    r.logical_depth = c.depth();
    for (const auto &slice : c.slices) {
        SlicePlan sp;
        sp.assignment = assign_gates(slice, slots, opt.skip_adjacent ? &topo : nullptr);
        sp.schedule = compile_fixed_permutation(sp.assignment.forward, pn.net);
        auto emit_swaps = [&](const std::vector<std::pair<std::size_t, std::size_t>> &layer) {
            std::vector<QGate> out;
            for (auto [a, b] : layer) out.push_back(qgate(QGateKind::SWAP, {Qubit(a), Qubit(b)}));
            r.circuit.slices.push_back(std::move(out));
        };
        for (const auto &layer : sp.schedule.layers) emit_swaps(layer);
        std::vector<QGate> local;
        for (const auto &ga : sp.assignment.gates) {
            const QGate &g = slice[ga.gate];
            if (g.qubits.size() == 1) {
                local.push_back(qgate(g.kind, {Qubit(slots.home[g.qubits[0]])}));
            } else {
                const Qubit a = Qubit(slots.home[g.qubits[0]]);
                const Qubit b = Qubit(ga.moved ? slots.guest[ga.processor] : slots.home[g.qubits[1]]);
                local.push_back(qgate(g.kind, {a, b}));
            }
        }
        r.circuit.slices.push_back(std::move(local));
        for (auto it = sp.schedule.layers.rbegin(); it != sp.schedule.layers.rend(); ++it) emit_swaps(*it);
        sp.stage_depth = 2 * sp.schedule.layers.size() + 1;
        r.stage_depth += sp.stage_depth;
        r.max_slice_stage_depth = std::max(r.max_slice_stage_depth, sp.stage_depth);
        r.plan.slices.push_back(std::move(sp));
    }
    return r;
}

inline EmulationResult emulate(const LogicalCircuit &c, const Topology &topo, const EmulateOptions &opt = {}) {
    return emulate(c, topo, packet_network_for(topo), opt);
}

/// Every multi-qubit gate of the emulated circuit acts within a node or
/// across an edge.
inline bool emulation_local(const EmulationResult &r, const Topology &topo) {
    for (const auto &slice : r.circuit.slices) {
        for (const auto &g : slice) {
            for (std::size_t i = 0; i < g.qubits.size(); ++i)
                for (std::size_t j = 0; j < i; ++j) {
                    const std::size_t u = r.wire_to_node[g.qubits[i]], v = r.wire_to_node[g.qubits[j]];
                    if (u != v && !topo.adjacent(u, v)) return false;
                }
        }
    }
    return true;
}

/// No processor executes more than one logical gate per timeslice.
inline bool one_gate_per_processor(const EmulationPlan &plan) {
    for (const auto &sp : plan.slices) {
        std::vector<std::size_t> seen;
        for (const auto &g : sp.assignment.gates) seen.push_back(g.processor);
        std::sort(seen.begin(), seen.end());
        if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) return false;
    }
    return true;
}

/// Checks the emulated circuit against the logical one, logical qubit q on
/// the home wire of node q and every other wire starting and ending in |0>.
inline bool emulation_equivalent(const LogicalCircuit &c, const EmulationResult &r, double tol = 1e-10,
                                 std::size_t random_states = 4, std::uint64_t seed = 1) {
    const SlotMap slots(r.wire_to_node);
    std::vector<Qubit> map(c.width);
    for (std::size_t q = 0; q < c.width; ++q) map[q] = Qubit(slots.home[q]);
    return equivalent(c, r.circuit, map, tol, random_states, seed, /*exhaustive_limit=*/0);
}

/// Random circuit over {H, T, CNOT} with `depth` timeslices.
inline LogicalCircuit random_logical_circuit(std::size_t width, std::size_t depth, std::mt19937_64 &rng) {
    LogicalCircuit c{width, {}};
    std::uniform_int_distribution<int> pick(0, 2);
    for (std::size_t t = 0; t < depth; ++t) {
        std::vector<Qubit> order(width);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<QGate> slice;
        for (std::size_t i = 0; i < width;) {
            const int k = pick(rng);
            if (k == 2 && i + 1 < width) {
                slice.push_back(qgate(QGateKind::CNOT, {order[i], order[i + 1]}));
                i += 2;
            } else {
                slice.push_back(qgate(k == 0 ? QGateKind::H : QGateKind::T, {order[i]}));
                i += 1;
            }
        }
        c.slices.push_back(std::move(slice));
    }
    return c;
}

/// One timeslice of N/2 disjoint CNOTs pairing qubit i with N-1-i: the
/// longest-distance pattern on a line.
inline LogicalCircuit mirror_pairs_circuit(std::size_t N) {
    LogicalCircuit c{N, {{}}};
    for (std::size_t i = 0; i < N / 2; ++i) c.slices[0].push_back(qgate(QGateKind::CNOT, {Qubit(i), Qubit(N - 1 - i)}));
    return c;
}

/// Timeslices of random perfect matchings of CNOTs.
inline LogicalCircuit random_pairs_circuit(std::size_t N, std::size_t depth, std::mt19937_64 &rng) {
    LogicalCircuit c{N, {}};
    for (std::size_t t = 0; t < depth; ++t) {
        std::vector<Qubit> order(N);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<QGate> slice;
        for (std::size_t i = 0; i + 1 < N; i += 2) slice.push_back(qgate(QGateKind::CNOT, {order[i], order[i + 1]}));
        c.slices.push_back(std::move(slice));
    }
    return c;
}

struct OverheadRow {
    Family family = Family::custom;
    std::size_t N = 0;
    std::size_t sort_depth = 0;     // D_G: layers of the packet network
    double overhead = 0.0;          // worst per-timeslice stage-depth over the family
    double lower_reference = 0.0;   // D_G / (log2 N * log2 log2 N)
};

/// Worst per-timeslice overhead over the mirror pattern plus `random_slices`
/// random matchings.
inline OverheadRow overhead_for(const Topology &topo, std::size_t random_slices = 8, std::uint64_t seed = 1,
                                const EmulateOptions &opt = {}) {
    const std::size_t N = topo.node_count();
    auto pn = packet_network_for(topo);
    std::mt19937_64 rng(seed);
    OverheadRow row;
    row.family = topo.family();
    row.N = N;
    row.sort_depth = pn.net.depth();
    for (const auto &c : {mirror_pairs_circuit(N), random_pairs_circuit(N, random_slices, rng)}) {
        auto r = emulate(c, topo, pn, opt);
        row.overhead = std::max(row.overhead, double(r.max_slice_stage_depth));
    }
    const double lg = std::log2(double(N));
    row.lower_reference = lg > 1 ? double(row.sort_depth) / (lg * std::log2(lg)) : double(row.sort_depth);
    return row;
}

inline std::vector<OverheadRow> overhead_report(Family family, std::span<const std::size_t> sizes,
                                                std::size_t random_slices = 8, std::uint64_t seed = 1) {
    std::vector<OverheadRow> rows;
    for (std::size_t N : sizes) rows.push_back(overhead_for(build_topology(family, {.n = N}), random_slices, seed));
    return rows;
}

}  // namespace qroute
