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

// JSON forms of topologies, comparator networks, reversible circuits and
// logical quantum circuits.
//
//   topology: {"n": 8, "edges": [[0,1], ...], "family": "hypercube"}
//   network:  {"wires": 8, "layers": [[[0,1], [2,3]], ...]}
//   circuit:  {"width": 5, "gates": [{"g": "TOFFOLI", "bits": [0,1,2], "t": 0}, ...],
//              "labels": {"registers": [...], "stages": [...]}}
//
// A gate's "t" (timeslice) is optional on input; without it gates are
// packed greedily in list order.

#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qroute/common.hpp"
#include "qroute/qsim.hpp"
#include "qroute/revcirc.hpp"
#include "qroute/sortnet.hpp"
#include "qroute/topology.hpp"

namespace qroute {

using Json = nlohmann::json;

inline Json topology_to_json(const Topology &t) {
    Json j;
    j["n"] = t.node_count();
    j["family"] = std::string(family_name(t.family()));
    Json edges = Json::array();
    for (auto [u, v] : t.edges()) edges.push_back({u, v});
    j["edges"] = std::move(edges);
    if (t.family() == Family::grid2d) {
        j["rows"] = t.grid_rows();
        j["cols"] = t.grid_cols();
    }
    return j;
}

inline Topology topology_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges")) fail("topology JSON needs \"n\" and \"edges\"");
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) fail("topology edge must be a pair");
        edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    const Family fam = j.contains("family") ? parse_family(j.at("family").get<std::string>()) : Family::custom;
    return Topology(n, std::move(edges), fam, j.value("rows", std::size_t{0}), j.value("cols", std::size_t{0}));
}

inline Json network_to_json(const ComparatorNetwork &net) {
    Json layers = Json::array();
    for (const auto &layer : net.layers()) {
        Json l = Json::array();
        for (const auto &c : layer) l.push_back({c.lo, c.hi});
        layers.push_back(std::move(l));
    }
    return {{"wires", net.wire_count()}, {"layers", std::move(layers)}};
}

inline ComparatorNetwork network_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("wires") || !j.contains("layers")) fail("network JSON needs \"wires\" and \"layers\"");
    std::vector<ComparatorLayer> layers;
    for (const auto &l : j.at("layers")) {
        ComparatorLayer layer;
        for (const auto &c : l) {
            if (!c.is_array() || c.size() != 2) fail("comparator must be a pair");
            layer.push_back({c[0].get<std::size_t>(), c[1].get<std::size_t>()});
        }
        layers.push_back(std::move(layer));
    }
    return ComparatorNetwork(j.at("wires").get<std::size_t>(), std::move(layers));
}

inline Json circuit_to_json(const ReversibleCircuit &c) {
    Json gates = Json::array();
    for (std::size_t t = 0; t < c.slices().size(); ++t) {
        for (const auto &g : c.slices()[t]) {
            Json bits = Json::array();
            for (Bit b : g.support()) bits.push_back(b);
            gates.push_back({{"g", std::string(gate_name(g.kind))}, {"bits", std::move(bits)}, {"t", t}});
        }
    }
    Json regs = Json::array();
    for (const auto &r : c.registers())
        regs.push_back({{"name", r.name}, {"offset", r.offset}, {"size", r.size},
                        {"kind", std::string(register_kind_name(r.kind))}});
    Json stages = Json::array();
    for (const auto &s : c.stages())
        stages.push_back({{"label", s.label}, {"begin", s.begin}, {"end", s.end}, {"units", s.units}});
    return {{"width", c.width()}, {"gates", std::move(gates)}, {"labels", {{"registers", regs}, {"stages", stages}}}};
}

inline ReversibleCircuit circuit_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("width") || !j.contains("gates")) fail("circuit JSON needs \"width\" and \"gates\"");
    const auto width = j.at("width").get<std::size_t>();
    std::vector<Register> regs;
    std::vector<Stage> stages;
    if (j.contains("labels")) {
        const auto &labels = j.at("labels");
        for (const auto &r : labels.value("registers", Json::array()))
            regs.push_back({r.at("name").get<std::string>(), r.at("offset").get<Bit>(), r.at("size").get<std::size_t>(),
                            parse_register_kind(r.at("kind").get<std::string>())});
        for (const auto &s : labels.value("stages", Json::array()))
            stages.push_back({s.at("label").get<std::string>(), s.at("begin").get<std::size_t>(),
                              s.at("end").get<std::size_t>(), s.value("units", std::size_t{1})});
    }
    bool timed = !j.at("gates").empty();
    for (const auto &g : j.at("gates")) timed = timed && g.contains("t");
    std::vector<Timeslice> slices;
    std::vector<std::size_t> frontier(width, 0);
    for (const auto &g : j.at("gates")) {
        Gate gate;
        gate.kind = parse_gate_kind(g.at("g").get<std::string>());
        const auto &bits = g.at("bits");
        if (bits.size() != arity(gate.kind)) fail(gate_name(gate.kind), " needs ", arity(gate.kind), " bits");
        for (std::size_t i = 0; i < bits.size(); ++i) gate.bits[i] = bits[i].get<Bit>();
        std::size_t slot = 0;
        if (timed) {
            slot = g.at("t").get<std::size_t>();
        } else {
            for (Bit b : gate.support()) {
                if (b >= width) fail("gate bit ", b, " >= width ", width);
                slot = std::max(slot, frontier[b]);
            }
            for (Bit b : gate.support()) frontier[b] = slot + 1;
        }
        if (slot >= slices.size()) slices.resize(slot + 1);
        slices[slot].push_back(gate);
    }
    if (!timed) stages.clear();
    return ReversibleCircuit(width, std::move(slices), std::move(regs), std::move(stages));
}

inline Json logical_to_json(const QuantumCircuit &c) {
    Json gates = Json::array();
    for (std::size_t t = 0; t < c.slices.size(); ++t) {
        for (const auto &g : c.slices[t]) {
            if (g.kind == QGateKind::PHASE_ORACLE) fail("phase-oracle gates have no JSON form");
            gates.push_back({{"g", std::string(qgate_name(g.kind))}, {"bits", g.qubits}, {"t", t}});
        }
    }
    return {{"width", c.width}, {"gates", std::move(gates)}};
}

inline QuantumCircuit logical_from_json(const Json &j) {
    if (!j.is_object() || !j.contains("width") || !j.contains("gates")) fail("circuit JSON needs \"width\" and \"gates\"");
    QuantumCircuit c;
    c.width = j.at("width").get<std::size_t>();
    bool timed = !j.at("gates").empty();
    for (const auto &g : j.at("gates")) timed = timed && g.contains("t");
    for (const auto &g : j.at("gates")) {
        const auto kind = parse_qgate_kind(g.at("g").get<std::string>());
        auto gate = qgate(kind, g.at("bits").get<std::vector<Qubit>>());
        if (timed) {
            const auto t = g.at("t").get<std::size_t>();
            if (t >= c.slices.size()) c.slices.resize(t + 1);
            c.slices[t].push_back(std::move(gate));
        } else {
            c.push(std::move(gate));
        }
    }
    c.validate();
    return c;
}

inline Json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail("cannot open ", path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        fail(path, ": ", e.what());
    }
    return {};
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail("cannot write ", path);
    out << text;
}

}  // namespace qroute
