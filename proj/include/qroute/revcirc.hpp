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
#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qroute/common.hpp"

namespace qroute {

using Bit = std::uint32_t;

enum class GateKind : std::uint8_t { X, CNOT, TOFFOLI, SWAP, FREDKIN };

constexpr std::size_t arity(GateKind k) {
    switch (k) {
        case GateKind::X:
            return 1;
        case GateKind::CNOT:
        case GateKind::SWAP:
            return 2;
        case GateKind::TOFFOLI:
        case GateKind::FREDKIN:
            return 3;
    }
    return 0;
}

inline std::string_view gate_name(GateKind k) {
    switch (k) {
        case GateKind::X:
            return "X";
        case GateKind::CNOT:
            return "CNOT";
        case GateKind::TOFFOLI:
            return "TOFFOLI";
        case GateKind::SWAP:
            return "SWAP";
        case GateKind::FREDKIN:
            return "FREDKIN";
    }
    return "?";
}

inline GateKind parse_gate_kind(std::string_view name) {
    if (name == "X") return GateKind::X;
    if (name == "CNOT" || name == "CX") return GateKind::CNOT;
    if (name == "TOFFOLI" || name == "CCX") return GateKind::TOFFOLI;
    if (name == "SWAP") return GateKind::SWAP;
    if (name == "FREDKIN" || name == "CSWAP") return GateKind::FREDKIN;
    fail("unknown reversible gate '", name, "'");
}

/// A primitive permutation gate. Bit order: X [t]; CNOT [c, t];
/// TOFFOLI [c1, c2, t]; SWAP [a, b]; FREDKIN [c, a, b].
struct Gate {
    GateKind kind = GateKind::X;
    std::array<Bit, 3> bits{};

    std::span<const Bit> support() const { return {bits.data(), arity(kind)}; }

    friend bool operator==(const Gate &a, const Gate &b) {
        if (a.kind != b.kind) return false;
        for (std::size_t i = 0; i < arity(a.kind); ++i) {
            if (a.bits[i] != b.bits[i]) return false;
        }
        return true;
    }
};

inline Gate make_gate(GateKind k, std::initializer_list<Bit> bits) {
    if (bits.size() != arity(k)) fail(gate_name(k), " takes ", arity(k), " bits, got ", bits.size());
    Gate g{k, {}};
    std::copy(bits.begin(), bits.end(), g.bits.begin());
    return g;
}

enum class RegisterKind : std::uint8_t {
    input,   // read, left unchanged
    output,  // holds a result, need not be zero on entry
    inout,   // transformed in place
    ancilla, // zero on entry and on exit
    record,  // zero on entry, holds which-way information on exit
};

inline std::string_view register_kind_name(RegisterKind k) {
    switch (k) {
        case RegisterKind::input:
            return "input";
        case RegisterKind::output:
            return "output";
        case RegisterKind::inout:
            return "inout";
        case RegisterKind::ancilla:
            return "ancilla";
        case RegisterKind::record:
            return "record";
    }
    return "?";
}

inline RegisterKind parse_register_kind(std::string_view s) {
    if (s == "input") return RegisterKind::input;
    if (s == "output") return RegisterKind::output;
    if (s == "inout") return RegisterKind::inout;
    if (s == "ancilla") return RegisterKind::ancilla;
    if (s == "record") return RegisterKind::record;
    fail("unknown register kind '", s, "'");
}

/// A named contiguous bit range.
struct Register {
    std::string name;
    Bit offset = 0;
    std::size_t size = 0;
    RegisterKind kind = RegisterKind::ancilla;

    Bit operator[](std::size_t i) const { return offset + static_cast<Bit>(i); }

    friend bool operator==(const Register &, const Register &) = default;
};

/// A labelled run of timeslices [begin, end) that counts as `units` stages in
/// the stage-depth metric (one comparator layer, one cascade phase, ...).
struct Stage {
    std::string label;
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t units = 1;

    friend bool operator==(const Stage &, const Stage &) = default;
};

struct StageMetrics {
    std::size_t depth = 0;
    std::size_t size = 0;
    std::size_t units = 0;
};

struct Metrics {
    std::size_t depth = 0;        // gate-depth: number of timeslices
    std::size_t size = 0;         // gate count
    std::size_t width = 0;        // bit count
    std::size_t stage_depth = 0;  // sum of stage units
    std::map<std::string, StageMetrics> stages;
};

using Timeslice = std::vector<Gate>;

/// Reversible classical circuit over {X, CNOT, TOFFOLI, SWAP, FREDKIN}.
///
/// Gates are stored in timeslices; within a slice supports are disjoint, so
/// executing slice by slice is the circuit's semantics.
class ReversibleCircuit {
   public:
    ReversibleCircuit() = default;

    explicit ReversibleCircuit(std::size_t width, std::vector<Timeslice> slices = {},
                               std::vector<Register> registers = {}, std::vector<Stage> stages = {})
        : width_(width),
          slices_(std::move(slices)),
          registers_(std::move(registers)),
          stages_(std::move(stages)) {
        validate();
    }

    std::size_t width() const { return width_; }
    const std::vector<Timeslice> &slices() const { return slices_; }
    const std::vector<Register> &registers() const { return registers_; }
    const std::vector<Stage> &stages() const { return stages_; }

    std::size_t size() const {
        std::size_t n = 0;
        for (const auto &s : slices_) n += s.size();
        return n;
    }

    std::vector<Gate> gates() const {
        std::vector<Gate> out;
        out.reserve(size());
        for (const auto &s : slices_) out.insert(out.end(), s.begin(), s.end());
        return out;
    }

    const Register &reg(std::string_view name) const {
        for (const auto &r : registers_) {
            if (r.name == name) return r;
        }
        fail("no register named '", name, "'");
    }

    bool has_reg(std::string_view name) const {
        return std::any_of(registers_.begin(), registers_.end(),
                           [&](const Register &r) { return r.name == name; });
    }

    friend bool operator==(const ReversibleCircuit &, const ReversibleCircuit &) = default;

   private:
    void validate() const {
        std::vector<std::size_t> stamp(width_, SIZE_MAX);
        for (std::size_t s = 0; s < slices_.size(); ++s) {
            for (const auto &g : slices_[s]) {
                auto sup = g.support();
                for (std::size_t i = 0; i < sup.size(); ++i) {
                    if (sup[i] >= width_) fail("gate bit ", sup[i], " >= width ", width_);
                    for (std::size_t j = 0; j < i; ++j) {
                        if (sup[i] == sup[j]) fail(gate_name(g.kind), " repeats bit ", sup[i]);
                    }
                    if (stamp[sup[i]] == s) fail("timeslice ", s, " touches bit ", sup[i], " twice");
                    stamp[sup[i]] = s;
                }
            }
        }
        for (const auto &r : registers_) {
            if (r.offset + r.size > width_) fail("register '", r.name, "' exceeds width");
        }
        for (const auto &st : stages_) {
            if (st.begin > st.end || st.end > slices_.size()) fail("stage '", st.label, "' out of range");
        }
    }

    std::size_t width_ = 0;
    std::vector<Timeslice> slices_;
    std::vector<Register> registers_;
    std::vector<Stage> stages_;
};

/// Incrementally builds a circuit, placing each gate in the earliest
/// timeslice after the current barrier where its bits are free. Starting a
/// stage raises the barrier, so stages never interleave.
class CircuitBuilder {
   public:
    CircuitBuilder() = default;

    Register add_register(std::string name, std::size_t size, RegisterKind kind) {
        Register r{std::move(name), static_cast<Bit>(width_), size, kind};
        width_ += size;
        frontier_.resize(width_, barrier_);
        registers_.push_back(r);
        return r;
    }

    std::size_t width() const { return width_; }

    void x(Bit t) { add({GateKind::X, {t, 0, 0}}); }
    void cnot(Bit c, Bit t) { add({GateKind::CNOT, {c, t, 0}}); }
    void toffoli(Bit c1, Bit c2, Bit t) { add({GateKind::TOFFOLI, {c1, c2, t}}); }
    void swap(Bit a, Bit b) { add({GateKind::SWAP, {a, b, 0}}); }
    void fredkin(Bit c, Bit a, Bit b) { add({GateKind::FREDKIN, {c, a, b}}); }

    void add(const Gate &g) {
        auto sup = g.support();
        std::size_t slot = barrier_;
        for (std::size_t i = 0; i < sup.size(); ++i) {
            if (sup[i] >= width_) fail("gate bit ", sup[i], " >= width ", width_);
            for (std::size_t j = 0; j < i; ++j) {
                if (sup[i] == sup[j]) fail(gate_name(g.kind), " repeats bit ", sup[i]);
            }
            slot = std::max(slot, frontier_[sup[i]]);
        }
        if (slot >= slices_.size()) slices_.resize(slot + 1);
        slices_[slot].push_back(g);
        for (Bit b : sup) frontier_[b] = slot + 1;
        for (auto &cap : captures_) cap.push_back(g);
    }

    void add_all(std::span<const Gate> gates) {
        for (const auto &g : gates) add(g);
    }

    /// Emits the inverse of a gate sequence (every gate is self-inverse).
    void add_inverse(std::span<const Gate> gates) {
        for (auto it = gates.rbegin(); it != gates.rend(); ++it) add(*it);
    }

    /// Starts recording emitted gates; end_capture returns them in order.
    /// Captures nest.
    void begin_capture() { captures_.emplace_back(); }
    std::vector<Gate> end_capture() {
        if (captures_.empty()) fail("end_capture without begin_capture");
        std::vector<Gate> out = std::move(captures_.back());
        captures_.pop_back();
        return out;
    }

    void barrier() { barrier_ = slices_.size(); }

    void begin_stage(std::string label, std::size_t units = 1) {
        if (open_stage_) fail("stage '", open_stage_->label, "' is still open");
        barrier();
        open_stage_ = Stage{std::move(label), barrier_, barrier_, units};
    }

    void end_stage() {
        if (!open_stage_) fail("no open stage");
        open_stage_->end = slices_.size();
        stages_.push_back(*open_stage_);
        open_stage_.reset();
        barrier();
    }

    ReversibleCircuit build() && {
        if (open_stage_) end_stage();
        return ReversibleCircuit(width_, std::move(slices_), std::move(registers_), std::move(stages_));
    }

   private:
    std::size_t width_ = 0;
    std::size_t barrier_ = 0;
    std::vector<std::size_t> frontier_;
    std::vector<Timeslice> slices_;
    std::vector<Register> registers_;
    std::vector<Stage> stages_;
    std::optional<Stage> open_stage_;
    std::vector<std::vector<Gate>> captures_;
};

inline void apply_gate_words(const Gate &g, std::span<std::uint64_t> s) {
    const auto &b = g.bits;
    switch (g.kind) {
        case GateKind::X:
            s[b[0]] = ~s[b[0]];
            break;
        case GateKind::CNOT:
            s[b[1]] ^= s[b[0]];
            break;
        case GateKind::TOFFOLI:
            s[b[2]] ^= s[b[0]] & s[b[1]];
            break;
        case GateKind::SWAP:
            std::swap(s[b[0]], s[b[1]]);
            break;
        case GateKind::FREDKIN: {
            const std::uint64_t d = (s[b[1]] ^ s[b[2]]) & s[b[0]];
            s[b[1]] ^= d;
            s[b[2]] ^= d;
            break;
        }
    }
}

/// Bit-plane batch simulation: bit k of state[w] is bit w of instance k, so
/// one pass runs 64 independent basis inputs.
inline void simulate_batch(const ReversibleCircuit &c, std::span<std::uint64_t> state) {
    if (state.size() != c.width()) fail("state has ", state.size(), " bits, circuit width is ", c.width());
    for (const auto &slice : c.slices()) {
        for (const auto &g : slice) apply_gate_words(g, state);
    }
}

inline std::vector<std::uint8_t> simulate(const ReversibleCircuit &c, std::span<const std::uint8_t> input) {
    if (input.size() != c.width()) fail("input has ", input.size(), " bits, circuit width is ", c.width());
    std::vector<std::uint64_t> words(input.begin(), input.end());
    for (auto &w : words) w = w ? ~std::uint64_t{0} : 0;
    simulate_batch(c, words);
    std::vector<std::uint8_t> out(words.size());
    for (std::size_t i = 0; i < words.size(); ++i) out[i] = words[i] & 1;
    return out;
}

/// Same circuit with timeslices (and gates) in reverse order.
inline ReversibleCircuit invert(const ReversibleCircuit &c) {
    std::vector<Timeslice> slices(c.slices().rbegin(), c.slices().rend());
    for (auto &s : slices) std::reverse(s.begin(), s.end());
    const std::size_t d = slices.size();
    std::vector<Stage> stages;
    for (auto it = c.stages().rbegin(); it != c.stages().rend(); ++it) {
        Stage st = *it;
        std::string_view suffix = "^-1";
        if (st.label.size() >= suffix.size() &&
            std::string_view(st.label).substr(st.label.size() - suffix.size()) == suffix) {
            st.label.resize(st.label.size() - suffix.size());
        } else {
            st.label += suffix;
        }
        st.begin = d - it->end;
        st.end = d - it->begin;
        stages.push_back(std::move(st));
    }
    return ReversibleCircuit(c.width(), std::move(slices), c.registers(), std::move(stages));
}

/// Runs `b` after `a`. Bit w of `b` is placed on bit wire_map[w] of `a`;
/// the result keeps a's width and registers. Timeslices are concatenated.
inline ReversibleCircuit compose(const ReversibleCircuit &a, const ReversibleCircuit &b,
                                 std::span<const Bit> wire_map) {
    if (wire_map.size() != b.width()) fail("wire map has ", wire_map.size(), " entries for width ", b.width());
    std::vector<bool> used(a.width(), false);
    for (Bit w : wire_map) {
        if (w >= a.width()) fail("wire map target ", w, " overflows width ", a.width());
        if (used[w]) fail("wire map is not injective at ", w);
        used[w] = true;
    }
    std::vector<Timeslice> slices = a.slices();
    const std::size_t shift = slices.size();
    for (const auto &s : b.slices()) {
        Timeslice mapped;
        mapped.reserve(s.size());
        for (Gate g : s) {
            for (std::size_t i = 0; i < arity(g.kind); ++i) g.bits[i] = wire_map[g.bits[i]];
            mapped.push_back(g);
        }
        slices.push_back(std::move(mapped));
    }
    std::vector<Stage> stages = a.stages();
    for (Stage st : b.stages()) {
        st.begin += shift;
        st.end += shift;
        stages.push_back(std::move(st));
    }
    return ReversibleCircuit(a.width(), std::move(slices), a.registers(), std::move(stages));
}

inline ReversibleCircuit compose(const ReversibleCircuit &a, const ReversibleCircuit &b) {
    std::vector<Bit> ident(b.width());
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = static_cast<Bit>(i);
    return compose(a, b, ident);
}

/// Greedy ASAP re-layering of the whole gate list, ignoring stage
/// boundaries. Stage annotations are dropped.
inline ReversibleCircuit repack(const ReversibleCircuit &c) {
    std::vector<std::size_t> frontier(c.width(), 0);
    std::vector<Timeslice> slices;
    for (const auto &s : c.slices()) {
        for (const auto &g : s) {
            std::size_t slot = 0;
            for (Bit b : g.support()) slot = std::max(slot, frontier[b]);
            if (slot >= slices.size()) slices.resize(slot + 1);
            slices[slot].push_back(g);
            for (Bit b : g.support()) frontier[b] = slot + 1;
        }
    }
    return ReversibleCircuit(c.width(), std::move(slices), c.registers());
}

inline Metrics metrics(const ReversibleCircuit &c) {
    Metrics m;
    m.depth = c.slices().size();
    m.size = c.size();
    m.width = c.width();
    for (const auto &st : c.stages()) {
        m.stage_depth += st.units;
        auto &sm = m.stages[st.label];
        sm.units += st.units;
        sm.depth += st.end - st.begin;
        for (std::size_t s = st.begin; s < st.end; ++s) sm.size += c.slices()[s].size();
    }
    return m;
}

/// Writes `value` (LSB at bit 0 of the register) into the given instance lane
/// of a bit-plane state.
inline void set_register(std::span<std::uint64_t> state, const Register &r, std::uint64_t value,
                         std::size_t lane) {
    const std::uint64_t mask = std::uint64_t{1} << lane;
    for (std::size_t i = 0; i < r.size; ++i) {
        if ((value >> i) & 1) {
            state[r[i]] |= mask;
        } else {
            state[r[i]] &= ~mask;
        }
    }
}

inline std::uint64_t get_register(std::span<const std::uint64_t> state, const Register &r, std::size_t lane) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < r.size && i < 64; ++i) v |= ((state[r[i]] >> lane) & 1) << i;
    return v;
}

/// Sub-register view: bits [start, start+len) of r.
inline Register slice_register(const Register &r, std::size_t start, std::size_t len, std::string name = {}) {
    if (start + len > r.size) fail("slice of register '", r.name, "' out of range");
    return Register{name.empty() ? r.name : std::move(name), r.offset + static_cast<Bit>(start), len, r.kind};
}

/// Lanes (mask) where some ancilla register bit is non-zero.
inline std::uint64_t dirty_ancilla_lanes(const ReversibleCircuit &c, std::span<const std::uint64_t> state) {
    std::uint64_t dirty = 0;
    for (const auto &r : c.registers()) {
        if (r.kind != RegisterKind::ancilla) continue;
        for (std::size_t i = 0; i < r.size; ++i) dirty |= state[r[i]];
    }
    return dirty;
}

}  // namespace qroute
