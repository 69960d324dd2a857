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

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qroute/common.hpp"
#include "qroute/revcirc.hpp"

namespace qroute {

using Amplitude = std::complex<double>;
using Qubit = std::uint32_t;

enum class QGateKind : std::uint8_t { X, H, T, Tdg, S, Sdg, Z, CNOT, CZ, TOFFOLI, SWAP, FREDKIN, PHASE_ORACLE };

inline std::size_t qarity(QGateKind k) {
    switch (k) {
        case QGateKind::CNOT:
        case QGateKind::CZ:
        case QGateKind::SWAP: return 2;
        case QGateKind::TOFFOLI:
        case QGateKind::FREDKIN: return 3;
        case QGateKind::PHASE_ORACLE: return 0;  // variable
        default: return 1;
    }
}

inline std::string_view qgate_name(QGateKind k) {
    switch (k) {
        case QGateKind::X: return "X";
        case QGateKind::H: return "H";
        case QGateKind::T: return "T";
        case QGateKind::Tdg: return "TDG";
        case QGateKind::S: return "S";
        case QGateKind::Sdg: return "SDG";
        case QGateKind::Z: return "Z";
        case QGateKind::CNOT: return "CNOT";
        case QGateKind::CZ: return "CZ";
        case QGateKind::TOFFOLI: return "TOFFOLI";
        case QGateKind::SWAP: return "SWAP";
        case QGateKind::FREDKIN: return "FREDKIN";
        case QGateKind::PHASE_ORACLE: return "PHASE_ORACLE";
    }
    return "?";
}

inline QGateKind parse_qgate_kind(std::string_view s) {
    for (auto k : {QGateKind::X, QGateKind::H, QGateKind::T, QGateKind::Tdg, QGateKind::S, QGateKind::Sdg, QGateKind::Z,
                   QGateKind::CNOT, QGateKind::CZ, QGateKind::TOFFOLI, QGateKind::SWAP, QGateKind::FREDKIN}) {
        if (s == qgate_name(k)) return k;
    }
    if (s == "CX") return QGateKind::CNOT;
    if (s == "CCX") return QGateKind::TOFFOLI;
    if (s == "CSWAP") return QGateKind::FREDKIN;
    if (s == "TDAG" || s == "Tdg") return QGateKind::Tdg;
    if (s == "SDAG" || s == "Sdg") return QGateKind::Sdg;
    fail("unknown quantum gate '", s, "'");
}

/// Predicate over the integer formed by the oracle's qubits (first qubit is
/// the least significant bit).
using BasisPredicate = std::function<bool(std::uint64_t)>;

struct QGate {
    QGateKind kind = QGateKind::X;
    std::vector<Qubit> qubits;
    std::shared_ptr<const BasisPredicate> predicate;  // PHASE_ORACLE only

    friend bool operator==(const QGate &a, const QGate &b) {
        return a.kind == b.kind && a.qubits == b.qubits && a.predicate == b.predicate;
    }
};

inline QGate qgate(QGateKind k, std::vector<Qubit> qubits) {
    if (k == QGateKind::PHASE_ORACLE) fail("use phase_oracle() to build a predicate gate");
    if (qubits.size() != qarity(k)) fail(qgate_name(k), " takes ", qarity(k), " qubits, got ", qubits.size());
    return QGate{k, std::move(qubits), nullptr};
}

inline QGate phase_oracle(std::vector<Qubit> qubits, BasisPredicate pred) {
    return QGate{QGateKind::PHASE_ORACLE, std::move(qubits), std::make_shared<const BasisPredicate>(std::move(pred))};
}

/// Quantum circuit as timeslices of gates with disjoint support.
struct QuantumCircuit {
    std::size_t width = 0;
    std::vector<std::vector<QGate>> slices;

    std::size_t depth() const { return slices.size(); }
    std::size_t size() const {
        std::size_t n = 0;
        for (const auto &s : slices) n += s.size();
        return n;
    }

    void validate() const {
        std::vector<std::size_t> stamp(width, SIZE_MAX);
        for (std::size_t t = 0; t < slices.size(); ++t) {
            for (const auto &g : slices[t]) {
                if (g.kind != QGateKind::PHASE_ORACLE && g.qubits.size() != qarity(g.kind)) {
                    fail(qgate_name(g.kind), " with ", g.qubits.size(), " qubits");
                }
                for (Qubit q : g.qubits) {
                    if (q >= width) fail("qubit ", q, " outside width ", width);
                    if (stamp[q] == t) fail("timeslice ", t, " uses qubit ", q, " twice");
                    stamp[q] = t;
                }
            }
        }
    }

    /// Appends a gate ASAP (after every earlier gate on its qubits).
    void push(QGate g) {
        std::size_t slot = 0;
        for (std::size_t t = slices.size(); t-- > 0;) {
            bool clash = false;
            for (const auto &h : slices[t])
                for (Qubit a : h.qubits)
                    for (Qubit b : g.qubits) clash |= a == b;
            if (clash) {
                slot = t + 1;
                break;
            }
        }
        if (slot == slices.size()) slices.emplace_back();
        slices[slot].push_back(std::move(g));
    }
};

inline QuantumCircuit to_quantum(const ReversibleCircuit &c) {
    QuantumCircuit q{c.width(), {}};
    for (const auto &slice : c.slices()) {
        std::vector<QGate> out;
        for (const auto &g : slice) {
            auto sup = g.support();
            std::vector<Qubit> qs(sup.begin(), sup.end());
            QGateKind k = QGateKind::X;
            switch (g.kind) {
                case GateKind::X: k = QGateKind::X; break;
                case GateKind::CNOT: k = QGateKind::CNOT; break;
                case GateKind::TOFFOLI: k = QGateKind::TOFFOLI; break;
                case GateKind::SWAP: k = QGateKind::SWAP; break;
                case GateKind::FREDKIN: k = QGateKind::FREDKIN; break;
            }
            out.push_back(qgate(k, std::move(qs)));
        }
        q.slices.push_back(std::move(out));
    }
    return q;
}

/// Dense statevector. Basis index bit q is qubit q. SWAP gates only relabel
/// qubits; amplitudes are permuted back when read.
class Statevector {
   public:
    static constexpr std::size_t default_cap = 26;

    explicit Statevector(std::size_t width, std::size_t cap = default_cap) : width_(width) {
        if (width > cap) fail("statevector width ", width, " exceeds cap ", cap);
        amp_.assign(std::size_t{1} << width, Amplitude{0.0, 0.0});
        amp_[0] = 1.0;
        phys_.resize(width);
        for (std::size_t q = 0; q < width; ++q) phys_[q] = static_cast<Qubit>(q);
    }

    static Statevector basis(std::size_t width, std::uint64_t index) {
        Statevector s(width);
        s.amp_[0] = 0.0;
        s.amp_.at(index) = 1.0;
        return s;
    }

    static Statevector from_amplitudes(std::size_t width, std::vector<Amplitude> amps) {
        Statevector s(width);
        if (amps.size() != s.amp_.size()) fail("expected ", s.amp_.size(), " amplitudes, got ", amps.size());
        s.amp_ = std::move(amps);
        return s;
    }

    static Statevector random(std::size_t width, std::mt19937_64 &rng) {
        Statevector s(width);
        std::normal_distribution<double> g;
        double norm = 0.0;
        for (auto &a : s.amp_) {
            a = {g(rng), g(rng)};
            norm += std::norm(a);
        }
        for (auto &a : s.amp_) a /= std::sqrt(norm);
        return s;
    }

    std::size_t width() const { return width_; }

    /// Amplitudes in logical qubit order.
    std::vector<Amplitude> amplitudes() const {
        bool ident = true;
        for (std::size_t q = 0; q < width_; ++q) ident &= phys_[q] == q;
        if (ident) return amp_;
        std::vector<Amplitude> out(amp_.size());
        for (std::uint64_t i = 0; i < amp_.size(); ++i) out[logical_index(i)] = amp_[i];
        return out;
    }

    Amplitude amplitude(std::uint64_t logical) const { return amp_[physical_index(logical)]; }

    double norm() const {
        double n = 0.0;
        for (const auto &a : amp_) n += std::norm(a);
        return std::sqrt(n);
    }

    double probability(std::uint64_t logical) const { return std::norm(amplitude(logical)); }

    void apply(const QGate &g) {
        const auto &q = g.qubits;
        for (Qubit b : q) {
            if (b >= width_) fail("qubit ", b, " outside width ", width_);
        }
        switch (g.kind) {
            case QGateKind::SWAP: std::swap(phys_[q[0]], phys_[q[1]]); return;
            case QGateKind::X: permute_if(0, 0, bit(q[0])); return;
            case QGateKind::CNOT: permute_if(bit(q[0]), bit(q[0]), bit(q[1])); return;
            case QGateKind::TOFFOLI: {
                const std::uint64_t m = bit(q[0]) | bit(q[1]);
                permute_if(m, m, bit(q[2]));
                return;
            }
            case QGateKind::FREDKIN: fredkin(bit(q[0]), bit(q[1]), bit(q[2])); return;
            case QGateKind::H: hadamard(bit(q[0])); return;
            case QGateKind::Z: phase_on(bit(q[0]), Amplitude{-1.0, 0.0}); return;
            case QGateKind::S: phase_on(bit(q[0]), Amplitude{0.0, 1.0}); return;
            case QGateKind::Sdg: phase_on(bit(q[0]), Amplitude{0.0, -1.0}); return;
            case QGateKind::T: phase_on(bit(q[0]), std::polar(1.0, std::numbers::pi / 4)); return;
            case QGateKind::Tdg: phase_on(bit(q[0]), std::polar(1.0, -std::numbers::pi / 4)); return;
            case QGateKind::CZ: phase_on(bit(q[0]) | bit(q[1]), Amplitude{-1.0, 0.0}); return;
            case QGateKind::PHASE_ORACLE: {
                if (!g.predicate) fail("phase oracle without predicate");
                for (std::uint64_t i = 0; i < amp_.size(); ++i) {
                    std::uint64_t v = 0;
                    for (std::size_t k = 0; k < q.size(); ++k) v |= ((i >> phys_[q[k]]) & 1) << k;
                    if ((*g.predicate)(v)) amp_[i] = -amp_[i];
                }
                return;
            }
        }
    }

    void apply(const QuantumCircuit &c) {
        if (c.width != width_) fail("circuit width ", c.width, " != state width ", width_);
        for (const auto &s : c.slices)
            for (const auto &g : s) apply(g);
    }

   private:
    std::uint64_t bit(Qubit q) const { return std::uint64_t{1} << phys_[q]; }

    std::uint64_t logical_index(std::uint64_t phys) const {
        std::uint64_t v = 0;
        for (std::size_t q = 0; q < width_; ++q) v |= ((phys >> phys_[q]) & 1) << q;
        return v;
    }
    std::uint64_t physical_index(std::uint64_t logical) const {
        std::uint64_t v = 0;
        for (std::size_t q = 0; q < width_; ++q) v |= ((logical >> q) & 1) << phys_[q];
        return v;
    }

    // For indices with (i & mask) == value, swap the amplitudes of i and i^flip.
    void permute_if(std::uint64_t mask, std::uint64_t value, std::uint64_t flip) {
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if ((i & flip) == 0 && (i & mask) == value) std::swap(amp_[i], amp_[i | flip]);
        }
    }
    void fredkin(std::uint64_t c, std::uint64_t a, std::uint64_t b) {
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if ((i & c) && (i & a) && !(i & b)) std::swap(amp_[i], amp_[(i & ~a) | b]);
        }
    }
    void hadamard(std::uint64_t m) {
        const double r = std::numbers::sqrt2 / 2;
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if (i & m) continue;
            const Amplitude a = amp_[i], b = amp_[i | m];
            amp_[i] = r * (a + b);
            amp_[i | m] = r * (a - b);
        }
    }
    void phase_on(std::uint64_t mask, Amplitude ph) {
        for (std::uint64_t i = 0; i < amp_.size(); ++i) {
            if ((i & mask) == mask) amp_[i] *= ph;
        }
    }

    std::size_t width_;
    std::vector<Amplitude> amp_;
    std::vector<Qubit> phys_;  // logical qubit -> physical bit position
};

/// Checks that `b` acts like `a` with a's qubit q on b's qubit wire_map[q];
/// b's other qubits start in |0> and must return to |0>. Exhaustive over
/// basis inputs when a's width <= exhaustive_limit, otherwise
/// `random_states` random inputs.
inline bool equivalent(const QuantumCircuit &a, const QuantumCircuit &b, std::span<const Qubit> wire_map,
                       double tol = 1e-10, std::size_t random_states = 8, std::uint64_t seed = 1,
                       std::size_t exhaustive_limit = 10) {
    if (wire_map.size() != a.width) fail("wire map has ", wire_map.size(), " entries for width ", a.width);
    if (b.width < a.width) fail("target circuit narrower than source");
    std::vector<bool> used(b.width, false);
    for (Qubit q : wire_map) {
        if (q >= b.width || used[q]) fail("wire map is not injective into width ", b.width);
        used[q] = true;
    }
    auto embed = [&](std::uint64_t ia) {
        std::uint64_t ib = 0;
        for (std::size_t q = 0; q < a.width; ++q) ib |= ((ia >> q) & 1) << wire_map[q];
        return ib;
    };
    auto compare = [&](const Statevector &in_a) {
        Statevector sa = in_a;
        sa.apply(a);
        auto amps_in = in_a.amplitudes();
        std::vector<Amplitude> bin(std::size_t{1} << b.width);
        for (std::uint64_t i = 0; i < amps_in.size(); ++i) bin[embed(i)] = amps_in[i];
        Statevector sb = Statevector::from_amplitudes(b.width, std::move(bin));
        sb.apply(b);
        auto out_a = sa.amplitudes();
        auto out_b = sb.amplitudes();
        std::vector<bool> hit(out_b.size(), false);
        for (std::uint64_t i = 0; i < out_a.size(); ++i) {
            const std::uint64_t j = embed(i);
            hit[j] = true;
            if (std::abs(out_a[i] - out_b[j]) > tol) return false;
        }
        for (std::uint64_t j = 0; j < out_b.size(); ++j) {
            if (!hit[j] && std::abs(out_b[j]) > tol) return false;
        }
        return true;
    };
    if (a.width <= exhaustive_limit) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.width); ++x) {
            if (!compare(Statevector::basis(a.width, x))) return false;
        }
        return true;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t t = 0; t < random_states; ++t) {
        if (!compare(Statevector::random(a.width, rng))) return false;
    }
    return true;
}

inline bool equivalent(const QuantumCircuit &a, const QuantumCircuit &b, double tol = 1e-10) {
    std::vector<Qubit> id(a.width);
    for (std::size_t q = 0; q < id.size(); ++q) id[q] = static_cast<Qubit>(q);
    return equivalent(a, b, id, tol);
}

/// sin^2((2k+1) theta) with sin^2 theta = M/N.
inline double grover_closed_form(double N, double M, std::size_t k) {
    const double theta = std::asin(std::sqrt(M / N));
    const double s = std::sin((2.0 * static_cast<double>(k) + 1.0) * theta);
    return s * s;
}

inline std::size_t grover_iterations(double N, double M) {
    if (M <= 0) return 0;
    return static_cast<std::size_t>(std::floor(std::numbers::pi / 4 * std::sqrt(N / M)));
}

struct GroverResult {
    double success = 0.0;       // probability mass on marked items
    double closed_form = 0.0;
    std::size_t marked = 0;
    bool no_solution = false;   // M = 0: `success` is 0 and nothing can be found
};

/// Grover iterations on a register of log2(N) qubits with a phase oracle for
/// `pred` and the standard diffusion, simulated gate by gate.
inline GroverResult grover_dynamics(std::size_t N, const BasisPredicate &pred, std::size_t iterations) {
    if (N < 2 || !is_power_of_two(N)) fail("grover_dynamics needs N a power of two >= 2, got ", N);
    const std::size_t n = ceil_log2(N);
    GroverResult r;
    for (std::uint64_t i = 0; i < N; ++i) r.marked += pred(i) ? 1 : 0;
    r.no_solution = r.marked == 0;
    r.closed_form = grover_closed_form(double(N), double(r.marked), iterations);
    std::vector<Qubit> all(n);
    for (std::size_t q = 0; q < n; ++q) all[q] = static_cast<Qubit>(q);
    const QGate oracle = phase_oracle(all, pred);
    const QGate zero_flip = phase_oracle(all, [](std::uint64_t v) { return v == 0; });
    Statevector s(n);
    for (Qubit q : all) s.apply(qgate(QGateKind::H, {q}));
    for (std::size_t k = 0; k < iterations; ++k) {
        s.apply(oracle);
        for (Qubit q : all) s.apply(qgate(QGateKind::H, {q}));
        s.apply(zero_flip);  // -(2|0><0| - I) up to global phase
        for (Qubit q : all) s.apply(qgate(QGateKind::H, {q}));
    }
    for (std::uint64_t i = 0; i < N; ++i)
        if (pred(i)) r.success += s.probability(i);
    return r;
}

inline GroverResult grover_dynamics(std::size_t N, std::size_t M, std::size_t iterations) {
    return grover_dynamics(N, [M](std::uint64_t v) { return v < M; }, iterations);
}

/// Grover over a B-valued register (B need not be a power of two): uniform
/// start, sign flip on marked values, inversion about the mean.
inline double grover_register_success(const std::vector<bool> &marked, std::size_t iterations) {
    const std::size_t B = marked.size();
    if (B == 0) fail("empty search domain");
    std::vector<double> a(B, 1.0 / std::sqrt(double(B)));
    for (std::size_t k = 0; k < iterations; ++k) {
        double mean = 0.0;
        for (std::size_t i = 0; i < B; ++i) {
            if (marked[i]) a[i] = -a[i];
            mean += a[i];
        }
        mean /= double(B);
        for (auto &v : a) v = 2 * mean - v;
    }
    double p = 0.0;
    for (std::size_t i = 0; i < B; ++i)
        if (marked[i]) p += a[i] * a[i];
    return p;
}

}  // namespace qroute
