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

#include "qroute/qsim.hpp"

#include <random>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace qroute;

namespace {

QuantumCircuit random_clifford_t(std::mt19937_64 &rng, std::size_t width, std::size_t gates) {
    QuantumCircuit c{width, {}};
    std::uniform_int_distribution<std::size_t> q(0, width - 1);
    std::uniform_int_distribution<int> kind(0, 5);
    for (std::size_t g = 0; g < gates; ++g) {
        const int k = kind(rng);
        const Qubit a = static_cast<Qubit>(q(rng));
        Qubit b = static_cast<Qubit>(q(rng));
        while (width > 1 && b == a) b = static_cast<Qubit>(q(rng));
        if (k == 0) c.push(qgate(QGateKind::H, {a}));
        if (k == 1) c.push(qgate(QGateKind::T, {a}));
        if (k == 2) c.push(qgate(QGateKind::S, {a}));
        if (k >= 3 && width > 1) c.push(qgate(k == 3 ? QGateKind::CNOT : k == 4 ? QGateKind::CZ : QGateKind::SWAP, {a, b}));
    }
    c.validate();
    return c;
}

}  // namespace

TEST(Statevector, HadamardAndCnot) {
    Statevector s(1);
    s.apply(qgate(QGateKind::H, {0}));
    EXPECT_NEAR(s.amplitude(0).real(), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(s.amplitude(1).real(), std::sqrt(0.5), 1e-15);

    // (|00> + |10>)/sqrt2 with qubit 1 as control -> (|00> + |11>)/sqrt2
    Statevector b(2);
    b.apply(qgate(QGateKind::H, {1}));
    b.apply(qgate(QGateKind::CNOT, {1, 0}));
    EXPECT_NEAR(std::abs(b.amplitude(0b00)), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(b.amplitude(0b11)), std::sqrt(0.5), 1e-15);
    EXPECT_NEAR(std::abs(b.amplitude(0b10)), 0.0, 1e-15);
    EXPECT_THROW(Statevector(30), std::invalid_argument);
}

TEST(Statevector, NormPreservedEveryGate) {
    std::mt19937_64 rng(4);
    auto c = random_clifford_t(rng, 6, 200);
    Statevector s = Statevector::random(6, rng);
    for (const auto &sl : c.slices) {
        for (const auto &g : sl) {
            s.apply(g);
            ASSERT_NEAR(s.norm(), 1.0, 1e-12);
        }
    }
}

TEST(Statevector, LazySwapMatchesExplicitSwap) {
    std::mt19937_64 rng(6);
    Statevector s = Statevector::random(4, rng);
    auto before = s.amplitudes();
    s.apply(qgate(QGateKind::SWAP, {0, 3}));
    s.apply(qgate(QGateKind::H, {0}));
    s.apply(qgate(QGateKind::SWAP, {1, 0}));
    // same circuit with CNOT-built swaps
    auto explicit_swap = [](Statevector &t, Qubit a, Qubit b) {
        t.apply(qgate(QGateKind::CNOT, {a, b}));
        t.apply(qgate(QGateKind::CNOT, {b, a}));
        t.apply(qgate(QGateKind::CNOT, {a, b}));
    };
    Statevector t = Statevector::from_amplitudes(4, before);
    explicit_swap(t, 0, 3);
    t.apply(qgate(QGateKind::H, {0}));
    explicit_swap(t, 1, 0);
    auto x = s.amplitudes(), y = t.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(std::abs(x[i] - y[i]), 0.0, 1e-12);
}

TEST(Statevector, AgreesWithReversibleSimulator) {
    std::mt19937_64 rng(8);
    for (std::size_t w : {3u, 7u, 10u}) {
        auto rc = testutil::random_reversible_circuit(rng, w, 6 * w);
        auto qc = to_quantum(rc);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x) {
            Statevector s = Statevector::basis(w, x);
            s.apply(qc);
            const auto out = testutil::from_bits(simulate(rc, testutil::to_bits(x, w)));
            ASSERT_NEAR(s.probability(out), 1.0, 1e-12);
        }
    }
}

TEST(Equivalent, SelfAndRelabeling) {
    std::mt19937_64 rng(10);
    auto c = random_clifford_t(rng, 5, 60);
    EXPECT_TRUE(equivalent(c, c));

    QuantumCircuit a{2, {{qgate(QGateKind::CNOT, {0, 1})}}};
    QuantumCircuit b{2, {{qgate(QGateKind::CNOT, {1, 0})}}};
    std::vector<Qubit> swap_map{1, 0};
    EXPECT_TRUE(equivalent(a, b, swap_map));
    EXPECT_FALSE(equivalent(a, b));

    // extra ancilla that is dirtied is caught
    QuantumCircuit wide{3, {{qgate(QGateKind::CNOT, {0, 1})}, {qgate(QGateKind::H, {2})}}};
    std::vector<Qubit> map{0, 1};
    EXPECT_FALSE(equivalent(a, wide, map));
    QuantumCircuit wide_ok{3, {{qgate(QGateKind::CNOT, {0, 1})}, {qgate(QGateKind::H, {2})}, {qgate(QGateKind::H, {2})}}};
    EXPECT_TRUE(equivalent(a, wide_ok, map));

    // random-state mode above ten qubits
    auto big = random_clifford_t(rng, 11, 80);
    auto tweaked = big;
    tweaked.push(qgate(QGateKind::T, {3}));
    std::vector<Qubit> id(11);
    for (std::size_t q = 0; q < 11; ++q) id[q] = static_cast<Qubit>(q);
    EXPECT_TRUE(equivalent(big, big, id));
    EXPECT_FALSE(equivalent(big, tweaked, id));
}

TEST(Grover, KnownValues) {
    EXPECT_NEAR(grover_dynamics(4, 1, 1).success, 1.0, 1e-12);
    EXPECT_NEAR(grover_dynamics(16, 1, 3).success, 0.9613, 1e-4);
    EXPECT_NEAR(grover_dynamics(16, 1, 3).success, std::pow(std::sin(7 * std::asin(0.25)), 2), 1e-9);
    EXPECT_NEAR(grover_dynamics(32, 3, 0).success, 3.0 / 32, 1e-12);
    auto none = grover_dynamics(8, 0, 2);
    EXPECT_TRUE(none.no_solution);
    EXPECT_EQ(none.success, 0.0);
    EXPECT_THROW(grover_dynamics(12, 1, 1), std::invalid_argument);
}

TEST(Grover, MatchesClosedFormCurve) {
    for (std::size_t N : {4u, 8u, 16u, 64u, 256u}) {
        for (std::size_t M : {1u, 2u, 3u}) {
            if (M >= N) continue;
            for (std::size_t k = 0; k <= 12; ++k) {
                auto r = grover_dynamics(N, M, k);
                ASSERT_NEAR(r.success, grover_closed_form(double(N), double(M), k), 1e-9) << N << " " << M << " " << k;
            }
        }
    }
    // scattered marked set behaves like any other of the same size
    auto r = grover_dynamics(64, [](std::uint64_t v) { return v == 5 || v == 60; }, 4);
    EXPECT_NEAR(r.success, grover_closed_form(64, 2, 4), 1e-9);
}

TEST(Grover, RegisterOfAnySize) {
    std::vector<bool> marked(12, false);
    marked[7] = true;
    for (std::size_t k = 0; k < 6; ++k) {
        EXPECT_NEAR(grover_register_success(marked, k), grover_closed_form(12, 1, k), 1e-12);
    }
}
