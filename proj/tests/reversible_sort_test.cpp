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

#include "qroute/reversible_sort.hpp"

#include <random>

#include "gtest/gtest.h"

using namespace qroute;

namespace {

struct Elem {
    std::uint64_t key;
    std::uint64_t payload;
};

// Loads elements into lane 0 of a fresh state, runs the circuit, reads back.
std::vector<Elem> run(const ReversibleCircuit &c, const std::vector<Elem> &in, std::size_t k, std::size_t p,
                      std::vector<bool> *sigma_out = nullptr, bool *clean = nullptr) {
    std::vector<std::uint64_t> state(c.width(), 0);
    const auto &el = c.reg("elements");
    const std::size_t w = k + p;
    for (std::size_t e = 0; e < in.size(); ++e) {
        set_register(state, slice_register(el, e * w, k), in[e].key, 0);
        if (p) set_register(state, slice_register(el, e * w + k, p), in[e].payload, 0);
    }
    simulate_batch(c, state);
    std::vector<Elem> out(in.size());
    for (std::size_t e = 0; e < in.size(); ++e) {
        out[e].key = get_register(state, slice_register(el, e * w, k), 0);
        out[e].payload = p ? get_register(state, slice_register(el, e * w + k, p), 0) : 0;
    }
    if (sigma_out) {
        const auto &sg = c.reg("sigma");
        sigma_out->clear();
        for (std::size_t i = 0; i < sg.size; ++i) sigma_out->push_back(state[sg[i]] & 1);
    }
    if (clean) *clean = (dirty_ancilla_lanes(c, state) & 1) == 0;
    return out;
}

}  // namespace

TEST(CompileSort, SingleComparator) {
    auto c = compile_reversible_sort(bitonic_network(1), 2, 0);
    std::vector<bool> sigma;
    auto out = run(c, {{3, 0}, {1, 0}}, 2, 0, &sigma);
    EXPECT_EQ(out[0].key, 1u);
    EXPECT_EQ(out[1].key, 3u);
    EXPECT_EQ(sigma, std::vector<bool>{true});
    out = run(c, {{1, 0}, {3, 0}}, 2, 0, &sigma);
    EXPECT_EQ(out[0].key, 1u);
    EXPECT_EQ(out[1].key, 3u);
    EXPECT_EQ(sigma, std::vector<bool>{false});
    out = run(c, {{2, 0}, {2, 0}}, 2, 0, &sigma);
    EXPECT_EQ(sigma, std::vector<bool>{false});
    EXPECT_THROW(compile_reversible_sort(bitonic_network(1), 0, 3), std::invalid_argument);
}

TEST(CompileSort, LayerStagesMatchNetwork) {
    auto c = compile_reversible_sort(bitonic_network(2), 2, 0);
    auto m = metrics(c);
    EXPECT_EQ(m.stages["sort"].units, 3u);
    EXPECT_EQ(m.stage_depth, 3u);
    EXPECT_EQ(c.reg("sigma").size, 6u);
}

// Oracle: the same network applied in software to (key, payload) records,
// compared by key only with strict less.
TEST(CompileSort, RandomVectorsAgainstRecordSortAndInverse) {
    const std::size_t k = 3, p = 2;
    auto net = bitonic_network(2);
    for (bool fan : {true, false}) {
        auto c = compile_reversible_sort(net, k, p, {.fanout_swap = fan});
        auto ci = invert(c);
        std::mt19937_64 rng(99);
        std::uniform_int_distribution<std::uint64_t> key(0, 7), pay(0, 3);
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<Elem> in(4);
            for (auto &e : in) e = {key(rng), pay(rng)};
            auto expect = in;
            auto rec = apply_network<Elem>(net, expect, [](const Elem &a, const Elem &b) { return a.key < b.key; });
            std::vector<bool> sigma;
            bool clean = false;
            auto out = run(c, in, k, p, &sigma, &clean);
            ASSERT_TRUE(clean);
            ASSERT_EQ(sigma, rec.swap_bits);
            for (std::size_t e = 0; e < 4; ++e) {
                ASSERT_EQ(out[e].key, expect[e].key);
                ASSERT_EQ(out[e].payload, expect[e].payload);
            }
            // running the inverse from the sorted state restores input and zeroes sigma
            std::vector<std::uint64_t> state(c.width(), 0);
            const auto &el = c.reg("elements");
            for (std::size_t e = 0; e < 4; ++e) {
                set_register(state, slice_register(el, e * 5, k), in[e].key, 0);
                set_register(state, slice_register(el, e * 5 + k, p), in[e].payload, 0);
            }
            auto initial = state;
            simulate_batch(c, state);
            simulate_batch(ci, state);
            ASSERT_EQ(state, initial);
        }
    }
}

TEST(CompileSort, OetsAndGridNetworksSortKeys) {
    std::mt19937_64 rng(4);
    for (auto net : {oets_network(5), grid_network(2, 3)}) {
        auto c = compile_reversible_sort(net, 3, 1);
        std::uniform_int_distribution<std::uint64_t> key(0, 7), pay(0, 1);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Elem> in(net.wire_count());
            for (auto &e : in) e = {key(rng), pay(rng)};
            bool clean = false;
            auto out = run(c, in, 3, 1, nullptr, &clean);
            ASSERT_TRUE(clean);
            for (std::size_t e = 0; e + 1 < out.size(); ++e) ASSERT_LE(out[e].key, out[e + 1].key);
        }
    }
}
