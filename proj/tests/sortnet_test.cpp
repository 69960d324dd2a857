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

#include "qroute/sortnet.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

using namespace qroute;

namespace {

// Independent oracle: run the network on one binary input scalar-by-scalar.
bool sorts_binary_input(const ComparatorNetwork &net, std::uint64_t input) {
    std::vector<int> v(net.wire_count());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (input >> i) & 1;
    for (const auto &layer : net.layers()) {
        for (const auto &c : layer) {
            if (v[c.lo] > v[c.hi]) std::swap(v[c.lo], v[c.hi]);
        }
    }
    return std::is_sorted(v.begin(), v.end());
}

bool brute_force_sorts_all(const ComparatorNetwork &net) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << net.wire_count()); ++x) {
        if (!sorts_binary_input(net, x)) return false;
    }
    return true;
}

}  // namespace

TEST(Bitonic, SizesAndLayers) {
    auto b1 = bitonic_network(1);
    EXPECT_EQ(b1.wire_count(), 2u);
    EXPECT_EQ(b1.depth(), 1u);
    EXPECT_EQ(b1.comparator_count(), 1u);
    auto b2 = bitonic_network(2);
    EXPECT_EQ(b2.wire_count(), 4u);
    EXPECT_EQ(b2.depth(), 3u);
    EXPECT_EQ(b2.comparator_count(), 6u);
    EXPECT_EQ(bitonic_network(3).depth(), 6u);
    EXPECT_EQ(bitonic_network(3).comparator_count(), 24u);
    for (std::size_t t = 1; t <= 6; ++t) EXPECT_EQ(bitonic_network(t).depth(), t * (t + 1) / 2);
    EXPECT_THROW(bitonic_network(0), std::invalid_argument);
}

TEST(Bitonic, ComparatorsDifferInOneBit) {
    for (std::size_t t = 1; t <= 6; ++t) {
        const auto net = bitonic_network(t);
        for (const auto &layer : net.layers()) {
            for (const auto &c : layer) ASSERT_TRUE(is_power_of_two(c.lo ^ c.hi));
        }
    }
}

TEST(Oets, Shapes) {
    auto n4 = oets_network(4);
    EXPECT_EQ(n4.depth(), 4u);
    EXPECT_EQ(n4.comparator_count(), 6u);
    auto n2 = oets_network(2);
    EXPECT_EQ(n2.depth(), 2u);
    EXPECT_EQ(n2.comparator_count(), 1u);
    EXPECT_TRUE(n2.layers()[1].empty());
    EXPECT_TRUE(brute_force_sorts_all(n4));
    EXPECT_TRUE(brute_force_sorts_all(oets_network(8)));
}

TEST(Grid, ShearsortSnakeOrder) {
    auto g22 = grid_network(2, 2);
    EXPECT_TRUE(brute_force_sorts_all(g22));
    auto g44 = grid_network(4, 4);
    EXPECT_LE(g44.depth(), 24u);
    EXPECT_TRUE(brute_force_sorts_all(g44));
    EXPECT_EQ(grid_network(1, 6), oets_network(6));
    for (auto [r, c] : {std::pair{3, 3}, {2, 5}, {5, 2}, {3, 4}, {4, 3}, {2, 8}}) {
        auto net = grid_network(r, c);
        EXPECT_TRUE(verify_network(net).sorted) << r << "x" << c;
        auto topo = make_grid(r, c);
        EXPECT_TRUE(locality_check(net, topo, grid_wire_assignment(r, c)));
    }
}

TEST(Verify, AgreesWithBruteForceAndFindsCounterexamples) {
    EXPECT_TRUE(verify_network(bitonic_network(3)).sorted);
    auto broken_layers = oets_network(5).layers();
    broken_layers.pop_back();
    ComparatorNetwork broken(5, broken_layers);
    auto res = verify_network(broken);
    EXPECT_FALSE(res.sorted);
    ASSERT_TRUE(res.counterexample.has_value());
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < 5; ++i) x |= std::uint64_t{(*res.counterexample)[i]} << i;
    EXPECT_FALSE(sorts_binary_input(broken, x));
    EXPECT_TRUE(verify_network(ComparatorNetwork(1, {})).sorted);
}

TEST(Verify, RandomModeAboveSixtyFourWires) {
    auto res = verify_network(bitonic_network(7), 20, 64);
    EXPECT_TRUE(res.sorted);
    EXPECT_FALSE(res.exhaustive);
    auto layers = bitonic_network(7).layers();
    layers.erase(layers.begin() + 3);
    EXPECT_FALSE(verify_network(ComparatorNetwork(128, layers), 20, 256).sorted);
}

TEST(Verify, SplitNetworksCheckedExactly) {
    for (std::size_t t = 5; t <= 6; ++t) {
        auto res = verify_network(bitonic_network(t));
        EXPECT_TRUE(res.sorted);
        EXPECT_TRUE(res.exhaustive);
    }
    // one missing comparator in the final layer leaves exactly one pair of
    // adjacent wires unsorted on a few inputs; the exact check must find it
    for (std::size_t t : {5u, 6u}) {
        auto layers = bitonic_network(t).layers();
        layers.back().erase(layers.back().begin() + 7);
        ComparatorNetwork broken(std::size_t{1} << t, layers);
        auto res = verify_network(broken);
        EXPECT_FALSE(res.sorted);
        EXPECT_TRUE(res.exhaustive);
        ASSERT_TRUE(res.counterexample.has_value());
        std::uint64_t x = 0;
        for (std::size_t i = 0; i < broken.wire_count(); ++i) x |= std::uint64_t{(*res.counterexample)[i]} << i;
        EXPECT_FALSE(sorts_binary_input(broken, x));
    }
    // below the enumeration limit the result matches brute force
    auto layers = bitonic_network(4).layers();
    layers[2].pop_back();
    ComparatorNetwork small(16, layers);
    EXPECT_EQ(verify_network(small, 8).sorted, brute_force_sorts_all(small));
    EXPECT_EQ(verify_network(bitonic_network(4), 8).sorted, brute_force_sorts_all(bitonic_network(4)));
}

TEST(Locality, TableRows) {
    EXPECT_TRUE(locality_check(bitonic_network(3), make_hypercube(8)));
    EXPECT_FALSE(locality_check(bitonic_network(2), make_line(4)));
    EXPECT_TRUE(locality_check(oets_network(6), make_line(6)));
    EXPECT_TRUE(locality_check(bitonic_network(3), make_complete(8)));
    EXPECT_TRUE(locality_check(oets_network(7), make_complete(7)));
}

TEST(Locality, PacketNetworks) {
    for (auto topo : {make_hypercube(8), make_line(5), make_complete(8), make_complete(6), make_grid(2, 3)}) {
        auto pn = packet_network_for(topo);
        EXPECT_EQ(pn.net.wire_count(), 2 * topo.node_count());
        EXPECT_TRUE(locality_check(pn.net, topo, pn.wire_to_node));
        EXPECT_TRUE(verify_network(pn.net).sorted);
        for (std::size_t i = 0; i < topo.node_count(); ++i) EXPECT_EQ(pn.wire_to_node[2 * i], pn.wire_to_node[2 * i + 1]);
    }
}

TEST(ZeroOne, MultiBitKeysWithDuplicates) {
    std::mt19937_64 rng(11);
    for (auto net : {bitonic_network(4), oets_network(9), grid_network(3, 4)}) {
        ASSERT_TRUE(verify_network(net).sorted);
        std::uniform_int_distribution<int> key(0, 5);
        for (int trial = 0; trial < 300; ++trial) {
            std::vector<int> v(net.wire_count());
            for (auto &x : v) x = key(rng);
            auto expect = v;
            std::sort(expect.begin(), expect.end());
            apply_network<int>(net, v);
            ASSERT_EQ(v, expect);
        }
    }
}

TEST(ApplyNetwork, EqualKeysNeverSwap) {
    auto net = bitonic_network(3);
    std::vector<int> v(8, 4);
    auto rec = apply_network<int>(net, v);
    EXPECT_EQ(rec.swap_bits.size(), net.comparator_count());
    EXPECT_TRUE(std::none_of(rec.swap_bits.begin(), rec.swap_bits.end(), [](bool b) { return b; }));
}

TEST(ComparatorNetwork, RejectsOverlappingLayer) {
    EXPECT_THROW(ComparatorNetwork(3, {{{0, 1}, {1, 2}}}), std::invalid_argument);
    EXPECT_THROW(ComparatorNetwork(3, {{{0, 3}}}), std::invalid_argument);
    EXPECT_THROW(ComparatorNetwork(3, {{{1, 1}}}), std::invalid_argument);
}
