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
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qroute/common.hpp"
#include "qroute/topology.hpp"

namespace qroute {

/// A compare-exchange element: after it fires, the smaller element sits on
/// wire `lo` and the larger on wire `hi`. `lo` may exceed `hi`; bitonic
/// networks need descending comparators to stay hypercube-local.
struct Comparator {
    std::size_t lo = 0;
    std::size_t hi = 0;

    friend bool operator==(const Comparator &, const Comparator &) = default;
};

using ComparatorLayer = std::vector<Comparator>;

class ComparatorNetwork {
   public:
    ComparatorNetwork() = default;

    /// Throws if a comparator is out of range, degenerate, or if two
    /// comparators in one layer share a wire.
    ComparatorNetwork(std::size_t wires, std::vector<ComparatorLayer> layers)
        : wires_(wires), layers_(std::move(layers)) {
        if (wires_ == 0) fail("network needs at least one wire");
        std::vector<std::size_t> stamp(wires_, SIZE_MAX);
        for (std::size_t l = 0; l < layers_.size(); ++l) {
            for (const auto &c : layers_[l]) {
                if (c.lo >= wires_ || c.hi >= wires_) {
                    fail("comparator (", c.lo, ",", c.hi, ") out of range in layer ", l);
                }
                if (c.lo == c.hi) fail("comparator on a single wire in layer ", l);
                if (stamp[c.lo] == l || stamp[c.hi] == l) {
                    fail("layer ", l, " touches wire twice");
                }
                stamp[c.lo] = l;
                stamp[c.hi] = l;
            }
        }
    }

    std::size_t wire_count() const { return wires_; }
    std::size_t depth() const { return layers_.size(); }
    const std::vector<ComparatorLayer> &layers() const { return layers_; }

    std::size_t comparator_count() const {
        std::size_t n = 0;
        for (const auto &layer : layers_) n += layer.size();
        return n;
    }

    friend bool operator==(const ComparatorNetwork &, const ComparatorNetwork &) = default;

   private:
    std::size_t wires_ = 1;
    std::vector<ComparatorLayer> layers_;
};

/// Which-way record of one sort: bit c is set iff comparator c (in network
/// order, layer by layer) exchanged its inputs.
struct SortRecord {
    std::vector<bool> swap_bits;
};

/// Bitonic sorter on 2^t wires, t(t+1)/2 layers, every comparator joining
/// wires that differ in exactly one index bit.
inline ComparatorNetwork bitonic_network(std::size_t t) {
    if (t == 0) fail("bitonic network needs t >= 1");
    const std::size_t wires = std::size_t{1} << t;
    std::vector<ComparatorLayer> layers;
    for (std::size_t stage = 1; stage <= t; ++stage) {
        for (std::size_t step = stage; step-- > 0;) {
            const std::size_t dist = std::size_t{1} << step;
            ComparatorLayer layer;
            for (std::size_t i = 0; i < wires; ++i) {
                if (i & dist) continue;
                const bool ascending = ((i >> stage) & 1) == 0;
                if (ascending) {
                    layer.push_back({i, i | dist});
                } else {
                    layer.push_back({i | dist, i});
                }
            }
            layers.push_back(std::move(layer));
        }
    }
    return ComparatorNetwork(wires, std::move(layers));
}

/// Odd-even transposition sort: n alternating layers of adjacent pairs.
/// For n == 1 the network is empty.
inline ComparatorNetwork oets_network(std::size_t n) {
    if (n == 0) fail("odd-even transposition network needs n >= 1");
    std::vector<ComparatorLayer> layers;
    if (n == 1) return ComparatorNetwork(1, {});
    for (std::size_t round = 0; round < n; ++round) {
        ComparatorLayer layer;
        for (std::size_t i = round % 2; i + 1 < n; i += 2) {
            layer.push_back({i, i + 1});
        }
        layers.push_back(std::move(layer));
    }
    return ComparatorNetwork(n, std::move(layers));
}

/// Shearsort on a rows x cols mesh. Wires are numbered in snake order, so
/// wire w is the grid cell at boustrophedon position w (see
/// grid_wire_assignment) and a sorted output is sorted in snake order.
/// Rows are sorted ceil(log2 rows)+1 times with column sorts in between, each
/// sort realized as odd-even transposition.
inline ComparatorNetwork grid_network(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0 || rows * cols < 2) fail("grid network needs rows*cols >= 2");
    // snake position of cell (r, c)
    auto pos = [cols](std::size_t r, std::size_t c) {
        return r * cols + ((r % 2 == 0) ? c : cols - 1 - c);
    };
    std::vector<ComparatorLayer> layers;
    auto row_phase = [&] {
        if (cols < 2) return;
        for (std::size_t round = 0; round < cols; ++round) {
            ComparatorLayer layer;
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = round % 2; c + 1 < cols; c += 2) {
                    const std::size_t a = pos(r, c), b = pos(r, c + 1);
                    layer.push_back({std::min(a, b), std::max(a, b)});
                }
            }
            layers.push_back(std::move(layer));
        }
    };
    auto column_phase = [&] {
        if (rows < 2) return;
        for (std::size_t round = 0; round < rows; ++round) {
            ComparatorLayer layer;
            for (std::size_t c = 0; c < cols; ++c) {
                for (std::size_t r = round % 2; r + 1 < rows; r += 2) {
                    layer.push_back({pos(r, c), pos(r + 1, c)});
                }
            }
            layers.push_back(std::move(layer));
        }
    };
    const std::size_t rounds = ceil_log2(rows) + 1;
    for (std::size_t k = 0; k < rounds; ++k) {
        row_phase();
        if (k + 1 < rounds) column_phase();
    }
    return ComparatorNetwork(rows * cols, std::move(layers));
}

/// Wire -> row-major grid node for networks built by grid_network.
inline std::vector<std::size_t> grid_wire_assignment(std::size_t rows, std::size_t cols) {
    return Topology::snake_order(rows, cols);
}

/// Default wire -> node map: wire i lives at node i / wires_per_node.
inline std::vector<std::size_t> block_assignment(std::size_t wires, std::size_t wires_per_node) {
    if (wires_per_node == 0) fail("wires_per_node must be positive");
    std::vector<std::size_t> out(wires);
    for (std::size_t i = 0; i < wires; ++i) out[i] = i / wires_per_node;
    return out;
}

/// Applies the network to a vector of keys in place and returns the swap
/// record. Equal keys never swap.
template <typename T, typename Less = std::less<T>>
SortRecord apply_network(const ComparatorNetwork &net, std::span<T> values, Less less = {}) {
    if (values.size() != net.wire_count()) {
        fail("apply_network: ", values.size(), " values for ", net.wire_count(), " wires");
    }
    SortRecord rec;
    rec.swap_bits.reserve(net.comparator_count());
    for (const auto &layer : net.layers()) {
        for (const auto &c : layer) {
            const bool swap = less(values[c.hi], values[c.lo]);
            if (swap) std::swap(values[c.lo], values[c.hi]);
            rec.swap_bits.push_back(swap);
        }
    }
    return rec;
}

struct VerifyResult {
    bool sorted = true;
    bool exhaustive = true;
    /// A binary input (one entry per wire) that the network fails to sort.
    std::optional<std::vector<std::uint8_t>> counterexample;
};

namespace detail {

/// Runs the network on 64 binary inputs at once: bit s of words[w] is wire w
/// of input s. Returns a mask of inputs whose output is not sorted.
inline std::uint64_t run_bitsliced(const ComparatorNetwork &net, std::vector<std::uint64_t> &words) {
    for (const auto &layer : net.layers()) {
        for (const auto &c : layer) {
            const std::uint64_t a = words[c.lo];
            const std::uint64_t b = words[c.hi];
            words[c.lo] = a & b;
            words[c.hi] = a | b;
        }
    }
    std::uint64_t bad = 0;
    for (std::size_t w = 0; w + 1 < words.size(); ++w) bad |= words[w] & ~words[w + 1];
    return bad;
}

/// Binary states reachable at the output of layers [0, end) restricted to
/// wires [first, last), each mapped to an input that produces it. A layer
/// prefix that never crosses the midpoint is the product of the two halves'
/// reachable sets; those halves recurse. Wires are bits of a 64-bit word.
/// Returns nullopt if a block with more than `enumerate_limit` wires has no
/// such split or a set outgrows `set_cap`.
using ReachableSet = std::vector<std::pair<std::uint64_t, std::uint64_t>>;  // (state, input)

inline std::uint64_t apply_layers_bits(std::span<const ComparatorLayer> layers, std::uint64_t s) {
    for (const auto &layer : layers) {
        for (const auto &c : layer) {
            const std::uint64_t a = (s >> c.lo) & 1, b = (s >> c.hi) & 1;
            if (a && !b) s ^= (std::uint64_t{1} << c.lo) | (std::uint64_t{1} << c.hi);
        }
    }
    return s;
}

inline std::optional<ReachableSet> reachable_outputs(std::span<const ComparatorLayer> layers, std::size_t first,
                                                     std::size_t last, std::size_t enumerate_limit,
                                                     std::size_t set_cap) {
    const std::size_t n = last - first;
    auto inside = [&](const Comparator &c, std::size_t a, std::size_t b) {
        return c.lo >= a && c.lo < b && c.hi >= a && c.hi < b;
    };
    auto dedupe = [](ReachableSet &v) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end(), [](auto &x, auto &y) { return x.first == y.first; }), v.end());
    };
    if (n <= enumerate_limit) {
        ReachableSet out;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const std::uint64_t in = x << first;
            out.emplace_back(apply_layers_bits(layers, in), in);
        }
        dedupe(out);
        return out;
    }
    const std::size_t mid = first + n / 2;
    std::size_t split = 0;
    while (split < layers.size() &&
           std::all_of(layers[split].begin(), layers[split].end(),
                       [&](const Comparator &c) { return inside(c, first, mid) || inside(c, mid, last); }))
        ++split;
    if (split == 0) return std::nullopt;
    auto half = [&](std::size_t a, std::size_t b) {
        std::vector<ComparatorLayer> sub(split);
        for (std::size_t l = 0; l < split; ++l)
            for (const auto &c : layers[l])
                if (inside(c, a, b)) sub[l].push_back(c);
        return reachable_outputs(sub, a, b, enumerate_limit, set_cap);
    };
    auto lower = half(first, mid);
    if (!lower) return std::nullopt;
    auto upper = half(mid, last);
    if (!upper || lower->size() * upper->size() > set_cap) return std::nullopt;
    const auto rest = layers.subspan(split);
    ReachableSet out;
    out.reserve(lower->size() * upper->size());
    for (const auto &[sl, il] : *lower)
        for (const auto &[su, iu] : *upper) out.emplace_back(apply_layers_bits(rest, sl | su), il | iu);
    dedupe(out);
    return out;
}

}  // namespace detail

/// 0-1 principle check. Exhaustive over all 2^T binary inputs for
/// T <= exhaustive_limit (capped at 30). Wider networks of at most 64 wires
/// whose early layers split into independent halves (bitonic, grid rows)
/// are still checked exactly through reachable-set propagation. Otherwise
/// `random_batches` x 64 random inputs at a spread of densities, and
/// `exhaustive` is false.
inline VerifyResult verify_network(const ComparatorNetwork &net, std::size_t exhaustive_limit = 20,
                                   std::size_t random_batches = 4096, std::uint64_t seed = 1) {
    const std::size_t T = net.wire_count();
    VerifyResult result;
    std::vector<std::uint64_t> words(T);
    auto report = [&](std::uint64_t bad, const std::vector<std::uint64_t> &inputs) {
        const int s = std::countr_zero(bad);
        std::vector<std::uint8_t> cex(T);
        for (std::size_t w = 0; w < T; ++w) cex[w] = (inputs[w] >> s) & 1;
        result.sorted = false;
        result.counterexample = std::move(cex);
    };
    if (T <= std::min<std::size_t>(exhaustive_limit, 30)) {
        const std::uint64_t total = std::uint64_t{1} << T;
        std::vector<std::uint64_t> inputs(T);
        for (std::uint64_t base = 0; base < total; base += 64) {
            for (std::size_t w = 0; w < T; ++w) {
                std::uint64_t word = 0;
                for (std::uint64_t s = 0; s < 64 && base + s < total; ++s) {
                    word |= (((base + s) >> w) & 1) << s;
                }
                inputs[w] = word;
            }
            words = inputs;
            std::uint64_t bad = detail::run_bitsliced(net, words);
            if (total - base < 64) bad &= (std::uint64_t{1} << (total - base)) - 1;
            if (bad) {
                report(bad, inputs);
                return result;
            }
        }
        return result;
    }
    if (T <= 64) {
        // exact check through reachable-set propagation when the network
        // splits into independent halves
        if (auto reach = detail::reachable_outputs(net.layers(), 0, T, std::min<std::size_t>(exhaustive_limit, 20),
                                                   std::size_t{1} << 22)) {
            for (const auto &[out, in] : *reach) {
                const std::uint64_t low = out == 0 ? 0 : (std::uint64_t{1} << std::countr_zero(out)) - 1;
                const std::uint64_t full = T == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << T) - 1;
                if ((out | low) != full && out != 0) {
                    std::vector<std::uint8_t> cex(T);
                    for (std::size_t w = 0; w < T; ++w) cex[w] = (in >> w) & 1;
                    result.sorted = false;
                    result.counterexample = std::move(cex);
                    return result;
                }
            }
            return result;
        }
    }
    result.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> inputs(T);
    for (std::size_t batch = 0; batch < random_batches; ++batch) {
        // density sweeps from sparse to dense so that near-sorted inputs appear
        const double p = (static_cast<double>(batch % 15) + 1.0) / 16.0;
        std::bernoulli_distribution coin(p);
        for (std::size_t w = 0; w < T; ++w) {
            std::uint64_t word = 0;
            for (int s = 0; s < 64; ++s) word |= static_cast<std::uint64_t>(coin(rng)) << s;
            inputs[w] = word;
        }
        words = inputs;
        if (std::uint64_t bad = detail::run_bitsliced(net, words)) {
            report(bad, inputs);
            return result;
        }
    }
    return result;
}

/// True iff every comparator joins wires hosted on equal or adjacent nodes.
inline bool locality_check(const ComparatorNetwork &net, const Topology &topo,
                           std::span<const std::size_t> assign) {
    if (assign.size() < net.wire_count()) fail("wire assignment does not cover every wire");
    for (const auto &layer : net.layers()) {
        for (const auto &c : layer) {
            const std::size_t a = assign[c.lo];
            const std::size_t b = assign[c.hi];
            if (a >= topo.node_count() || b >= topo.node_count()) return false;
            if (a != b && !topo.adjacent(a, b)) return false;
        }
    }
    return true;
}

inline bool locality_check(const ComparatorNetwork &net, const Topology &topo) {
    std::vector<std::size_t> ident(net.wire_count());
    for (std::size_t i = 0; i < ident.size(); ++i) ident[i] = i;
    return locality_check(net, topo, ident);
}

/// A sorting network over the 2N packet wires of an N-node topology together
/// with the node hosting each wire. Wires 2i and 2i+1 always share a node.
struct PacketNetwork {
    ComparatorNetwork net;
    std::vector<std::size_t> wire_to_node;
};

/// Picks the packet network used for each family: bitonic on the hypercube
/// (and on power-of-two complete graphs), odd-even transposition on the line,
/// shearsort on a rows x 2cols mesh for grids.
inline PacketNetwork packet_network_for(const Topology &topo) {
    const std::size_t n = topo.node_count();
    switch (topo.family()) {
        case Family::hypercube:
            return {bitonic_network(ceil_log2(2 * n)), block_assignment(2 * n, 2)};
        case Family::complete:
            if (is_power_of_two(n)) return {bitonic_network(ceil_log2(2 * n)), block_assignment(2 * n, 2)};
            return {oets_network(2 * n), block_assignment(2 * n, 2)};
        case Family::line:
            return {oets_network(2 * n), block_assignment(2 * n, 2)};
        case Family::grid2d: {
            const std::size_t rows = topo.grid_rows();
            const std::size_t cols = topo.grid_cols();
            auto cells = grid_wire_assignment(rows, 2 * cols);
            std::vector<std::size_t> nodes(cells.size());
            for (std::size_t w = 0; w < cells.size(); ++w) {
                const std::size_t r = cells[w] / (2 * cols);
                const std::size_t c = cells[w] % (2 * cols);
                nodes[w] = r * cols + c / 2;
            }
            return {grid_network(rows, 2 * cols), std::move(nodes)};
        }
        case Family::custom:
            break;
    }
    fail("no packet sorting network for a custom topology; supply one explicitly");
}

}  // namespace qroute
