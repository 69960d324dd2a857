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
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qroute/common.hpp"

namespace qroute {

enum class Family { line, grid2d, hypercube, complete, custom };

inline std::string_view family_name(Family f) {
    switch (f) {
        case Family::line:
            return "line";
        case Family::grid2d:
            return "grid2d";
        case Family::hypercube:
            return "hypercube";
        case Family::complete:
            return "complete";
        case Family::custom:
            return "custom";
    }
    return "custom";
}

inline Family parse_family(std::string_view name) {
    if (name == "line") return Family::line;
    if (name == "grid2d" || name == "grid") return Family::grid2d;
    if (name == "hypercube") return Family::hypercube;
    if (name == "complete") return Family::complete;
    if (name == "custom") return Family::custom;
    fail("unknown topology family '", name, "'");
}

using Edge = std::pair<std::size_t, std::size_t>;

/// An undirected, connected host graph on nodes 0..n-1.
///
/// Immutable once built. Edges are stored normalized (u < v) and sorted, and an
/// adjacency list is kept alongside for O(deg) neighbour queries.
class Topology {
   public:
    /// Validates and normalizes the edge list. Throws std::invalid_argument on
    /// self-loops, duplicates, out-of-range endpoints, or a disconnected graph.
    Topology(std::size_t node_count, std::vector<Edge> edges, Family family = Family::custom,
             std::size_t grid_rows = 0, std::size_t grid_cols = 0)
        : n_(node_count), family_(family), rows_(grid_rows), cols_(grid_cols) {
        if (n_ == 0) {
            fail("topology needs at least one node");
        }
        std::set<Edge> seen;
        for (auto [u, v] : edges) {
            if (u >= n_ || v >= n_) {
                fail("edge (", u, ",", v, ") out of range for ", n_, " nodes");
            }
            if (u == v) {
                fail("self-loop at node ", u);
            }
            Edge e = std::minmax(u, v);
            if (!seen.insert(e).second) {
                fail("duplicate edge (", e.first, ",", e.second, ")");
            }
        }
        edges_.assign(seen.begin(), seen.end());
        adj_.resize(n_);
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
        }
        for (auto &row : adj_) {
            std::sort(row.begin(), row.end());
        }
        if (!connected()) {
            fail("topology is not connected");
        }
        if (family_ == Family::hypercube) {
            check_hypercube();
        }
    }

    std::size_t node_count() const { return n_; }
    const std::vector<Edge> &edges() const { return edges_; }
    Family family() const { return family_; }
    std::size_t grid_rows() const { return rows_; }
    std::size_t grid_cols() const { return cols_; }

    const std::vector<std::size_t> &neighbors(std::size_t v) const {
        if (v >= n_) {
            fail("node ", v, " out of range for ", n_, " nodes");
        }
        return adj_[v];
    }

    bool adjacent(std::size_t u, std::size_t v) const {
        if (u >= n_ || v >= n_) {
            return false;
        }
        const auto &row = adj_[u];
        return std::binary_search(row.begin(), row.end(), v);
    }

    std::size_t degree(std::size_t v) const { return neighbors(v).size(); }

    std::size_t max_degree() const {
        std::size_t best = 0;
        for (const auto &row : adj_) {
            best = std::max(best, row.size());
        }
        return best;
    }

    bool connected() const {
        std::vector<bool> seen(n_, false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        std::size_t count = 1;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t w : adj_[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == n_;
    }

    /// Row-major node index of grid cell (r, c).
    std::size_t grid_node(std::size_t r, std::size_t c) const { return r * cols_ + c; }

    /// Boustrophedon order: position k along the snake -> row-major node index.
    /// Even rows run left to right, odd rows right to left.
    std::vector<std::size_t> snake_order() const {
        if (family_ != Family::grid2d) {
            fail("snake order is only defined for grid2d topologies");
        }
        return snake_order(rows_, cols_);
    }

    static std::vector<std::size_t> snake_order(std::size_t rows, std::size_t cols) {
        std::vector<std::size_t> order;
        order.reserve(rows * cols);
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t k = 0; k < cols; ++k) {
                std::size_t c = (r % 2 == 0) ? k : cols - 1 - k;
                order.push_back(r * cols + c);
            }
        }
        return order;
    }

    friend bool operator==(const Topology &a, const Topology &b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_ && a.family_ == b.family_;
    }

   private:
    void check_hypercube() const {
        if (!is_power_of_two(n_)) {
            fail("hypercube node count ", n_, " is not a power of two");
        }
        std::size_t dims = ceil_log2(n_);
        if (edges_.size() != n_ * dims / 2) {
            fail("hypercube edge count mismatch");
        }
        for (auto [u, v] : edges_) {
            if (!is_power_of_two(u ^ v)) {
                fail("hypercube edge (", u, ",", v, ") differs in more than one bit");
            }
        }
    }

    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<std::size_t>> adj_;
    Family family_;
    std::size_t rows_;
    std::size_t cols_;
};

inline Topology make_line(std::size_t n) {
    if (n == 0) fail("line needs n >= 1");
    std::vector<Edge> edges;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        edges.emplace_back(i, i + 1);
    }
    return Topology(n, std::move(edges), Family::line, 1, n);
}

inline Topology make_grid(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) fail("grid needs positive rows and cols");
    std::vector<Edge> edges;
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            std::size_t v = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(v, v + 1);
            if (r + 1 < rows) edges.emplace_back(v, v + cols);
        }
    }
    return Topology(rows * cols, std::move(edges), Family::grid2d, rows, cols);
}

inline Topology make_hypercube(std::size_t n) {
    if (n == 0) fail("hypercube needs n >= 1");
    if (!is_power_of_two(n)) fail("hypercube node count ", n, " is not a power of two");
    std::vector<Edge> edges;
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t bit = 1; bit < n; bit <<= 1) {
            if ((v & bit) == 0) edges.emplace_back(v, v | bit);
        }
    }
    return Topology(n, std::move(edges), Family::hypercube);
}

inline Topology make_complete(std::size_t n) {
    if (n == 0) fail("complete graph needs n >= 1");
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    }
    return Topology(n, std::move(edges), Family::complete);
}

/// Size descriptor for build_topology. For grid2d, either give rows and cols
/// or only n (then a near-square factorization with rows <= cols is chosen).
struct TopologyParams {
    std::size_t n = 0;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

inline Topology build_topology(Family family, const TopologyParams &p) {
    switch (family) {
        case Family::line:
            if (p.n == 0) fail("N must be positive");
            return make_line(p.n);
        case Family::hypercube:
            if (p.n == 0) fail("N must be positive");
            return make_hypercube(p.n);
        case Family::complete:
            if (p.n == 0) fail("N must be positive");
            return make_complete(p.n);
        case Family::grid2d: {
            std::size_t rows = p.rows;
            std::size_t cols = p.cols;
            if (rows == 0 && cols == 0) {
                if (p.n == 0) fail("N must be positive");
                rows = 1;
                for (std::size_t r = 1; r * r <= p.n; ++r) {
                    if (p.n % r == 0) rows = r;
                }
                cols = p.n / rows;
            }
            if (rows == 0 || cols == 0) fail("grid needs positive rows and cols");
            if (p.n != 0 && rows * cols != p.n) {
                fail("grid rows*cols = ", rows * cols, " does not equal N = ", p.n);
            }
            return make_grid(rows, cols);
        }
        case Family::custom:
            break;
    }
    fail("custom topologies must be supplied as an edge list");
}

}  // namespace qroute
