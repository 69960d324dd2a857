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

// Resource series and the fits used to compare them with growth models.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "qroute/common.hpp"
#include "qroute/datamove.hpp"
#include "qroute/emulator.hpp"
#include "qroute/pram.hpp"
#include "qroute/sortnet.hpp"
#include "qroute/topology.hpp"

namespace qroute {

/// y ~ c * model, with c the geometric-mean ratio (least squares on
/// log y - log model). Residuals are relative: y / (c * model) - 1.
struct ConstantFit {
    double constant = 0.0;
    double worst_residual = 0.0;
    std::vector<double> residuals;
};

inline ConstantFit fit_constant(std::span<const double> model, std::span<const double> measured) {
    if (model.size() != measured.size() || model.empty()) fail("fit needs matching non-empty series");
    double acc = 0.0;
    for (std::size_t i = 0; i < model.size(); ++i) {
        if (model[i] <= 0 || measured[i] <= 0) fail("fit needs positive values");
        acc += std::log(measured[i]) - std::log(model[i]);
    }
    ConstantFit f;
    f.constant = std::exp(acc / double(model.size()));
    for (std::size_t i = 0; i < model.size(); ++i) {
        const double r = measured[i] / (f.constant * model[i]) - 1.0;
        f.residuals.push_back(r);
        f.worst_residual = std::max(f.worst_residual, std::abs(r));
    }
    return f;
}

/// Least-squares slope and intercept of log y against log x.
struct PowerFit {
    double exponent = 0.0;
    double log_constant = 0.0;
};

inline PowerFit fit_power(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) fail("power fit needs at least two matching points");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0 || y[i] <= 0) fail("power fit needs positive values");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / double(lx.size());
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / double(ly.size());
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) fail("power fit needs distinct x values");
    PowerFit f;
    f.exponent = sxy / sxx;
    f.log_constant = my - f.exponent * mx;
    return f;
}

/// Growth check for "measured grows no faster than model": the measured
/// series is non-decreasing and its log-log slope against the model is at
/// most 1 + slack.
struct MonotoneFit {
    bool monotone = true;
    double exponent = 0.0;  // slope of log measured vs log model
    bool within = false;
};

inline MonotoneFit monotone_fit(std::span<const double> model, std::span<const double> measured, double slack = 0.15) {
    MonotoneFit f;
    for (std::size_t i = 1; i < measured.size(); ++i) f.monotone = f.monotone && measured[i] >= measured[i - 1];
    f.exponent = fit_power(model, measured).exponent;
    f.within = f.monotone && f.exponent <= 1.0 + slack;
    return f;
}

struct SeriesRow {
    std::string series;
    std::string family;
    std::size_t N = 0;
    std::size_t d = 0;
    std::size_t depth = 0;
    std::size_t size = 0;
    std::size_t width = 0;
    std::size_t stage_depth = 0;
};

/// Sorting network with one wire per node: bitonic on power-of-two
/// hypercubes and complete graphs, row/column phases on grids, odd-even
/// transposition otherwise.
inline ComparatorNetwork node_sort_network(const Topology &topo) {
    const std::size_t N = topo.node_count();
    switch (topo.family()) {
        case Family::hypercube: return bitonic_network(ceil_log2(N));
        case Family::complete:
            if (is_power_of_two(N)) return bitonic_network(ceil_log2(N));
            return oets_network(N);
        case Family::grid2d: return grid_network(topo.grid_rows(), topo.grid_cols());
        default: return oets_network(N);
    }
}

/// Layers D_G of the N-wire sorting network for the family.
inline SeriesRow sort_layers_row(const Topology &topo) {
    auto net = node_sort_network(topo);
    return {"sort_layers", std::string(family_name(topo.family())), topo.node_count(), 0, net.depth(),
            net.comparator_count(), net.wire_count(), net.depth()};
}

/// Layers of the 2N-wire packet network the lookups and movers use.
inline SeriesRow packet_layers_row(const Topology &topo) {
    auto pn = packet_network_for(topo);
    return {"packet_layers", std::string(family_name(topo.family())), topo.node_count(), 0, pn.net.depth(),
            pn.net.comparator_count(), pn.net.wire_count(), pn.net.depth()};
}

/// V_N with a fixed reversal permutation (the circuit shape does not depend
/// on the permutation).
inline SeriesRow data_mover_row(const Topology &topo, std::size_t d) {
    auto pn = packet_network_for(topo);
    const std::size_t N = topo.node_count();
    std::vector<std::size_t> perm(N);
    for (std::size_t i = 0; i < N; ++i) perm[i] = N - 1 - i;
    auto m = metrics(build_data_mover(N, d, pn.net, perm).circuit);
    return {"data_mover", std::string(family_name(topo.family())), N, d, m.depth, m.size, m.width, m.stage_depth};
}

inline SeriesRow parallel_lookup_row(const Topology &topo, std::size_t d) {
    auto pn = packet_network_for(topo);
    auto m = metrics(build_parallel_lookup(topo.node_count(), d, pn.net));
    return {"parallel_lookup", std::string(family_name(topo.family())), topo.node_count(), d, m.depth, m.size, m.width,
            m.stage_depth};
}

/// Width and stage-depth models for U(N,N).
inline double lookup_width_model(double N, double d) { return N * (std::log2(N) + d); }
inline double lookup_depth_model(double N, double d) { return std::log2(N) * std::log2(d * std::log2(N)); }

/// Per-timeslice overhead models by family.
inline double overhead_model(Family f, double N) {
    const double lg = std::log2(N);
    switch (f) {
        case Family::line: return N;
        case Family::grid2d: return std::sqrt(N);
        case Family::hypercube: return lg * lg;
        case Family::complete: return lg;
        default: return N;
    }
}

inline std::string_view overhead_model_name(Family f) {
    switch (f) {
        case Family::line: return "N";
        case Family::grid2d: return "sqrt(N)";
        case Family::hypercube: return "log2(N)^2";
        case Family::complete: return "log2(N)";
        default: return "N";
    }
}

}  // namespace qroute
