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

#include "qroute/bench.hpp"

#include <cmath>
#include <vector>

#include "gtest/gtest.h"

using namespace qroute;

TEST(Fits, ConstantFitRecoversExactMultiple) {
    std::vector<double> model{1, 2, 4, 8}, y{3, 6, 12, 24};
    auto f = fit_constant(model, y);
    EXPECT_NEAR(f.constant, 3.0, 1e-12);
    EXPECT_NEAR(f.worst_residual, 0.0, 1e-12);
    // one point 21% high shifts the geometric mean by a quarter of that in log space
    y[3] = 24 * 1.21;
    f = fit_constant(model, y);
    EXPECT_NEAR(f.constant, 3.0 * std::pow(1.21, 0.25), 1e-12);
    EXPECT_GT(f.residuals[3], 0.0);
    EXPECT_LT(f.residuals[0], 0.0);
    EXPECT_THROW(fit_constant(std::vector<double>{1}, std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(fit_constant(std::vector<double>{1}, std::vector<double>{0}), std::invalid_argument);
}

TEST(Fits, PowerFitSlope) {
    std::vector<double> x{2, 4, 8, 16}, y;
    for (double v : x) y.push_back(5 * v * v);
    auto f = fit_power(x, y);
    EXPECT_NEAR(f.exponent, 2.0, 1e-12);
    EXPECT_NEAR(std::exp(f.log_constant), 5.0, 1e-9);
    EXPECT_THROW(fit_power(std::vector<double>{2, 2}, std::vector<double>{1, 3}), std::invalid_argument);
}

TEST(Fits, MonotoneFitRejectsFasterGrowthAndDips) {
    std::vector<double> model{8, 16, 32, 64};
    EXPECT_TRUE(monotone_fit(model, std::vector<double>{9, 17, 35, 66}).within);
    EXPECT_FALSE(monotone_fit(model, std::vector<double>{8, 32, 128, 512}).within);
    auto dip = monotone_fit(model, std::vector<double>{8, 6, 32, 64});
    EXPECT_FALSE(dip.monotone);
    EXPECT_FALSE(dip.within);
    auto flat = monotone_fit(model, std::vector<double>{1, 1, 1, 1});
    EXPECT_TRUE(flat.within);
    EXPECT_NEAR(flat.exponent, 0.0, 1e-12);
}

TEST(Series, SortLayersMatchNetworkFormulas) {
    for (std::size_t t = 2; t <= 6; ++t) {
        auto row = sort_layers_row(build_topology(Family::hypercube, {.n = std::size_t{1} << t}));
        EXPECT_EQ(row.depth, t * (t + 1) / 2);
    }
    EXPECT_EQ(sort_layers_row(build_topology(Family::line, {.n = 12})).depth, 12u);
    auto packet = packet_layers_row(build_topology(Family::hypercube, {.n = 8}));
    EXPECT_EQ(packet.width, 16u);
    EXPECT_EQ(packet.depth, 10u);
}

TEST(Series, LookupAndMoverRowsAreConsistent) {
    auto topo = build_topology(Family::hypercube, {.n = 8});
    auto lookup = parallel_lookup_row(topo, 2);
    auto mover = data_mover_row(topo, 2);
    EXPECT_EQ(lookup.N, 8u);
    EXPECT_GT(lookup.width, mover.width);
    EXPECT_GE(lookup.depth, lookup.stage_depth);
    EXPECT_GT(mover.stage_depth, 0u);
    EXPECT_DOUBLE_EQ(lookup_width_model(8, 2), 8 * 5.0);
    EXPECT_DOUBLE_EQ(overhead_model(Family::hypercube, 16), 16.0);
    EXPECT_DOUBLE_EQ(overhead_model(Family::complete, 16), 4.0);
    EXPECT_EQ(overhead_model_name(Family::line), "N");
}
