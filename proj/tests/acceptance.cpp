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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Every random choice is seeded.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qroute/algorithms.hpp"
#include "qroute/bench.hpp"
#include "qroute/emulator.hpp"
#include "qroute/qsim.hpp"
#include "qroute/revcirc.hpp"
#include "qroute/selftest.hpp"
#include "qroute/sortnet.hpp"
#include "qroute/topology.hpp"

namespace {

using namespace qroute;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

bool valid_pair(std::span<const std::uint64_t> f, const std::optional<IndexPair> &p) {
    return p && p->first != p->second && f[p->first] == f[p->second];
}

// 1. sorting networks
void sorting_networks(Outcome &o) {
    std::size_t checked = 0;
    for (std::size_t t = 1; t <= 6; ++t) {
        auto net = bitonic_network(t);
        auto v = verify_network(net);
        o.require(v.sorted && v.exhaustive, "bitonic(" + std::to_string(t) + ") sorts");
        o.require(net.depth() == t * (t + 1) / 2, "bitonic(" + std::to_string(t) + ") layers");
        ++checked;
    }
    for (std::size_t n = 2; n <= 20; ++n) {
        auto v = verify_network(oets_network(n), 20);
        o.require(v.sorted && v.exhaustive, "oets(" + std::to_string(n) + ") sorts");
        ++checked;
    }
    o.detail << "networks=" << checked << " exhaustive";
}

// 2. data mover
void data_mover(Outcome &o) {
    std::mt19937_64 rng(2);
    EquivalenceReport total;
    for (std::size_t N : {4, 8, 16}) {
        const auto net = packet_network_for(build_topology(Family::hypercube, {.n = N})).net;
        for (std::size_t d : {1, 4}) {
            auto rep = data_mover_selftest(N, d, net, 500, 512, rng);
            o.require(rep.ok() && rep.cases >= 1000,
                      "V_N N=" + std::to_string(N) + " d=" + std::to_string(d));
            total += rep;
        }
    }
    o.detail << "cases=" << total.cases << " mismatches=" << total.mismatches << " dirty=" << total.dirty;
}

// 3. parallel lookup
void parallel_lookup(Outcome &o) {
    std::mt19937_64 rng(3);
    EquivalenceReport total;
    for (std::size_t N : {4, 8, 16}) {
        const auto net = lookup_network(N);
        for (std::size_t d : {1, 3}) {
            auto c = build_parallel_lookup(N, d, net);
            std::vector<LookupCase> cases;
            for (std::size_t k = 0; k < 1000; ++k) cases.push_back(random_lookup_case(N, d, rng));
            auto adv = adversarial_lookup_cases(N, d, rng);
            cases.insert(cases.end(), adv.begin(), adv.end());
            auto rep = check_parallel_lookup(c, N, d, cases);
            o.require(rep.ok(), "U(N,N) N=" + std::to_string(N) + " d=" + std::to_string(d));
            total += rep;
        }
    }
    o.detail << "cases=" << total.cases << " mismatches=" << total.mismatches << " dirty=" << total.dirty;
}

// 4. lookup resource scaling
void lookup_scaling(Outcome &o) {
    const std::size_t d = 4;
    std::vector<double> wm, wy, dm, dy;
    for (std::size_t N : {4, 8, 16, 32, 64}) {
        auto row = parallel_lookup_row(build_topology(Family::hypercube, {.n = N}), d);
        wm.push_back(lookup_width_model(double(N), double(d)));
        wy.push_back(double(row.width));
        dm.push_back(lookup_depth_model(double(N), double(d)));
        dy.push_back(double(row.stage_depth));
    }
    auto w = fit_constant(wm, wy);
    auto s = fit_constant(dm, dy);
    o.require(w.worst_residual <= 0.25, "width residual");
    o.require(s.worst_residual <= 0.25, "stage-depth residual");
    o.detail << "c=" << w.constant << " (resid " << w.worst_residual << ") c'=" << s.constant << " (resid "
             << s.worst_residual << ")";
}

// 5. emulation equivalence
void emulation(Outcome &o) {
    std::mt19937_64 rng(5);
    std::size_t runs = 0, good = 0;
    const Topology topos[] = {build_topology(Family::line, {.n = 8}), build_topology(Family::hypercube, {.n = 8}),
                              build_topology(Family::complete, {.n = 8})};
    for (std::size_t k = 0; k < 50; ++k) {
        const std::size_t width = 2 + rng() % 7;
        const std::size_t depth = 1 + rng() % 12;
        auto c = random_logical_circuit(width, depth, rng);
        for (const auto &topo : topos) {
            auto r = emulate(c, topo);
            const bool ok = emulation_equivalent(c, r, 1e-10, 2, k + 1) && emulation_local(r, topo);
            ++runs;
            good += ok;
        }
    }
    o.require(good == runs, "every emulated circuit equivalent and local");
    o.detail << "equivalent=" << good << '/' << runs;
}

// 6. overhead scaling
void overhead(Outcome &o) {
    const std::vector<std::size_t> sizes{8, 16, 32, 64};
    for (Family f : {Family::line, Family::hypercube, Family::complete}) {
        auto rows = overhead_report(f, sizes);
        std::vector<double> model, measured;
        for (const auto &r : rows) {
            model.push_back(overhead_model(f, double(r.N)));
            measured.push_back(r.overhead);
        }
        auto fit = monotone_fit(model, measured);
        const bool ok = fit.within;
        const double exponent = fit.exponent;
        o.require(ok, std::string(family_name(f)) + " overhead vs " + std::string(overhead_model_name(f)));
        o.detail << family_name(f) << ":slope=" << exponent << " ";
    }
}

// 7. Grover dynamics
void grover(Outcome &o) {
    double worst = 0.0;
    for (std::size_t N : {4, 16, 64}) {
        for (std::size_t M : {1, 2}) {
            const std::size_t k =
                static_cast<std::size_t>(std::floor(std::numbers::pi / 4 * std::sqrt(double(N) / double(M))));
            auto r = grover_dynamics(N, M, k);
            const double err = std::abs(r.success - grover_closed_form(double(N), double(M), k));
            worst = std::max(worst, err);
        }
    }
    o.require(worst <= 1e-9, "closed form within 1e-9");
    o.detail << "max_error=" << worst;
}

// 8. oracle composition
void composition(Outcome &o) {
    std::mt19937_64 rng(8);
    std::size_t cases = 0;
    const std::size_t d = 3;
    for (std::size_t N : {2, 4, 8, 16, 32, 64}) {
        std::vector<std::uint64_t> x(N);
        for (auto &v : x) v = rng() % (1u << d);
        x[rng() % N] = 5;
        for (std::size_t r : {1, 2}) {
            const Predicate alpha = r == 1 ? equals_target(d, 5) : entries_equal(d);
            auto oracle = compose_oracle(alpha, N, d, r);
            auto chk = check_oracle(oracle, alpha, x, d);
            o.require(chk.agrees && chk.clean, "N=" + std::to_string(N) + " r=" + std::to_string(r));
            cases += chk.cases;
        }
    }
    o.detail << "basis_cases=" << cases;
}

// 9. element distinctness
void distinctness(Outcome &o) {
    std::mt19937_64 rng(9);
    const std::size_t trials = 200;
    for (std::size_t N : {16, 32, 64}) {
        for (std::size_t S : {2, 4, 8}) {
            std::size_t ok = 0;
            double product = 0.0;
            for (std::size_t t = 0; t < trials; ++t) {
                auto f = planted_table(N, rng);
                auto r = element_distinctness(f, S, rng);
                ok += valid_pair(f, r.pair);
                product += double(S) * double(r.amplification_rounds) * double(r.per_round_stage_depth);
            }
            product /= double(trials);
            const double lg3 = std::pow(std::log2(double(N)), 3);
            const double rate = double(ok) / double(trials);
            const std::string cell = "N=" + std::to_string(N) + " S=" + std::to_string(S);
            o.require(3 * ok >= 2 * trials, cell + " success");
            o.require(product >= double(N) / lg3 && product <= double(N) * lg3, cell + " cost band");
            o.detail << cell << ":" << rate << "/" << product << " ";
        }
    }
}

// 10. collision finding
void collision(Outcome &o) {
    std::mt19937_64 rng(10);
    const std::size_t trials = 200;
    for (std::size_t N : {16, 32}) {
        std::size_t ok = 0, one_to_one = 0;
        for (std::size_t t = 0; t < trials; ++t) {
            auto f = pairing_table(N, rng);
            ok += valid_pair(f, collision_finding(f, 4, rng).pair);
            auto g = pairing_table(N, rng, true);
            one_to_one += !collision_finding(g, 4, rng).pair;
        }
        o.require(3 * ok >= 2 * trials, "N=" + std::to_string(N) + " 2-1 success");
        o.require(one_to_one == trials, "N=" + std::to_string(N) + " 1-1 reported one-to-one");
        o.detail << "N=" << N << ":found=" << ok << "/" << trials << " one_to_one=" << one_to_one << "/" << trials
                 << " ";
    }
}

// 11. reversible vs statevector simulation
ReversibleCircuit random_circuit(std::mt19937_64 &rng, std::size_t width, std::size_t gates) {
    CircuitBuilder b;
    b.add_register("q", width, RegisterKind::inout);
    for (std::size_t g = 0; g < gates; ++g) {
        auto k = static_cast<GateKind>(rng() % 5);
        if (arity(k) > width) k = GateKind::X;
        std::vector<Bit> pool(width);
        std::iota(pool.begin(), pool.end(), Bit{0});
        std::shuffle(pool.begin(), pool.end(), rng);
        b.add(Gate{k, {pool[0], width > 1 ? pool[1] : 0, width > 2 ? pool[2] : 0}});
    }
    return std::move(b).build();
}

void cross_simulator(Outcome &o) {
    std::mt19937_64 rng(11);
    std::size_t inputs = 0, mismatches = 0, circuits = 0;
    for (std::size_t width = 1; width <= 12; ++width) {
        const std::size_t reps = width <= 8 ? 4 : 1;
        for (std::size_t rep = 0; rep < reps; ++rep) {
            auto c = random_circuit(rng, width, 3 * width + 2);
            auto q = to_quantum(c);
            ++circuits;
            const std::uint64_t total = std::uint64_t{1} << width;
            std::vector<std::uint64_t> state(width);
            for (std::uint64_t base = 0; base < total; base += 64) {
                const std::size_t lanes = std::min<std::uint64_t>(64, total - base);
                for (std::size_t w = 0; w < width; ++w) {
                    std::uint64_t word = 0;
                    for (std::size_t s = 0; s < lanes; ++s) word |= (((base + s) >> w) & 1) << s;
                    state[w] = word;
                }
                simulate_batch(c, state);
                for (std::size_t s = 0; s < lanes; ++s) {
                    std::uint64_t want = 0;
                    for (std::size_t w = 0; w < width; ++w) want |= ((state[w] >> s) & 1) << w;
                    auto sv = Statevector::basis(width, base + s);
                    sv.apply(q);
                    mismatches += std::abs(sv.probability(want) - 1.0) > 1e-12;
                    ++inputs;
                }
            }
        }
    }
    o.require(mismatches == 0, "every basis input maps identically");
    o.detail << "circuits=" << circuits << " basis_inputs=" << inputs << " mismatches=" << mismatches;
}

}  // namespace

int main() {
    struct Criterion {
        const char *name;
        std::function<void(Outcome &)> run;
    };
    const std::vector<Criterion> criteria{
        {"sorting-network correctness", sorting_networks},
        {"data-mover oracle equivalence", data_mover},
        {"parallel-lookup oracle equivalence", parallel_lookup},
        {"parallel-lookup resource scaling", lookup_scaling},
        {"emulation equivalence", emulation},
        {"overhead scaling", overhead},
        {"grover dynamics", grover},
        {"oracle composition", composition},
        {"element distinctness", distinctness},
        {"collision finding", collision},
        {"cross-simulator agreement", cross_simulator},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(o);
        } catch (const std::exception &e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += !o.pass;
        std::printf("%s %2zu %-36s %6.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                    o.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - std::size_t(failed), criteria.size());
    return failed ? 1 : 0;
}
