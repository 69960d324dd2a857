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

// qroute command-line driver. Exit codes: 0 success, 1 invalid input or
// usage, 2 a requested self-test failed.

#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qroute/algorithms.hpp"
#include "qroute/bench.hpp"
#include "qroute/datamove.hpp"
#include "qroute/emulator.hpp"
#include "qroute/json_io.hpp"
#include "qroute/pram.hpp"
#include "qroute/qsim.hpp"
#include "qroute/selftest.hpp"
#include "qroute/sortnet.hpp"
#include "qroute/topology.hpp"

#ifndef QROUTE_VERSION
#define QROUTE_VERSION "unknown"
#endif

using namespace qroute;

namespace {

constexpr int kOk = 0;
constexpr int kSelfTestFailed = 2;

const char *version() { return QROUTE_VERSION; }

/// Collects CSV text; written to a file, or to stdout when the path is "-".
class Csv {
   public:
    explicit Csv(std::string header) { out_ << "seed," << header << ",version\n"; }

    template <typename... Ts>
    void row(std::uint64_t seed, const Ts &...cols) {
        out_ << seed;
        ((out_ << ',' << cols), ...);
        out_ << ',' << version() << '\n';
    }

    void save(const std::string &path) const {
        if (path.empty()) return;
        if (path == "-") {
            std::cout << out_.str();
        } else {
            write_text_file(path, out_.str());
        }
    }

   private:
    std::ostringstream out_;
};

std::string fixed(double v, int digits = 6) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

void save_json(const std::string &path, const Json &j) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_text_file(path, j.dump(2) + "\n");
    }
}

struct TopoArgs {
    std::string file;
    std::string family;
    std::size_t n = 0, rows = 0, cols = 0;

    void add(CLI::App *cmd) {
        cmd->add_option("--topo", file, "topology JSON file");
        cmd->add_option("--family", family, "line | grid2d | hypercube | complete (instead of --topo)");
        cmd->add_option("--n", n, "node count");
        cmd->add_option("--rows", rows, "grid rows");
        cmd->add_option("--cols", cols, "grid columns");
    }

    Topology get() const {
        if (!file.empty()) return topology_from_json(read_json_file(file));
        if (family.empty()) fail("give --topo FILE or --family with --n");
        return build_topology(parse_family(family), {.n = n, .rows = rows, .cols = cols});
    }
};

// ---------------------------------------------------------------- topo

int cmd_topo(const TopoArgs &t, const std::string &out) {
    auto topo = t.get();
    std::size_t deg = 0;
    for (std::size_t v = 0; v < topo.node_count(); ++v) deg = std::max(deg, topo.neighbors(v).size());
    std::cout << "family=" << family_name(topo.family()) << " nodes=" << topo.node_count()
              << " edges=" << topo.edges().size() << " max_degree=" << deg << '\n';
    save_json(out, topology_to_json(topo));
    return kOk;
}

// ---------------------------------------------------------------- sortnet

struct SortnetArgs {
    std::string kind = "bitonic";
    std::size_t t = 0, n = 0, rows = 0, cols = 0;
    std::string topo;
    bool verify = false;
    std::string out;
};

int cmd_sortnet(const SortnetArgs &a) {
    ComparatorNetwork net;
    std::optional<PacketNetwork> pn;
    std::optional<Topology> topo;
    if (a.kind == "bitonic") {
        if (a.t == 0) fail("bitonic needs --t >= 1");
        net = bitonic_network(a.t);
    } else if (a.kind == "oets") {
        if (a.n == 0) fail("oets needs --n >= 1");
        net = oets_network(a.n);
    } else if (a.kind == "grid") {
        if (a.rows == 0 || a.cols == 0) fail("grid needs --rows and --cols");
        net = grid_network(a.rows, a.cols);
    } else if (a.kind == "packet") {
        if (a.topo.empty()) fail("packet needs --topo");
        topo = topology_from_json(read_json_file(a.topo));
        pn = packet_network_for(*topo);
        net = pn->net;
    } else {
        fail("unknown network kind '", a.kind, "'");
    }
    std::cout << "layers=" << net.depth() << " comparators=" << net.comparator_count();
    bool ok = true;
    if (a.verify) {
        auto v = verify_network(net);
        ok = v.sorted;
        std::cout << " verified=" << (v.sorted ? "true" : "false");
        if (!v.exhaustive) std::cout << " (sampled)";
    }
    if (pn) {
        const bool local = locality_check(net, *topo, pn->wire_to_node);
        ok = ok && local;
        std::cout << " local=" << (local ? "true" : "false");
    }
    std::cout << '\n';
    save_json(a.out, network_to_json(net));
    return ok ? kOk : kSelfTestFailed;
}

// ---------------------------------------------------------------- move

struct MoveArgs {
    TopoArgs topo;
    std::string perm;
    std::size_t d = 4;
    std::string emit, metrics;
    std::size_t selftest = 0;
    std::uint64_t seed = 1;
};

int cmd_move(const MoveArgs &a) {
    auto topo = a.topo.get();
    auto pn = packet_network_for(topo);
    const std::size_t N = topo.node_count();
    std::optional<std::vector<std::size_t>> perm;
    if (!a.perm.empty()) perm = read_json_file(a.perm).get<std::vector<std::size_t>>();
    auto hosted = perm ? build_data_mover(N, a.d, pn.net, *perm) : build_data_mover(N, a.d, pn.net);
    auto m = metrics(hosted.circuit);
    const bool local = gates_local(hosted.circuit, bit_nodes(hosted, pn.wire_to_node), topo);
    std::cout << "N=" << N << " d=" << a.d << " stage_depth=" << m.stage_depth << " depth=" << m.depth
              << " size=" << m.size << " width=" << m.width << " local=" << (local ? "true" : "false") << '\n';
    int rc = local ? kOk : kSelfTestFailed;
    if (a.selftest > 0) {
        std::mt19937_64 rng(a.seed);
        std::vector<std::vector<std::size_t>> ps;
        std::vector<std::vector<std::uint64_t>> xs;
        for (std::size_t t = 0; t < a.selftest; ++t) {
            xs.push_back(random_words(N, a.d, rng));
            if (!perm) ps.push_back(random_permutation(N, rng));
        }
        if (perm) ps.push_back(*perm);
        auto rep = check_data_mover(hosted.circuit, N, a.d, ps, xs);
        std::cout << "selftest cases=" << rep.cases << " mismatches=" << rep.mismatches << " dirty=" << rep.dirty
                  << '\n';
        if (!rep.ok()) rc = kSelfTestFailed;
    }
    save_json(a.emit, circuit_to_json(hosted.circuit));
    Csv csv("name,N,d,depth,size,width,stage_depth");
    csv.row(a.seed, perm ? "data_mover" : "data_mover_quantum", N, a.d, m.depth, m.size, m.width, m.stage_depth);
    csv.save(a.metrics);
    return rc;
}

// ---------------------------------------------------------------- pram

struct PramArgs {
    std::size_t n = 8, d = 4;
    std::string net = "auto";
    std::string selftest = "none";
    std::size_t cases = 1000;
    bool single = false;
    std::string emit, metrics;
    std::uint64_t seed = 1;
};

int cmd_pram(const PramArgs &a) {
    if (a.n < 2) fail("--n must be at least 2");
    ComparatorNetwork net;
    if (a.net == "auto") {
        net = lookup_network(a.n);
    } else if (a.net == "bitonic") {
        if (!is_power_of_two(2 * a.n)) fail("bitonic needs N a power of two");
        net = bitonic_network(ceil_log2(2 * a.n));
    } else if (a.net == "oets") {
        net = oets_network(2 * a.n);
    } else {
        fail("unknown --net '", a.net, "'");
    }
    auto c = a.single ? build_single_lookup_via_parallel(a.n, a.d, net) : build_parallel_lookup(a.n, a.d, net);
    auto m = metrics(c);
    std::cout << (a.single ? "U(1,N)" : "U(N,N)") << " N=" << a.n << " d=" << a.d << " stage_depth=" << m.stage_depth
              << " depth=" << m.depth << " size=" << m.size << " width=" << m.width << '\n';
    int rc = kOk;
    if (a.selftest != "none") {
        if (a.single) fail("--selftest applies to the parallel lookup");
        std::mt19937_64 rng(a.seed);
        std::vector<LookupCase> cases;
        if (a.selftest == "adversarial" || a.selftest == "all") cases = adversarial_lookup_cases(a.n, a.d, rng);
        if (a.selftest == "random" || a.selftest == "all")
            for (std::size_t t = 0; t < a.cases; ++t) cases.push_back(random_lookup_case(a.n, a.d, rng));
        if (cases.empty()) fail("unknown --selftest '", a.selftest, "'");
        auto rep = check_parallel_lookup(c, a.n, a.d, cases);
        std::cout << "selftest " << a.selftest << " cases=" << rep.cases << " mismatches=" << rep.mismatches
                  << " dirty=" << rep.dirty << '\n';
        if (!rep.ok()) rc = kSelfTestFailed;
    }
    save_json(a.emit, circuit_to_json(c));
    Csv csv("name,N,d,depth,size,width,stage_depth");
    csv.row(a.seed, a.single ? "single_lookup" : "parallel_lookup", a.n, a.d, m.depth, m.size, m.width, m.stage_depth);
    csv.save(a.metrics);
    return rc;
}

// ---------------------------------------------------------------- emulate

struct EmulateArgs {
    std::string circuit;
    TopoArgs topo;
    std::size_t random_depth = 0;
    std::string report;
    bool verify = false;
    bool no_skip = false;
    std::uint64_t seed = 1;
};

int cmd_emulate(const EmulateArgs &a) {
    auto topo = a.topo.get();
    std::mt19937_64 rng(a.seed);
    LogicalCircuit c;
    if (!a.circuit.empty()) {
        c = logical_from_json(read_json_file(a.circuit));
    } else if (a.random_depth > 0) {
        c = random_logical_circuit(topo.node_count(), a.random_depth, rng);
    } else {
        fail("give --circuit FILE or --random DEPTH");
    }
    auto r = emulate(c, topo, {.skip_adjacent = !a.no_skip});
    const bool local = emulation_local(r, topo);
    std::cout << "family=" << family_name(topo.family()) << " N=" << topo.node_count()
              << " logical_depth=" << r.logical_depth << " stage_depth=" << r.stage_depth
              << " overhead=" << fixed(r.overhead(), 3) << " local=" << (local ? "true" : "false");
    int rc = local ? kOk : kSelfTestFailed;
    std::string eq = "unchecked";
    if (a.verify) {
        const bool ok = emulation_equivalent(c, r, 1e-10, 4, a.seed);
        eq = ok ? "true" : "false";
        std::cout << " equivalent=" << eq;
        if (!ok) rc = kSelfTestFailed;
    }
    std::cout << '\n';
    Csv csv("family,N,width,logical_depth,stage_depth,max_slice_stage_depth,overhead,equivalent");
    csv.row(a.seed, family_name(topo.family()), topo.node_count(), c.width, r.logical_depth, r.stage_depth,
            r.max_slice_stage_depth, fixed(r.overhead()), eq);
    csv.save(a.report.empty() ? "-" : a.report);
    return rc;
}

// ---------------------------------------------------------------- grover

struct GroverArgs {
    std::size_t n = 16, m = 1;
    std::string iters = "auto";
    std::string csv;
};

int cmd_grover(const GroverArgs &a) {
    if (a.m > a.n) fail("--m exceeds --n");
    std::size_t k = 0;
    if (a.iters == "auto") {
        k = grover_iterations(double(a.n), double(a.m));
    } else {
        try {
            k = std::stoul(a.iters);
        } catch (const std::exception &) {
            fail("--iters must be 'auto' or a count");
        }
    }
    auto r = grover_dynamics(a.n, a.m, k);
    const double err = std::abs(r.success - r.closed_form);
    std::cout << "N=" << a.n << " M=" << a.m << " iterations=" << k << " success=" << fixed(r.success, 12)
              << " closed_form=" << fixed(r.closed_form, 12) << " abs_error=" << std::scientific << err << '\n';
    Csv csv("N,M,iterations,success,closed_form");
    csv.row(0, a.n, a.m, k, fixed(r.success, 12), fixed(r.closed_form, 12));
    csv.save(a.csv);
    return err <= 1e-9 ? kOk : kSelfTestFailed;
}

// ---------------------------------------------------------------- distinct / collision

struct SearchArgs {
    std::size_t n = 16, s = 4, trials = 200;
    std::uint64_t seed = 1;
    std::string csv;
    bool injective = false;
    bool direct = false;
};

int cmd_distinct(const SearchArgs &a) {
    std::mt19937_64 rng(a.seed);
    Csv csv("N,S,success,oracle_calls,stage_depth,width,trial,amplification_rounds");
    std::size_t ok = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        auto f = planted_table(a.n, rng, a.injective);
        auto r = element_distinctness(f, a.s, rng);
        const bool found = r.pair && r.pair->first != r.pair->second && f[r.pair->first] == f[r.pair->second];
        const bool success = a.injective ? !r.pair : found;
        ok += success;
        csv.row(a.seed, a.n, a.s, success ? 1 : 0, r.ledger.oracle_calls, r.ledger.stage_depth, r.ledger.width, t,
                r.amplification_rounds);
    }
    std::cout << "N=" << a.n << " S=" << a.s << " trials=" << a.trials << " success=" << ok << '/' << a.trials
              << " rate=" << fixed(double(ok) / double(std::max<std::size_t>(1, a.trials)), 4) << '\n';
    csv.save(a.csv);
    return kOk;
}

int cmd_collision(const SearchArgs &a) {
    std::mt19937_64 rng(a.seed);
    Csv csv("N,S,success,oracle_calls,stage_depth,width,trial,result");
    std::size_t ok = 0;
    for (std::size_t t = 0; t < a.trials; ++t) {
        auto f = pairing_table(a.n, rng, a.injective);
        auto r = a.direct ? collision_finding_direct(f, a.s, rng) : collision_finding(f, a.s, rng);
        const bool valid = r.pair && r.pair->first != r.pair->second && f[r.pair->first] == f[r.pair->second];
        const bool success = a.injective ? !r.pair : valid;
        ok += success;
        std::string result = r.pair ? std::to_string(r.pair->first) + ":" + std::to_string(r.pair->second) : "one-to-one";
        csv.row(a.seed, a.n, a.s, success ? 1 : 0, r.ledger.oracle_calls, r.ledger.stage_depth, r.ledger.width, t,
                result);
    }
    std::cout << "N=" << a.n << " S=" << a.s << " path=" << (a.direct ? "direct" : "reduction") << " trials=" << a.trials
              << " success=" << ok << '/' << a.trials << '\n';
    csv.save(a.csv);
    return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::vector<std::size_t> sizes{4, 8, 16, 32, 64};
    std::vector<std::string> families{"hypercube", "line", "complete"};
    std::size_t d = 4;
    std::string csv = "-";
    std::string fits;
    bool overhead = false;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs &a) {
    Csv csv("series,family,N,d,depth,size,width,stage_depth");
    Csv fits("series,family,model,constant,worst_residual,exponent");
    for (const auto &fam_name : a.families) {
        const Family fam = parse_family(fam_name);
        std::vector<double> ns, layers, lw, lwm, ld, ldm;
        std::vector<SeriesRow> rows;
        for (std::size_t N : a.sizes) {
            if (fam == Family::hypercube && !is_power_of_two(N)) fail("hypercube sizes must be powers of two");
            auto topo = build_topology(fam, {.n = N});
            rows.push_back(sort_layers_row(topo));
            rows.push_back(packet_layers_row(topo));
            rows.push_back(data_mover_row(topo, a.d));
            auto pl = parallel_lookup_row(topo, a.d);
            rows.push_back(pl);
            ns.push_back(double(N));
            layers.push_back(double(node_sort_network(topo).depth()));
            if (N >= 2) {
                lw.push_back(double(pl.width));
                lwm.push_back(lookup_width_model(double(N), double(a.d)));
                ld.push_back(double(pl.stage_depth));
                ldm.push_back(lookup_depth_model(double(N), double(a.d)));
            }
        }
        for (const auto &r : rows) csv.row(a.seed, r.series, r.family, r.N, r.d, r.depth, r.size, r.width, r.stage_depth);
        if (ns.size() >= 2) {
            auto pf = fit_power(ns, layers);
            fits.row(a.seed, "sort_layers", fam_name, "N^a", fixed(std::exp(pf.log_constant)), "", fixed(pf.exponent, 4));
            std::vector<double> log_n;
            for (double n : ns) log_n.push_back(std::log2(n));
            auto lf = fit_power(log_n, layers);
            fits.row(a.seed, "sort_layers", fam_name, "log2(N)^a", fixed(std::exp(lf.log_constant)), "",
                     fixed(lf.exponent, 4));
            std::cout << fam_name << ": sort layers ~ N^" << fixed(pf.exponent, 3) << " ~ log2(N)^"
                      << fixed(lf.exponent, 3) << '\n';
        }
        if (!lw.empty()) {
            auto wf = fit_constant(lwm, lw);
            auto df = fit_constant(ldm, ld);
            fits.row(a.seed, "parallel_lookup_width", fam_name, "N(log2 N + d)", fixed(wf.constant), fixed(wf.worst_residual),
                     "");
            fits.row(a.seed, "parallel_lookup_stage_depth", fam_name, "log2 N log2(d log2 N)", fixed(df.constant),
                     fixed(df.worst_residual), "");
            std::cout << fam_name << ": U(N,N) width c=" << fixed(wf.constant, 3) << " (worst residual "
                      << fixed(wf.worst_residual, 3) << "), stage-depth c'=" << fixed(df.constant, 3)
                      << " (worst residual " << fixed(df.worst_residual, 3) << ")\n";
        }
        if (a.overhead) {
            std::vector<std::size_t> sizes;
            for (std::size_t N : a.sizes)
                if (N >= 4) sizes.push_back(N);
            auto orows = overhead_report(fam, sizes, 8, a.seed);
            std::vector<double> model, meas;
            for (const auto &r : orows) {
                csv.row(a.seed, "emulation_overhead", fam_name, r.N, 0, r.sort_depth, 0, 2 * r.N,
                        static_cast<std::size_t>(r.overhead));
                model.push_back(overhead_model(fam, double(r.N)));
                meas.push_back(r.overhead);
            }
            if (model.size() >= 2) {
                auto mf = monotone_fit(model, meas);
                fits.row(a.seed, "emulation_overhead", fam_name, overhead_model_name(fam), "", "", fixed(mf.exponent, 4));
                std::cout << fam_name << ": overhead ~ (" << overhead_model_name(fam) << ")^" << fixed(mf.exponent, 3)
                          << '\n';
            }
        }
    }
    csv.save(a.csv);
    fits.save(a.fits);
    return kOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qroute: sorting-network routing, lookup and emulation toolkit"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    std::function<int()> action;

    std::string topo_out;
    TopoArgs topo_args;
    auto *topo = app.add_subcommand("topo", "build a host graph and write its JSON");
    topo_args.add(topo);
    topo->add_option("--out", topo_out, "output JSON path ('-' for stdout)");
    topo->callback([&] { action = [&] { return cmd_topo(topo_args, topo_out); }; });

    SortnetArgs sn;
    auto *sortnet = app.add_subcommand("sortnet", "build and verify a comparator network");
    sortnet->add_option("--kind", sn.kind, "bitonic | oets | grid | packet")->capture_default_str();
    sortnet->add_option("--t", sn.t, "bitonic order (2^t wires)");
    sortnet->add_option("--n", sn.n, "oets wire count");
    sortnet->add_option("--rows", sn.rows, "grid rows");
    sortnet->add_option("--cols", sn.cols, "grid columns");
    sortnet->add_option("--topo", sn.topo, "topology JSON (kind packet)");
    sortnet->add_flag("--verify", sn.verify, "0-1 verification");
    sortnet->add_option("--out", sn.out, "network JSON path");
    sortnet->callback([&] { action = [&] { return cmd_sortnet(sn); }; });

    MoveArgs mv;
    auto *move = app.add_subcommand("move", "compile the data mover V_N for a topology");
    mv.topo.add(move);
    move->add_option("--perm", mv.perm, "JSON array, output i takes input perm[i]; omit for index-register input");
    move->add_option("--d", mv.d, "data bits per node")->capture_default_str();
    move->add_option("--emit", mv.emit, "circuit JSON path");
    move->add_option("--metrics", mv.metrics, "metrics CSV path ('-' for stdout)");
    move->add_option("--selftest", mv.selftest, "random cases to simulate")->capture_default_str();
    move->add_option("--seed", mv.seed)->capture_default_str();
    move->callback([&] { action = [&] { return cmd_move(mv); }; });

    PramArgs pr;
    auto *pram = app.add_subcommand("pram", "compile the parallel lookup U(N,N)");
    pram->add_option("--n", pr.n)->capture_default_str();
    pram->add_option("--d", pr.d)->capture_default_str();
    pram->add_option("--net", pr.net, "auto | bitonic | oets")->capture_default_str();
    pram->add_option("--selftest", pr.selftest, "none | adversarial | random | all")->capture_default_str();
    pram->add_option("--cases", pr.cases, "random cases for --selftest random")->capture_default_str();
    pram->add_flag("--single", pr.single, "build U(1,N) on top of U(N,N)");
    pram->add_option("--emit", pr.emit, "circuit JSON path");
    pram->add_option("--metrics", pr.metrics, "metrics CSV path ('-' for stdout)");
    pram->add_option("--seed", pr.seed)->capture_default_str();
    pram->callback([&] { action = [&] { return cmd_pram(pr); }; });

    EmulateArgs em;
    auto *emul = app.add_subcommand("emulate", "emulate a logical circuit on a topology");
    emul->add_option("--circuit", em.circuit, "logical circuit JSON");
    em.topo.add(emul);
    emul->add_option("--random", em.random_depth, "random {H,T,CNOT} circuit of this depth instead of --circuit");
    emul->add_option("--report", em.report, "overhead CSV path (default stdout)");
    emul->add_flag("--verify", em.verify, "statevector equivalence check");
    emul->add_flag("--no-skip", em.no_skip, "move partners even when nodes are adjacent");
    emul->add_option("--seed", em.seed)->capture_default_str();
    emul->callback([&] { action = [&] { return cmd_emulate(em); }; });

    GroverArgs gr;
    auto *grover = app.add_subcommand("grover", "simulate Grover iterations");
    grover->add_option("--n", gr.n, "search space size (power of two)")->capture_default_str();
    grover->add_option("--m", gr.m, "marked items")->capture_default_str();
    grover->add_option("--iters", gr.iters, "'auto' or a count")->capture_default_str();
    grover->add_option("--csv", gr.csv, "CSV path ('-' for stdout)");
    grover->callback([&] { action = [&] { return cmd_grover(gr); }; });

    SearchArgs ed;
    auto *distinct = app.add_subcommand("distinct", "element distinctness trials on planted tables");
    distinct->add_option("--n", ed.n)->capture_default_str();
    distinct->add_option("--s", ed.s)->capture_default_str();
    distinct->add_option("--trials", ed.trials)->capture_default_str();
    distinct->add_option("--seed", ed.seed)->capture_default_str();
    distinct->add_option("--csv", ed.csv, "per-trial CSV path ('-' for stdout)");
    distinct->add_flag("--injective", ed.injective, "use collision-free tables");
    distinct->callback([&] { action = [&] { return cmd_distinct(ed); }; });

    SearchArgs co;
    auto *collision = app.add_subcommand("collision", "collision finding trials on 2-1 (or 1-1) tables");
    collision->add_option("--n", co.n)->capture_default_str();
    collision->add_option("--s", co.s)->capture_default_str();
    collision->add_option("--trials", co.trials)->capture_default_str();
    collision->add_option("--seed", co.seed)->capture_default_str();
    collision->add_option("--csv", co.csv, "per-trial CSV path ('-' for stdout)");
    collision->add_flag("--one-to-one", co.injective, "use 1-1 tables");
    collision->add_flag("--direct", co.direct, "parallel block searches instead of the reduction");
    collision->callback([&] { action = [&] { return cmd_collision(co); }; });

    BenchArgs bn;
    auto *bench = app.add_subcommand("bench", "depth/width series per topology");
    bench->add_option("--sizes", bn.sizes, "node counts")->delimiter(',')->capture_default_str();
    bench->add_option("--families", bn.families, "families")->delimiter(',')->capture_default_str();
    bench->add_option("--d", bn.d)->capture_default_str();
    bench->add_option("--csv", bn.csv, "series CSV path ('-' for stdout)")->capture_default_str();
    bench->add_option("--fits", bn.fits, "fit CSV path");
    bench->add_flag("--overhead", bn.overhead, "include emulation overhead series");
    bench->add_option("--seed", bn.seed)->capture_default_str();
    bench->callback([&] { action = [&] { return cmd_bench(bn); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }
    try {
        return action();
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
