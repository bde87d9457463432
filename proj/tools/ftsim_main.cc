// Copyright 2026 The ftsim Authors
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


// ftsim command-line tool: run, sweep, threshold, verify.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include "ftsim/adders.h"
#include "ftsim/blocks.h"
#include "ftsim/engine.h"
#include "ftsim/oracle.h"
#include "ftsim/protocols.h"

using namespace ftsim;

namespace {

constexpr int EXIT_USAGE = 1;
constexpr int EXIT_RUNTIME = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string circuit;
    std::string adder;
    std::vector<uint32_t> n;
    std::optional<int> level;
    std::string params;
    std::optional<double> p;
    std::string p_range;
    std::optional<double> lambda;
    std::string ec_policy = "auto";
    std::string retry = "on";
    std::string measure_outputs = "off";
    std::optional<size_t> max_ancilla;
    unsigned threads = 0;
    std::string output;
    std::string format = "csv";
    uint64_t seed = 1;
    uint64_t trials = 100000;
};

std::vector<double> parse_p_range(const std::string &text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string s; std::getline(ss, s, ':');) {
        parts.push_back(s);
    }
    if (parts.size() != 3) {
        throw UsageError("--p-range expects start:stop:points");
    }
    try {
        double start = std::stod(parts[0]);
        double stop = std::stod(parts[1]);
        long points = std::stol(parts[2]);
        if (points < 2 || !(start > 0) || !(stop > 0)) {
            throw UsageError("--p-range needs positive bounds and at least 2 points");
        }
        return log_space(start, stop, static_cast<size_t>(points));
    } catch (const std::logic_error &) {
        throw UsageError("bad number in --p-range '" + text + "'");
    }
}

PhysicalParams base_params(const Options &o) {
    PhysicalParams p;
    if (!o.params.empty()) {
        try {
            p = PhysicalParams::load(o.params);
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
    }
    if (o.lambda) {
        p.decoherence_rate = *o.lambda;
    }
    return p;
}

std::vector<double> p_values(const Options &o, std::vector<double> fallback) {
    if (o.p && !o.p_range.empty()) {
        throw UsageError("give either --p or --p-range, not both");
    }
    if (o.p) {
        return {*o.p};
    }
    if (!o.p_range.empty()) {
        return parse_p_range(o.p_range);
    }
    return fallback;
}

std::optional<Circuit> load_circuit(const Options &o) {
    if (o.circuit.empty() == o.adder.empty()) {
        throw UsageError("give exactly one of --circuit or --adder");
    }
    if (o.circuit.empty()) {
        if (!adder_from_name(o.adder)) {
            throw UsageError("unknown adder '" + o.adder + "'");
        }
        if (o.n.empty()) {
            throw UsageError("--adder needs --n");
        }
        return std::nullopt;
    }
    std::ifstream in(o.circuit);
    if (!in) {
        throw UsageError("cannot open circuit file " + o.circuit);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return Circuit::parse(buf.str());
    } catch (const ParseError &e) {
        throw UsageError(o.circuit + ": " + e.what());
    }
}

void emit(const Options &o, const std::string &text) {
    if (o.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + o.output);
    }
    out << text;
}

std::string table(const Options &o, const std::vector<SweepRow> &rows) {
    return o.format == "records" ? to_records(rows) : to_csv(rows);
}

SweepConfig sweep_config(const Options &o, std::vector<double> ps) {
    SweepConfig cfg;
    cfg.circuit = load_circuit(o);
    cfg.adder = o.adder;
    cfg.sizes = o.n;
    cfg.level = o.level.value_or(cfg.circuit ? cfg.circuit->level() : 0);
    cfg.p_values = std::move(ps);
    cfg.base = base_params(o);
    cfg.ec_policy = o.ec_policy == "explicit" ? EcPolicy::Explicit : EcPolicy::Auto;
    cfg.retry_accounting = o.retry == "on";
    cfg.measure_outputs = o.measure_outputs == "on";
    cfg.max_ancilla = o.max_ancilla;
    cfg.threads = o.threads;
    return cfg;
}

int cmd_run(const Options &o) {
    if (o.n.size() > 1) {
        throw UsageError("run takes a single --n; use sweep for several");
    }
    if (!o.p_range.empty()) {
        throw UsageError("run takes --p, not --p-range");
    }
    SweepConfig cfg = sweep_config(o, {});
    RunConfig rc;
    rc.circuit = cfg.circuit ? *cfg.circuit : build_adder({*adder_from_name(o.adder), o.n[0]});
    rc.level = cfg.level;
    rc.params = o.p ? with_uniform_error(cfg.base, *o.p) : cfg.base;
    rc.ec_policy = cfg.ec_policy;
    rc.retry_accounting = cfg.retry_accounting;
    rc.measure_outputs = cfg.measure_outputs;
    rc.max_ancilla = cfg.max_ancilla;
    SweepRow row;
    row.adder = cfg.circuit ? "circuit" : o.adder;
    row.n = cfg.circuit ? 0 : o.n[0];
    row.level = cfg.level;
    row.p = o.p.value_or(rc.params.error(GateKind::CNOT));
    row.lambda = rc.params.decoherence_rate;
    row.metrics = run(rc);
    emit(o, table(o, {row}));
    return 0;
}

int cmd_sweep(const Options &o) {
    if (!o.p && o.p_range.empty()) {
        throw UsageError("sweep needs --p or --p-range");
    }
    emit(o, table(o, sweep(sweep_config(o, p_values(o, {})))));
    return 0;
}

int cmd_threshold(const Options &o) {
    ThresholdResult r = toffoli_threshold(p_values(o, log_space(1e-6, 1e-3, 31)), base_params(o), o.retry == "on");
    std::string text;
    if (o.format == "records") {
        nlohmann::ordered_json j;
        for (const auto &pt : r.points) {
            j = {{"p", pt.p}, {"encoded_error", pt.encoded}, {"unencoded_error", pt.unencoded}};
            text += j.dump() + "\n";
        }
        j = {{"crossover", r.crossover ? nlohmann::ordered_json(*r.crossover) : nullptr}};
        text += j.dump() + "\n";
    } else {
        text = to_csv(r);
    }
    emit(o, text);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", r.crossover.value_or(NAN));
    std::cerr << "crossover p* = " << (r.crossover ? buf : "none in range") << "\n";
    return 0;
}

int cmd_verify(const Options &o) {
    std::ostringstream out;
    int failed = 0;
    auto report = [&](bool ok, const std::string &what) {
        out << (ok ? "PASS " : "FAIL ") << what << "\n";
        failed += !ok;
    };
    for (size_t l : {3u, 4u, 7u}) {
        BlockResult b = cat_block(l, PhysicalParams());
        ErrorCriterion c;
        std::vector<uint32_t> q(l);
        for (uint32_t k = 0; k < l; k++) {
            q[k] = k;
        }
        c.x_up_to_all_ones = {q};
        FaultPathCounts one = enumerate_fault_paths(b.circuit, c, 1);
        uint64_t single = 0;
        for (const auto &[m, n] : one.undetected) {
            single += n;
        }
        report(single == 0, "cat l=" + std::to_string(l) + ": every single X fault is detected");
        FaultPathCounts two = enumerate_fault_paths(b.circuit, c, 2);
        report(two.cancellation_count("p_s*p_c") == l + 1,
               "cat l=" + std::to_string(l) + ": mixed cancellation pairs = " +
                   std::to_string(two.cancellation_count("p_s*p_c")));
    }
    for (AdderKind kind : {AdderKind::Qrca, AdderKind::Qcla}) {
        Circuit c = build_adder({kind, 4});
        bool ok = true;
        for (uint64_t a = 0; a < 16; a++) {
            for (uint64_t b = 0; b < 16; b++) {
                ok = ok && adder_sum(c, kind, reversible_simulate(c, adder_input(c, a, b))) == a + b;
            }
        }
        report(ok, std::string(adder_name(kind)) + " n=4 exhaustive sums");
    }
    for (double p : p_values(o, {1e-3, 1e-2})) {
        PhysicalParams params = with_uniform_error(base_params(o), p);
        BlockResult b = cat_block(4, params);
        ErrorCriterion c;
        c.x_up_to_all_ones = {{0, 1, 2, 3}};
        MonteCarloResult m = monte_carlo_error(b.circuit, params, c, o.trials, o.seed);
        char buf[160];
        std::snprintf(buf, sizeof(buf), "cat l=4 p=%g: engine %.4g >= monte carlo %.4g - 3*%.2g", p,
                      b.error_union_bound(), m.estimate, m.sigma);
        report(b.error_union_bound() >= m.estimate - 3 * m.sigma, buf);
    }
    emit(o, out.str());
    return failed == 0 ? 0 : EXIT_RUNTIME;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"ftsim: fidelity and resource simulator for Steane-encoded circuits"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App *sub) {
        sub->add_option("--circuit", o.circuit, "circuit file in the ftsim text format");
        sub->add_option("--adder", o.adder, "benchmark adder")->check(CLI::IsMember({"qrca", "qcla"}));
        sub->add_option("--n", o.n, "adder width(s), comma separated")->delimiter(',');
        sub->add_option("--level", o.level, "encoding level (0 = physical)")->check(CLI::NonNegativeNumber);
        sub->add_option("--ec-policy", o.ec_policy, "error correction placement")
            ->check(CLI::IsMember({"explicit", "auto"}));
        sub->add_option("--measure-outputs", o.measure_outputs, "measure every unmeasured qubit at the end")
            ->check(CLI::IsMember({"on", "off"}));
        sub->add_option("--max-ancilla", o.max_ancilla, "cap on physical ancillas");
        sub->add_option("--threads", o.threads, "sweep worker threads (0 = all cores)");
    };
    auto physical = [&](CLI::App *sub) {
        sub->add_option("--params", o.params, "key=value parameter file");
        sub->add_option("--p", o.p, "uniform physical error probability")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--p-range", o.p_range, "log-spaced grid start:stop:points");
        sub->add_option("--lambda", o.lambda, "decoherence rate")->check(CLI::NonNegativeNumber);
        sub->add_option("--retry-accounting", o.retry, "charge expected repeat-until-success time")
            ->check(CLI::IsMember({"on", "off"}));
        sub->add_option("--output", o.output, "write here instead of stdout");
        sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "records"}));
        sub->add_option("--seed", o.seed, "seed for Monte Carlo checks");
    };

    CLI::App *run_cmd = app.add_subcommand("run", "simulate one circuit");
    CLI::App *sweep_cmd = app.add_subcommand("sweep", "simulate a grid of error rates and adder widths");
    CLI::App *threshold_cmd = app.add_subcommand("threshold", "FT Toffoli encoded vs unencoded crossover");
    CLI::App *verify_cmd = app.add_subcommand("verify", "oracle checks of the closed forms");
    for (CLI::App *sub : {run_cmd, sweep_cmd}) {
        common(sub);
        physical(sub);
    }
    physical(threshold_cmd);
    physical(verify_cmd);
    verify_cmd->add_option("--trials", o.trials, "Monte Carlo trials per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : EXIT_USAGE;
    }

    try {
        if (*run_cmd) {
            return cmd_run(o);
        }
        if (*sweep_cmd) {
            return cmd_sweep(o);
        }
        if (*threshold_cmd) {
            return cmd_threshold(o);
        }
        return cmd_verify(o);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_RUNTIME;
    }
}
