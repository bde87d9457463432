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

#include "ftsim/engine.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ftsim/adders.h"
#include "ftsim/machine.h"

namespace ftsim {

namespace {

bool triggers_auto_ec(const Instruction &inst) {
    switch (inst.kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::CNOT:
        case GateKind::Toffoli:
            return true;
        default:
            return false;
    }
}

}  // namespace

RunMetrics run(const RunConfig &config) {
    const Circuit &circuit = config.circuit;
    int level = config.level.value_or(circuit.level());
    if (level < 0) {
        throw std::invalid_argument("encoding level must be non-negative");
    }
    Machine machine(config.params, {config.retry_accounting, config.max_ancilla});
    std::vector<Slot> slots;
    for (uint32_t q = 0; q < circuit.num_qubits(); q++) {
        slots.push_back(machine.new_data(level));
    }

    RunMetrics metrics;
    std::set<uint32_t> measured;
    std::set<std::string> pending_aliases;
    for (const RecordAlias &a : circuit.aliases()) {
        pending_aliases.insert(a.name);
    }
    // An alias becomes available once every vote it reads has been measured.
    auto resolve_aliases = [&] {
        bool progress = true;
        while (progress) {
            progress = false;
            for (const RecordAlias &a : circuit.aliases()) {
                if (!pending_aliases.contains(a.name)) {
                    continue;
                }
                double t = 0.0;
                try {
                    for (const auto &v : a.votes) {
                        t = std::max(t, machine.record_time(v));
                    }
                } catch (const std::invalid_argument &) {
                    continue;
                }
                machine.set_record_time(a.name, t);
                pending_aliases.erase(a.name);
                progress = true;
            }
        }
    };
    auto measure = [&](uint32_t q, const std::string &label) {
        double e = level == 0 ? machine.measure_physical(slots[q][0], label)
                              : machine.measure_logical(slots[q], level, label);
        measured.insert(q);
        if (!label.empty()) {
            metrics.readout_errors[label] = e;
            resolve_aliases();
        }
    };

    for (const Instruction &inst : circuit.instructions()) {
        if (inst.kind == GateKind::MeasureZ) {
            measure(inst.operands[0], inst.label);
            continue;
        }
        const Condition *cond = inst.condition ? &*inst.condition : nullptr;
        if (level == 0) {
            if (inst.kind == GateKind::ErrorCorrect) {
                throw std::invalid_argument("ec needs an encoded qubit (level >= 1)");
            }
            std::vector<uint32_t> q;
            for (uint32_t op : inst.operands) {
                q.push_back(slots[op][0]);
            }
            machine.apply_physical(inst.kind, q, cond);
            continue;
        }
        std::vector<Slot> ops;
        for (uint32_t op : inst.operands) {
            ops.push_back(slots[op]);
        }
        machine.execute(inst.kind, ops, level, cond);
        for (size_t k = 0; k < ops.size(); k++) {
            slots[inst.operands[k]] = ops[k];
        }
        if (config.ec_policy == EcPolicy::Auto && triggers_auto_ec(inst)) {
            for (uint32_t op : inst.operands) {
                machine.execute(GateKind::ErrorCorrect, std::span<Slot>(&slots[op], 1), level);
            }
        }
    }
    if (config.measure_outputs) {
        for (uint32_t q = 0; q < circuit.num_qubits(); q++) {
            if (!measured.contains(q)) {
                measure(q, "");
            }
        }
    }

    Scheduler &s = machine.scheduler();
    metrics.total_time = s.total_time();
    for (const Slot &slot : slots) {
        for (uint32_t q : slot) {
            accrue_decoherence(s.qubit(q), std::max(metrics.total_time, s.qubit(q).last_touch),
                               config.params.decoherence_rate);
        }
        metrics.qubit_errors.push_back(fidelity_to_error(machine.fidelity(slot)));
    }
    metrics.qubit_total = s.size();
    metrics.ancilla_high_water = machine.pool().high_water();
    if (!metrics.qubit_errors.empty()) {
        double sum = 0;
        for (double e : metrics.qubit_errors) {
            sum += e;
            metrics.max_error = std::max(metrics.max_error, e);
        }
        metrics.mean_error = sum / static_cast<double>(metrics.qubit_errors.size());
    }
    return metrics;
}

PhysicalParams with_uniform_error(const PhysicalParams &base, double p) {
    PhysicalParams out = base;
    for (GateKind k : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::CNOT, GateKind::Toffoli}) {
        out.gate_error[k] = p;
    }
    out.prep_error = p;
    out.measurement_error = p;
    return out;
}

std::vector<SweepRow> sweep(const SweepConfig &config) {
    if (config.p_values.empty()) {
        throw std::invalid_argument("sweep needs at least one p value");
    }
    std::optional<AdderKind> kind;
    std::vector<uint32_t> sizes = config.sizes;
    if (config.circuit.has_value()) {
        sizes = {0};
    } else {
        kind = adder_from_name(config.adder);
        if (!kind) {
            throw std::invalid_argument("unknown adder '" + config.adder + "'");
        }
        if (sizes.empty()) {
            throw std::invalid_argument("sweep needs at least one adder size");
        }
    }
    std::vector<SweepRow> rows;
    for (double p : config.p_values) {
        for (uint32_t n : sizes) {
            SweepRow r;
            r.adder = config.circuit ? "circuit" : config.adder;
            r.n = n;
            r.level = config.level;
            r.p = p;
            r.lambda = config.base.decoherence_rate;
            rows.push_back(r);
        }
    }
    std::vector<Circuit> circuits;
    for (uint32_t n : sizes) {
        circuits.push_back(config.circuit ? *config.circuit : build_adder({*kind, n}));
    }

    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(rows.size());
    auto worker = [&] {
        for (size_t k; (k = next.fetch_add(1)) < rows.size();) {
            try {
                RunConfig rc;
                rc.circuit = circuits[k % sizes.size()];
                rc.level = config.level;
                rc.params = with_uniform_error(config.base, rows[k].p);
                rc.ec_policy = config.ec_policy;
                rc.retry_accounting = config.retry_accounting;
                rc.measure_outputs = config.measure_outputs;
                rc.max_ancilla = config.max_ancilla;
                rows[k].metrics = run(rc);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        }
    };
    unsigned threads = config.threads != 0 ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<size_t>(threads, rows.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::string sweep_csv_header() {
    return "adder,n,level,p,lambda,total_time,qubit_total,ancilla_high_water,mean_error,max_error";
}

std::string to_csv(const SweepRow &r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf), "%s,%u,%d,%.6g,%.6g,%.10g,%zu,%zu,%.10g,%.10g", r.adder.c_str(), r.n, r.level,
                  r.p, r.lambda, r.metrics.total_time, r.metrics.qubit_total, r.metrics.ancilla_high_water,
                  r.metrics.mean_error, r.metrics.max_error);
    return buf;
}

std::string to_csv(const std::vector<SweepRow> &rows) {
    std::string out = sweep_csv_header() + "\n";
    for (const auto &r : rows) {
        out += to_csv(r) + "\n";
    }
    return out;
}

std::string to_records(const std::vector<SweepRow> &rows) {
    std::string out;
    for (const auto &r : rows) {
        nlohmann::ordered_json j;
        j["adder"] = r.adder;
        j["n"] = r.n;
        j["level"] = r.level;
        j["p"] = r.p;
        j["lambda"] = r.lambda;
        j["total_time"] = r.metrics.total_time;
        j["qubit_total"] = r.metrics.qubit_total;
        j["ancilla_high_water"] = r.metrics.ancilla_high_water;
        j["mean_error"] = r.metrics.mean_error;
        j["max_error"] = r.metrics.max_error;
        out += j.dump() + "\n";
    }
    return out;
}

std::vector<double> log_space(double start, double stop, size_t points) {
    if (points < 2 || start <= 0 || stop <= 0) {
        throw std::invalid_argument("log_space needs positive bounds and at least 2 points");
    }
    std::vector<double> out;
    double a = std::log10(start);
    double b = std::log10(stop);
    for (size_t k = 0; k < points; k++) {
        out.push_back(std::pow(10.0, a + (b - a) * static_cast<double>(k) / static_cast<double>(points - 1)));
    }
    return out;
}

std::optional<double> crossover(const std::vector<ThresholdPoint> &points) {
    for (size_t k = 0; k + 1 < points.size(); k++) {
        const auto &u = points[k];
        const auto &v = points[k + 1];
        if (u.encoded <= 0 || v.encoded <= 0 || u.unencoded <= 0 || v.unencoded <= 0) {
            continue;
        }
        double du = std::log(u.encoded / u.unencoded);
        double dv = std::log(v.encoded / v.unencoded);
        if (du < 0 && dv >= 0) {
            double lu = std::log(u.p);
            double lv = std::log(v.p);
            return std::exp(lu + (lv - lu) * (-du) / (dv - du));
        }
    }
    return std::nullopt;
}

ThresholdResult toffoli_threshold(const std::vector<double> &p_values, const PhysicalParams &base,
                                  bool retry_accounting) {
    Circuit c = Circuit::parse("qreg q 3\ntoffoli q[0] q[1] q[2]\n");
    SweepConfig enc;
    enc.circuit = c;
    enc.level = 1;
    enc.p_values = p_values;
    enc.base = base;
    enc.retry_accounting = retry_accounting;
    SweepConfig unenc = enc;
    unenc.level = 0;
    auto e = sweep(enc);
    auto u = sweep(unenc);
    ThresholdResult r;
    for (size_t k = 0; k < p_values.size(); k++) {
        r.points.push_back({p_values[k], e[k].metrics.mean_error, u[k].metrics.mean_error});
    }
    r.crossover = crossover(r.points);
    return r;
}

std::string to_csv(const ThresholdResult &result) {
    std::ostringstream out;
    out << "p,encoded_error,unencoded_error\n";
    char buf[128];
    for (const auto &pt : result.points) {
        std::snprintf(buf, sizeof(buf), "%.6g,%.10g,%.10g\n", pt.p, pt.encoded, pt.unencoded);
        out << buf;
    }
    return out.str();
}

}  // namespace ftsim
