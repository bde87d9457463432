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

#include "ftsim/blocks.h"

#include <functional>
#include <stdexcept>

#include "ftsim/lowering.h"
#include "ftsim/machine.h"

namespace ftsim {

double BlockResult::error_union_bound() const {
    double sum = 0;
    for (const auto &o : outputs) {
        sum += fidelity_to_error(o.second);
    }
    return std::min(sum, 1.0);
}

std::vector<double> BlockResult::output_fidelities() const {
    std::vector<double> out;
    for (const auto &o : outputs) {
        out.push_back(o.second);
    }
    return out;
}

namespace {

struct Operand {
    std::string name;
    uint32_t width;
    double fidelity;
};

/// Runs `body` on a recording emitter and on a fresh machine. `body` returns the output wires
/// and may report a readout error.
using Body = std::function<std::vector<Wire>(Emitter &, const std::vector<std::vector<Wire>> &, double &)>;

BlockResult build(const std::vector<Operand> &operands, const PhysicalParams &params, bool retry_accounting,
                  const Body &body) {
    BlockResult r;
    double unused = 0;
    {
        RecordingEmitter rec(0);
        std::vector<std::vector<Wire>> regs;
        for (const auto &op : operands) {
            regs.push_back(rec.add_register(op.name, op.width));
        }
        std::vector<Wire> outs = body(rec, regs, unused);
        r.circuit = rec.finish();
        for (Wire w : outs) {
            r.outputs.push_back({r.circuit.qubit_name(w), 1.0});
            r.output_qubits.push_back(w);
        }
    }
    Machine m(params, {retry_accounting, std::nullopt});
    MachineEmitter em(m, 0, 0.0);
    std::vector<std::vector<Wire>> regs;
    for (const auto &op : operands) {
        std::vector<Wire> w;
        for (uint32_t k = 0; k < op.width; k++) {
            Slot s = m.new_data(0);
            m.set_fidelity(s, op.fidelity);
            w.push_back(em.add(s));
        }
        regs.push_back(w);
    }
    std::vector<Wire> outs = body(em, regs, r.readout_error);
    if (outs.size() != r.outputs.size()) {
        throw std::logic_error("block produced a different number of outputs on replay");
    }
    for (size_t k = 0; k < outs.size(); k++) {
        r.outputs[k].second = em.fidelity(outs[k]);
    }
    r.duration = m.scheduler().total_time();
    r.ancilla_demand = m.pool().high_water();
    return r;
}

}  // namespace

BlockResult cat_block(size_t l, const PhysicalParams &params, bool retry_accounting) {
    cat_coefficients(static_cast<int>(l));
    BlockResult r = build({}, params, retry_accounting, [&](Emitter &out, const auto &, double &) {
        return emit_cat(out, l, params);
    });
    r.expected_repetitions = cat_expected_repetitions(static_cast<int>(l), params);
    return r;
}

BlockResult stabilizer_measurement_block(const StabilizerGenerator &g, const PhysicalParams &params,
                                         bool retry_accounting) {
    return build({{"d", STEANE_N, 1.0}}, params, retry_accounting, [&](Emitter &out, const auto &regs, double &ro) {
        std::vector<Wire> data;
        for (uint32_t q : g.support) {
            data.push_back(regs[0][q]);
        }
        std::vector<std::string> votes;
        for (int k = 0; k < 3; k++) {
            votes.push_back(emit_parity_round(out, g.type, data, params));
        }
        out.majority(votes, false, "s");
        ro = majority_vote_error(stabilizer_round_error(g, params));
        return regs[0];
    });
}

BlockResult logical_prep_zero(const PhysicalParams &params, bool retry_accounting) {
    return build({{"d", STEANE_N, 1.0}}, params, retry_accounting, [&](Emitter &out, const auto &regs, double &) {
        emit_logical_prep(out, regs[0], params);
        return regs[0];
    });
}

BlockResult logical_measure_z(const PhysicalParams &params, double input_error, bool retry_accounting) {
    double f = error_to_fidelity(input_error);
    return build({{"d", STEANE_N, f}}, params, retry_accounting, [&](Emitter &out, const auto &regs, double &ro) {
        emit_logical_measure(out, regs[0], params, false, "out");
        double m = majority_vote_error(logical_measure_round_error(params));
        ro = input_error + m - 2 * input_error * m;
        return std::vector<Wire>{};
    });
}

BlockResult error_correction_block(const PhysicalParams &params, double input_error, bool retry_accounting) {
    double f = error_to_fidelity(input_error);
    return build({{"d", STEANE_N, f}}, params, retry_accounting, [&](Emitter &out, const auto &regs, double &) {
        emit_error_correction(out, regs[0], params);
        return regs[0];
    });
}

BlockResult ft_toffoli_block(const PhysicalParams &params, std::array<double, 3> input_errors,
                             bool retry_accounting) {
    std::vector<Operand> ops = {{"x", STEANE_N, error_to_fidelity(input_errors[0])},
                                {"y", STEANE_N, error_to_fidelity(input_errors[1])},
                                {"z", STEANE_N, error_to_fidelity(input_errors[2])}};
    return build(ops, params, retry_accounting, [&](Emitter &out, const auto &regs, double &) {
        auto outs = emit_ft_toffoli(out, regs[0], regs[1], regs[2], params);
        std::vector<Wire> all;
        for (const auto &o : outs) {
            all.insert(all.end(), o.begin(), o.end());
        }
        return all;
    });
}

BlockResult transversal_gate_block(GateKind kind, std::span<const double> input_fidelities,
                                   const PhysicalParams &params) {
    if (!is_transversal(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " is not transversal");
    }
    if (input_fidelities.size() != gate_arity(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " takes " + std::to_string(gate_arity(kind)) +
                                    " operands, got " + std::to_string(input_fidelities.size()));
    }
    std::vector<Operand> ops;
    for (size_t k = 0; k < input_fidelities.size(); k++) {
        ops.push_back({"q" + std::to_string(k), STEANE_N, input_fidelities[k]});
    }
    return build(ops, params, true, [&](Emitter &out, const auto &regs, double &) {
        emit_transversal(out, kind, regs);
        std::vector<Wire> all;
        for (const auto &r : regs) {
            all.insert(all.end(), r.begin(), r.end());
        }
        return all;
    });
}

}  // namespace ftsim
