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

#include "ftsim/lowering.h"

#include <stdexcept>

#include "ftsim/protocols.h"

namespace ftsim {

std::vector<Wire> RecordingEmitter::add_register(const std::string &name, uint32_t width) {
    if (total_wires_ != data_qubits_) {
        throw std::logic_error("data registers must be declared before any ancilla");
    }
    registers_.push_back({name, width});
    std::vector<Wire> out;
    for (uint32_t k = 0; k < width; k++) {
        out.push_back(data_qubits_++);
    }
    total_wires_ = data_qubits_;
    return out;
}

void RecordingEmitter::reserve_name(const std::string &name) {
    used_names_.insert(name);
}

std::string RecordingEmitter::fresh_name() {
    std::string s;
    do {
        s = "m" + std::to_string(counter_++);
    } while (used_names_.contains(s));
    used_names_.insert(s);
    return s;
}

std::vector<Wire> RecordingEmitter::ancillas(size_t n) {
    std::vector<Wire> out;
    for (size_t k = 0; k < n; k++) {
        out.push_back(total_wires_++);
    }
    return out;
}

void RecordingEmitter::release(std::span<const Wire>) {
}

void RecordingEmitter::gate(GateKind kind, std::span<const Wire> wires) {
    Instruction inst;
    inst.kind = kind;
    inst.operands.assign(wires.begin(), wires.end());
    instructions_.push_back(std::move(inst));
}

void RecordingEmitter::conditional(GateKind kind, std::span<const Wire> wires, const Condition &condition) {
    Instruction inst;
    inst.kind = kind;
    inst.operands.assign(wires.begin(), wires.end());
    inst.condition = condition;
    instructions_.push_back(std::move(inst));
}

std::string RecordingEmitter::measure(Wire wire, bool postselect, const std::string &name) {
    Instruction inst;
    inst.kind = GateKind::MeasureZ;
    inst.operands = {wire};
    inst.label = name.empty() ? fresh_name() : name;
    used_names_.insert(inst.label);
    inst.postselect = postselect;
    instructions_.push_back(inst);
    return inst.label;
}

std::string RecordingEmitter::majority(const std::vector<std::string> &votes, bool postselect,
                                       const std::string &name) {
    RecordAlias a;
    a.name = name.empty() ? fresh_name() : name;
    used_names_.insert(a.name);
    a.votes = votes;
    a.postselect = postselect;
    aliases_.push_back(a);
    return a.name;
}

void RecordingEmitter::add_alias(RecordAlias alias) {
    used_names_.insert(alias.name);
    aliases_.push_back(std::move(alias));
}

Circuit RecordingEmitter::finish() const {
    Circuit out(level_);
    for (const auto &[name, width] : registers_) {
        out.add_register(name, width);
    }
    if (total_wires_ > data_qubits_) {
        std::string anc = "anc";
        for (int k = 1; out.find_register(anc) != nullptr; k++) {
            anc = "anc" + std::to_string(k);
        }
        out.add_register(anc, total_wires_ - data_qubits_);
    }
    for (const auto &inst : instructions_) {
        out.append(inst);
    }
    for (const auto &a : aliases_) {
        out.add_alias(a);
    }
    return out;
}

LoweredCircuit lower_with_map(const Circuit &circuit, const PhysicalParams &params) {
    if (circuit.level() < 1) {
        throw std::invalid_argument("cannot lower a physical-level circuit");
    }
    PhysicalParams p = level_params(params, circuit.level());
    RecordingEmitter em(circuit.level() - 1);
    std::vector<std::vector<Wire>> words(circuit.num_qubits());
    for (const Register &r : circuit.registers()) {
        std::vector<Wire> w = em.add_register(r.name, r.width * static_cast<uint32_t>(STEANE_N));
        for (uint32_t j = 0; j < r.width; j++) {
            words[r.offset + j].assign(w.begin() + j * STEANE_N, w.begin() + (j + 1) * STEANE_N);
        }
    }
    for (const Instruction &inst : circuit.instructions()) {
        if (inst.kind == GateKind::MeasureZ) {
            em.reserve_name(inst.label);
        }
    }
    for (const RecordAlias &a : circuit.aliases()) {
        em.reserve_name(a.name);
    }

    for (const Instruction &inst : circuit.instructions()) {
        std::vector<std::vector<Wire>> ops;
        for (uint32_t q : inst.operands) {
            ops.push_back(words[q]);
        }
        const Condition *cond = inst.condition ? &*inst.condition : nullptr;
        if (cond != nullptr && !is_transversal(inst.kind)) {
            throw std::invalid_argument("conditional " + std::string(gate_name(inst.kind)) + " cannot be lowered");
        }
        switch (inst.kind) {
            case GateKind::X:
            case GateKind::Y:
            case GateKind::Z:
            case GateKind::H:
            case GateKind::CNOT:
                emit_transversal(em, inst.kind, ops, cond);
                break;
            case GateKind::PrepZero:
                emit_logical_prep(em, ops[0], p);
                break;
            case GateKind::ErrorCorrect:
                emit_error_correction(em, ops[0], p);
                break;
            case GateKind::MeasureZ:
                emit_logical_measure(em, ops[0], p, inst.postselect, inst.label);
                break;
            case GateKind::Toffoli: {
                auto outs = emit_ft_toffoli(em, ops[0], ops[1], ops[2], p);
                for (size_t k = 0; k < 3; k++) {
                    words[inst.operands[k]] = outs[k];
                }
                break;
            }
        }
    }
    for (const RecordAlias &a : circuit.aliases()) {
        em.add_alias(a);
    }
    LoweredCircuit out{em.finish(), {}};
    for (const auto &w : words) {
        out.constituents.emplace_back(w.begin(), w.end());
    }
    return out;
}

Circuit lower(const Circuit &circuit, const PhysicalParams &params) {
    return lower_with_map(circuit, params).circuit;
}

}  // namespace ftsim
