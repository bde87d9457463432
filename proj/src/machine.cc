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

#include "ftsim/machine.h"

#include <algorithm>
#include <stdexcept>

#include "ftsim/protocols.h"

namespace ftsim {

namespace {

size_t slot_size(int level) {
    size_t s = 1;
    for (int k = 0; k < level; k++) {
        s *= STEANE_N;
    }
    return s;
}

double xor_error(double a, double b) {
    return a + b - 2 * a * b;
}

}  // namespace

Machine::Machine(const PhysicalParams &base, MachineOptions options)
    : base_(base), options_(options), scheduler_(base.decoherence_rate), pool_(scheduler_, options.max_ancilla) {
    base_.validate();
}

const PhysicalParams &Machine::params(int level) {
    if (level <= 1) {
        return base_;
    }
    auto it = level_cache_.find(level);
    if (it == level_cache_.end()) {
        it = level_cache_.emplace(level, level_params(base_, level)).first;
    }
    return it->second;
}

Slot Machine::new_data(int level) {
    Slot s(slot_size(level));
    for (auto &q : s) {
        q = scheduler_.add_qubit(QubitRole::Data);
    }
    return s;
}

Slot Machine::acquire(int level, double not_before) {
    return pool_.acquire(slot_size(level), not_before);
}

void Machine::release(const Slot &slot) {
    pool_.release(slot);
}

void Machine::adopt(const Slot &slot) {
    pool_.adopt(slot);
}

double Machine::ready_time(std::span<const uint32_t> physical) const {
    return scheduler_.ready_time(physical);
}

void Machine::apply_physical(GateKind kind, std::span<const uint32_t> qubits, const Condition *condition) {
    if (kind == GateKind::ErrorCorrect) {
        throw std::invalid_argument("error correction is not a physical operation");
    }
    if (kind == GateKind::MeasureZ) {
        measure_physical(qubits[0]);
        return;
    }
    double weight = condition != nullptr ? condition->fire_probability : 1.0;
    Interval iv = scheduler_.place(qubits, base_.duration(kind), condition_time(condition));
    if (kind == GateKind::PrepZero) {
        QubitRecord &r = scheduler_.qubit(qubits[0]);
        double fresh = error_to_fidelity(base_.prep_error);
        r.fidelity = weight * fresh + (1 - weight) * r.fidelity;
        r.prepared_at = iv.start;
        return;
    }
    double product = gate_fidelity(base_.error(kind)).value();
    for (uint32_t q : qubits) {
        product *= scheduler_.qubit(q).fidelity;
    }
    for (uint32_t q : qubits) {
        QubitRecord &r = scheduler_.qubit(q);
        r.fidelity = std::clamp(weight * product + (1 - weight) * r.fidelity, 0.0, 1.0);
    }
}

double Machine::measure_physical(uint32_t qubit, const std::string &name) {
    uint32_t q[1] = {qubit};
    Interval iv = scheduler_.place(q, base_.measurement_duration);
    if (!name.empty()) {
        set_record_time(name, iv.end);
    }
    return xor_error(fidelity_to_error(scheduler_.qubit(qubit).fidelity), base_.measurement_error);
}

void Machine::execute(GateKind kind, std::span<Slot> operands, int level, const Condition *condition) {
    if (level < 1) {
        throw std::invalid_argument("execute needs a logical level");
    }
    if (operands.size() != gate_arity(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " takes " + std::to_string(gate_arity(kind)) +
                                    " operands");
    }
    std::vector<uint32_t> all;
    for (const Slot &s : operands) {
        all.insert(all.end(), s.begin(), s.end());
    }
    MachineEmitter em(*this, level - 1, ready_time(all));
    std::vector<std::vector<Wire>> words;
    for (const Slot &s : operands) {
        words.push_back(em.add_codeword(s));
    }
    const PhysicalParams &p = params(level);
    if (condition != nullptr && !is_transversal(kind)) {
        throw std::invalid_argument("conditional " + std::string(gate_name(kind)) + " is not supported");
    }
    switch (kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::CNOT:
            emit_transversal(em, kind, words, condition);
            break;
        case GateKind::PrepZero:
            emit_logical_prep(em, words[0], p);
            break;
        case GateKind::ErrorCorrect:
            emit_error_correction(em, words[0], p);
            break;
        case GateKind::MeasureZ:
            emit_logical_measure(em, words[0], p);
            break;
        case GateKind::Toffoli: {
            auto outs = emit_ft_toffoli(em, words[0], words[1], words[2], p);
            for (size_t k = 0; k < 3; k++) {
                operands[k] = em.join(outs[k]);
                adopt(operands[k]);
            }
            break;
        }
    }
}

double Machine::measure_logical(const Slot &slot, int level, const std::string &name) {
    double e_data = fidelity_to_error(fidelity(slot));
    MachineEmitter em(*this, level - 1, ready_time(slot));
    emit_logical_measure(em, em.add_codeword(slot), params(level), false,
                         name.empty() ? next_record_name() : name);
    double m = majority_vote_error(logical_measure_round_error(params(level)));
    return xor_error(e_data, m);
}

void Machine::retry_delay(std::span<const uint32_t> physical, double expected_repetitions) {
    if (!options_.retry_accounting || expected_repetitions <= 1.0 || physical.empty()) {
        return;
    }
    double first = scheduler_.qubit(physical[0]).prepared_at;
    for (uint32_t q : physical) {
        first = std::min(first, scheduler_.qubit(q).prepared_at);
    }
    double attempt = ready_time(physical) - first;
    scheduler_.delay(physical, (expected_repetitions - 1) * attempt);
}

double Machine::fidelity(const Slot &slot) const {
    double sum = 0;
    for (uint32_t q : slot) {
        sum += scheduler_.qubit(q).fidelity;
    }
    return slot.empty() ? 1.0 : sum / static_cast<double>(slot.size());
}

void Machine::set_fidelity(const Slot &slot, double f) {
    for (uint32_t q : slot) {
        scheduler_.qubit(q).fidelity = std::clamp(f, 0.0, 1.0);
    }
}

void Machine::set_record_time(const std::string &name, double t) {
    record_time_[name] = t;
}

double Machine::record_time(const std::string &name) const {
    auto it = record_time_.find(name);
    if (it == record_time_.end()) {
        throw std::invalid_argument("condition reads record '" + name + "' before it is measured");
    }
    return it->second;
}

double Machine::condition_time(const Condition *condition) const {
    double t = 0.0;
    if (condition != nullptr) {
        for (const auto &bit : condition->bits) {
            for (const auto &v : bit.votes) {
                t = std::max(t, record_time(v));
            }
        }
    }
    return t;
}

std::string Machine::next_record_name() {
    return "#m" + std::to_string(records_++);
}

Wire MachineEmitter::add(Slot slot) {
    slots_.push_back(std::move(slot));
    return static_cast<Wire>(slots_.size() - 1);
}

std::vector<Wire> MachineEmitter::add_codeword(const Slot &logical) {
    size_t part = logical.size() / STEANE_N;
    if (part * STEANE_N != logical.size() || part != slot_size(level_)) {
        throw std::invalid_argument("slot size does not match the encoding level");
    }
    std::vector<Wire> out;
    for (size_t i = 0; i < STEANE_N; i++) {
        out.push_back(add(Slot(logical.begin() + i * part, logical.begin() + (i + 1) * part)));
    }
    return out;
}

Slot MachineEmitter::join(std::span<const Wire> codeword) const {
    Slot s;
    for (Wire w : codeword) {
        s.insert(s.end(), slots_[w].begin(), slots_[w].end());
    }
    return s;
}

std::vector<uint32_t> MachineEmitter::physical(std::span<const Wire> wires) const {
    return join(wires);
}

std::vector<Wire> MachineEmitter::ancillas(size_t n) {
    std::vector<Wire> out;
    for (size_t k = 0; k < n; k++) {
        out.push_back(add(machine_->acquire(level_, not_before_)));
    }
    return out;
}

void MachineEmitter::release(std::span<const Wire> wires) {
    for (Wire w : wires) {
        machine_->release(slots_.at(w));
    }
}

void MachineEmitter::run(GateKind kind, std::span<const Wire> wires, const Condition *condition) {
    if (level_ == 0) {
        std::vector<uint32_t> q = physical(wires);
        machine_->apply_physical(kind, q, condition);
        return;
    }
    std::vector<Slot> ops;
    for (Wire w : wires) {
        ops.push_back(slots_.at(w));
    }
    machine_->execute(kind, ops, level_, condition);
    for (size_t k = 0; k < wires.size(); k++) {
        slots_[wires[k]] = std::move(ops[k]);
    }
}

void MachineEmitter::gate(GateKind kind, std::span<const Wire> wires) {
    run(kind, wires, nullptr);
}

void MachineEmitter::conditional(GateKind kind, std::span<const Wire> wires, const Condition &condition) {
    run(kind, wires, &condition);
}

std::string MachineEmitter::measure(Wire wire, bool, const std::string &name) {
    const Slot &s = slots_.at(wire);
    std::string n = name.empty() ? machine_->next_record_name() : name;
    last_readout_ = level_ == 0 ? machine_->measure_physical(s[0], n) : machine_->measure_logical(s, level_, n);
    return n;
}

std::string MachineEmitter::majority(const std::vector<std::string> &votes, bool, const std::string &name) {
    std::string n = name.empty() ? machine_->next_record_name() : name;
    double t = 0.0;
    for (const auto &v : votes) {
        t = std::max(t, machine_->record_time(v));
    }
    machine_->set_record_time(n, t);
    return n;
}

void MachineEmitter::repeat_until_success(std::span<const Wire> wires, double expected_repetitions) {
    std::vector<uint32_t> q = physical(wires);
    machine_->retry_delay(q, expected_repetitions);
}

double MachineEmitter::fidelity(Wire wire) const {
    return machine_->fidelity(slots_.at(wire));
}

void MachineEmitter::set_fidelity(Wire wire, double f) {
    machine_->set_fidelity(slots_.at(wire), f);
}

}  // namespace ftsim
