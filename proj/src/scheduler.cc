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

#include "ftsim/scheduler.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ftsim {

void accrue_decoherence(QubitRecord &record, double now, double lambda) {
    if (now < record.last_touch) {
        throw std::invalid_argument("decoherence accrual moved backwards in time");
    }
    if (lambda > 0.0 && now > record.last_touch) {
        record.fidelity *= std::exp(-lambda * (now - record.last_touch));
    }
    record.last_touch = now;
}

uint32_t Scheduler::add_qubit(QubitRole role) {
    QubitRecord r;
    r.id = static_cast<uint32_t>(qubits_.size());
    r.role = role;
    qubits_.push_back(r);
    return r.id;
}

double Scheduler::ready_time(std::span<const uint32_t> operands) const {
    double t = 0.0;
    for (uint32_t q : operands) {
        t = std::max(t, qubits_[q].busy_until);
    }
    return t;
}

Interval Scheduler::place(std::span<const uint32_t> operands, double duration, double not_before) {
    double start = std::max(ready_time(operands), not_before);
    double end = start + duration;
    for (uint32_t q : operands) {
        QubitRecord &r = qubits_[q];
        accrue_decoherence(r, start, lambda_);
        r.busy_until = end;
        r.last_touch = end;
        if (r.lease_pending) {
            r.lease_start = start;
            r.lease_pending = false;
        }
    }
    total_time_ = std::max(total_time_, end);
    return {start, end};
}

void Scheduler::delay(std::span<const uint32_t> operands, double dt) {
    double until = ready_time(operands) + dt;
    for (uint32_t q : operands) {
        qubits_[q].busy_until = until;
    }
    total_time_ = std::max(total_time_, until);
}

std::vector<uint32_t> ResourceQueue::acquire(size_t n, double not_before) {
    std::vector<uint32_t> out;
    out.reserve(n);
    while (out.size() < n) {
        if (!free_.empty() && free_.begin()->first <= not_before) {
            out.push_back(free_.begin()->second);
            free_.erase(free_.begin());
        } else if (!max_ancilla_.has_value() || total_created_ < *max_ancilla_) {
            out.push_back(scheduler_->add_qubit(QubitRole::Ancilla));
            total_created_++;
        } else if (!free_.empty()) {
            out.push_back(free_.begin()->second);
            free_.erase(free_.begin());
        } else {
            throw std::runtime_error("ancilla cap of " + std::to_string(*max_ancilla_) +
                                     " exhausted: a single block needs more ancillas than the cap allows");
        }
    }
    for (uint32_t q : out) {
        QubitRecord &r = scheduler_->qubit(q);
        r.lease_start = not_before < INFINITY_TIME ? std::max(r.busy_until, not_before) : r.busy_until;
        r.lease_pending = true;
        held_.insert(q);
    }
    in_use_ += n;
    held_high_water_ = std::max(held_high_water_, in_use_);
    return out;
}

void ResourceQueue::release(std::span<const uint32_t> ancillas) {
    for (uint32_t q : ancillas) {
        QubitRecord &r = scheduler_->qubit(q);
        if (held_.erase(q) != 0) {
            leases_.push_back({r.lease_start, std::max(r.lease_start, r.busy_until)});
            in_use_--;
        }
        r.role = QubitRole::Ancilla;
        r.lease_pending = false;
        free_.insert({r.busy_until, q});
    }
}

void ResourceQueue::adopt(std::span<const uint32_t> ancillas) {
    for (uint32_t q : ancillas) {
        QubitRecord &r = scheduler_->qubit(q);
        if (held_.erase(q) == 0) {
            throw std::invalid_argument("adopted qubit " + std::to_string(q) + " is not a held ancilla");
        }
        leases_.push_back({r.lease_start, std::max(r.lease_start, r.busy_until)});
        in_use_--;
        r.role = QubitRole::Data;
        r.lease_pending = false;
    }
}

size_t ResourceQueue::high_water() const {
    std::vector<std::pair<double, int>> events;
    for (auto [s, e] : leases_) {
        events.push_back({s, +1});
        events.push_back({e, -1});
    }
    for (uint32_t q : held_) {
        events.push_back({scheduler_->qubit(q).lease_start, +1});
    }
    // Ends sort before starts at equal times: a released ancilla can be reused immediately.
    std::sort(events.begin(), events.end());
    long cur = 0;
    long best = 0;
    for (auto [t, d] : events) {
        cur += d;
        best = std::max(best, cur);
    }
    return static_cast<size_t>(best);
}

std::string Timeline::to_csv(const Circuit &circuit) const {
    std::ostringstream out;
    out << "instruction,kind,operands,start,end\n";
    char buf[96];
    for (const auto &e : entries) {
        out << e.instruction << "," << gate_name(e.kind) << ",";
        for (size_t k = 0; k < e.operands.size(); k++) {
            out << (k ? " " : "") << circuit.qubit_name(e.operands[k]);
        }
        std::snprintf(buf, sizeof(buf), ",%.10g,%.10g\n", e.start, e.end);
        out << buf;
    }
    return out.str();
}

namespace {

/// Completion times of measurement records and of the aliases built on them.
class RecordClock {
   public:
    explicit RecordClock(const Circuit &circuit) : circuit_(circuit) {
        for (size_t a = 0; a < circuit.aliases().size(); a++) {
            alias_index_[circuit.aliases()[a].name] = a;
        }
    }

    void set(const std::string &name, double t) {
        time_[name] = t;
    }

    double get(const std::string &name) {
        auto it = time_.find(name);
        if (it != time_.end()) {
            return it->second;
        }
        auto a = alias_index_.find(name);
        if (a == alias_index_.end()) {
            throw std::invalid_argument("condition reads record '" + name + "' before it is measured");
        }
        double t = 0.0;
        for (const auto &v : circuit_.aliases()[a->second].votes) {
            t = std::max(t, get(v));
        }
        return t;
    }

    double condition_time(const Instruction &inst) {
        double t = 0.0;
        if (inst.condition) {
            for (const auto &bit : inst.condition->bits) {
                for (const auto &v : bit.votes) {
                    t = std::max(t, get(v));
                }
            }
        }
        return t;
    }

   private:
    const Circuit &circuit_;
    std::map<std::string, size_t> alias_index_;
    std::map<std::string, double> time_;
};

}  // namespace

Timeline schedule(const Circuit &circuit, const PhysicalParams &params) {
    if (circuit.level() != 0) {
        throw std::invalid_argument("schedule needs a physical-level circuit; lower it first");
    }
    Scheduler s(params.decoherence_rate);
    for (uint32_t q = 0; q < circuit.num_qubits(); q++) {
        s.add_qubit(QubitRole::Data);
    }
    RecordClock clock(circuit);
    Timeline t;
    t.entries.reserve(circuit.instructions().size());
    for (size_t k = 0; k < circuit.instructions().size(); k++) {
        const Instruction &inst = circuit.instructions()[k];
        if (inst.kind == GateKind::ErrorCorrect) {
            throw std::invalid_argument("error correction has no physical-level schedule");
        }
        Interval iv = s.place(inst.operands, params.duration(inst.kind), clock.condition_time(inst));
        if (inst.kind == GateKind::MeasureZ && !inst.label.empty()) {
            clock.set(inst.label, iv.end);
        }
        t.entries.push_back({k, inst.kind, inst.operands, iv.start, iv.end});
    }
    t.total_time = s.total_time();
    return t;
}

double critical_path(const Circuit &circuit, const PhysicalParams &params) {
    // Longest path over the dependency DAG: previous instruction on each operand plus the
    // measurements a condition reads.
    std::vector<double> finish(circuit.instructions().size(), 0.0);
    std::vector<std::optional<size_t>> last(circuit.num_qubits());
    RecordClock clock(circuit);
    double best = 0.0;
    for (size_t k = 0; k < circuit.instructions().size(); k++) {
        const Instruction &inst = circuit.instructions()[k];
        double longest_pred = clock.condition_time(inst);
        for (uint32_t q : inst.operands) {
            if (last[q].has_value()) {
                longest_pred = std::max(longest_pred, finish[*last[q]]);
            }
            last[q] = k;
        }
        finish[k] = longest_pred + params.duration(inst.kind);
        if (inst.kind == GateKind::MeasureZ && !inst.label.empty()) {
            clock.set(inst.label, finish[k]);
        }
        best = std::max(best, finish[k]);
    }
    return best;
}

}  // namespace ftsim
