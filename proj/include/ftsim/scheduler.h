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

#ifndef FTSIM_SCHEDULER_H
#define FTSIM_SCHEDULER_H

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftsim/circuit.h"
#include "ftsim/error_model.h"

namespace ftsim {

enum class QubitRole : unsigned char { Data, Ancilla };

struct QubitRecord {
    uint32_t id = 0;
    double fidelity = 1.0;
    double busy_until = 0.0;
    /// Time up to which decoherence has been charged.
    double last_touch = 0.0;
    /// Start of the most recent PrepZero; used to size repeat-until-success delays.
    double prepared_at = 0.0;
    /// Ancillas: start of the current lease, moved to the first operation after acquire.
    double lease_start = 0.0;
    bool lease_pending = false;
    QubitRole role = QubitRole::Data;
};

/// fidelity *= exp(-lambda (now - last_touch)); last_touch = now.
void accrue_decoherence(QubitRecord &record, double now, double lambda);

struct Interval {
    double start = 0.0;
    double end = 0.0;
};

/// Streaming ASAP list scheduler under full connectivity.
///
/// Each placed operation starts at the latest busy_until of its operands (program order
/// breaks ties), charges decoherence on every operand for the idle gap, and leaves the
/// operands busy until start + duration.
class Scheduler {
   public:
    explicit Scheduler(double decoherence_rate = 0.0) : lambda_(decoherence_rate) {
    }

    uint32_t add_qubit(QubitRole role);
    size_t size() const {
        return qubits_.size();
    }
    QubitRecord &qubit(uint32_t id) {
        return qubits_[id];
    }
    const QubitRecord &qubit(uint32_t id) const {
        return qubits_[id];
    }

    double ready_time(std::span<const uint32_t> operands) const;
    /// `not_before` carries classical dependencies (the records a conditional gate reads).
    Interval place(std::span<const uint32_t> operands, double duration, double not_before = 0.0);
    /// Pushes busy_until of every operand to max(busy_until) + dt, without charging decoherence yet.
    void delay(std::span<const uint32_t> operands, double dt);
    double total_time() const {
        return total_time_;
    }

   private:
    double lambda_;
    double total_time_ = 0.0;
    std::vector<QubitRecord> qubits_;
};

/// Shared ancilla pool: reuses released ancillas before creating new ones.
class ResourceQueue {
   public:
    explicit ResourceQueue(Scheduler &scheduler, std::optional<size_t> max_ancilla = std::nullopt)
        : scheduler_(&scheduler), max_ancilla_(max_ancilla) {
    }

    /// Prefers released ancillas already free at `not_before`, then creates new ones, then
    /// (only when the cap is reached) waits on the earliest-free released ancilla.
    /// Throws std::runtime_error when the cap leaves no ancilla to hand out.
    std::vector<uint32_t> acquire(size_t n, double not_before = INFINITY_TIME);
    /// Returns qubits to the pool. Data qubits may be released too; they become ancillas.
    void release(std::span<const uint32_t> ancillas);
    /// Held ancillas become data (e.g. teleported outputs); their lease ends now.
    void adopt(std::span<const uint32_t> ancillas);

    size_t in_use() const {
        return in_use_;
    }
    /// Peak number of ancillas simultaneously leased in time: a lease runs from the first
    /// operation after acquire to the ancilla's busy_until at release (or forever if held).
    size_t high_water() const;
    /// Peak of in_use() over the sequence of acquire/release calls.
    size_t held_high_water() const {
        return held_high_water_;
    }
    size_t total_created() const {
        return total_created_;
    }

    static constexpr double INFINITY_TIME = 1e300;

   private:
    Scheduler *scheduler_;
    std::optional<size_t> max_ancilla_;
    std::set<std::pair<double, uint32_t>> free_;
    std::set<uint32_t> held_;
    std::vector<std::pair<double, double>> leases_;
    size_t in_use_ = 0;
    size_t held_high_water_ = 0;
    size_t total_created_ = 0;
};

struct TimelineEntry {
    size_t instruction = 0;
    GateKind kind = GateKind::X;
    std::vector<uint32_t> operands;
    double start = 0.0;
    double end = 0.0;
};

struct Timeline {
    std::vector<TimelineEntry> entries;
    double total_time = 0.0;

    /// instruction,kind,operands,start,end; operands are space-separated qubit names.
    std::string to_csv(const Circuit &circuit) const;
};

/// ASAP schedule of a physical-level circuit. A conditional instruction also waits for the
/// measurements its condition reads (classical processing takes no time). Throws std::invalid_argument for level > 0 or
/// for error-correction instructions.
Timeline schedule(const Circuit &circuit, const PhysicalParams &params);

/// Duration-weighted longest dependency chain (qubit and classical), computed without the
/// scheduler.
double critical_path(const Circuit &circuit, const PhysicalParams &params);

}  // namespace ftsim

#endif
