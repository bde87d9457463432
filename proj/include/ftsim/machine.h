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

#ifndef FTSIM_MACHINE_H
#define FTSIM_MACHINE_H

#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ftsim/emitter.h"
#include "ftsim/error_model.h"
#include "ftsim/scheduler.h"

namespace ftsim {

/// Physical ids of one qubit at some encoding level: 7^level ids, constituent i occupying the
/// i-th contiguous seventh.
using Slot = std::vector<uint32_t>;

struct MachineOptions {
    bool retry_accounting = true;
    std::optional<size_t> max_ancilla;
};

/// Recursive executor. Logical operations expand into their blocks one level at a time until
/// physical operations are reached; those are scheduled ASAP and update per-qubit fidelity
/// with the worst-case product rules.
class Machine {
   public:
    explicit Machine(const PhysicalParams &base, MachineOptions options = {});

    /// Parameters seen by blocks at `level` (level 0 and 1 both give the physical model).
    const PhysicalParams &params(int level);

    Slot new_data(int level);
    Slot acquire(int level, double not_before);
    void release(const Slot &slot);
    void adopt(const Slot &slot);

    double ready_time(std::span<const uint32_t> physical) const;

    /// Worst-case rule. A conditional gate waits for the records it reads and is mixed with
    /// the identity by its firing probability.
    void apply_physical(GateKind kind, std::span<const uint32_t> qubits, const Condition *condition = nullptr);
    /// Returns the readout error; a named record remembers its completion time.
    double measure_physical(uint32_t qubit, const std::string &name = "");

    /// Runs a level-`level` operation (level >= 1). A Toffoli replaces `operands` with its
    /// teleported outputs.
    void execute(GateKind kind, std::span<Slot> operands, int level, const Condition *condition = nullptr);
    double measure_logical(const Slot &slot, int level, const std::string &name = "");

    void set_record_time(const std::string &name, double t);
    /// Throws std::invalid_argument for a record not yet measured.
    double record_time(const std::string &name) const;
    double condition_time(const Condition *condition) const;

    void retry_delay(std::span<const uint32_t> physical, double expected_repetitions);

    double fidelity(const Slot &slot) const;
    void set_fidelity(const Slot &slot, double f);

    Scheduler &scheduler() {
        return scheduler_;
    }
    const Scheduler &scheduler() const {
        return scheduler_;
    }
    ResourceQueue &pool() {
        return pool_;
    }
    const ResourceQueue &pool() const {
        return pool_;
    }
    std::string next_record_name();

   private:
    PhysicalParams base_;
    MachineOptions options_;
    std::map<int, PhysicalParams> level_cache_;
    std::unordered_map<std::string, double> record_time_;
    Scheduler scheduler_;
    ResourceQueue pool_;
    size_t records_ = 0;
};

/// Emitter whose wires are level-`level` slots of a Machine.
class MachineEmitter : public Emitter {
   public:
    MachineEmitter(Machine &machine, int level, double not_before)
        : machine_(&machine), level_(level), not_before_(not_before) {
    }

    Wire add(Slot slot);
    /// Splits a level-(level+1) slot into its seven constituent wires.
    std::vector<Wire> add_codeword(const Slot &logical);
    const Slot &slot(Wire w) const {
        return slots_.at(w);
    }
    /// Concatenation of the wires' slots, i.e. the level-(level+1) slot of a codeword.
    Slot join(std::span<const Wire> codeword) const;

    std::vector<Wire> ancillas(size_t n) override;
    void release(std::span<const Wire> wires) override;
    void gate(GateKind kind, std::span<const Wire> wires) override;
    void conditional(GateKind kind, std::span<const Wire> wires, const Condition &condition) override;
    std::string measure(Wire wire, bool postselect, const std::string &name = "") override;
    std::string majority(const std::vector<std::string> &votes, bool postselect,
                         const std::string &name = "") override;
    void repeat_until_success(std::span<const Wire> wires, double expected_repetitions) override;
    double fidelity(Wire wire) const override;
    void set_fidelity(Wire wire, double f) override;

    using Emitter::conditional;
    using Emitter::gate;

    /// Readout error of the most recent measure().
    double last_readout_error() const {
        return last_readout_;
    }

   private:
    void run(GateKind kind, std::span<const Wire> wires, const Condition *condition);
    std::vector<uint32_t> physical(std::span<const Wire> wires) const;

    Machine *machine_;
    int level_;
    double not_before_;
    std::vector<Slot> slots_;
    double last_readout_ = 0.0;
};

}  // namespace ftsim

#endif
