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

#ifndef FTSIM_LOWERING_H
#define FTSIM_LOWERING_H

#include <set>
#include <string>
#include <vector>

#include "ftsim/circuit.h"
#include "ftsim/emitter.h"
#include "ftsim/error_model.h"

namespace ftsim {

/// Emitter that writes its operations into a circuit. Wires are flat qubit indices of the
/// result: data registers first, then one "anc" register sized to the number of distinct
/// ancilla wires. Released wires are never reused, so the circuit carries no false
/// dependencies and its ASAP schedule matches the engine's.
class RecordingEmitter : public Emitter {
   public:
    explicit RecordingEmitter(int level = 0) : level_(level) {
    }

    /// Declares a data register; must precede every other call.
    std::vector<Wire> add_register(const std::string &name, uint32_t width);
    /// Keeps auto-generated record names clear of `name`.
    void reserve_name(const std::string &name);

    std::vector<Wire> ancillas(size_t n) override;
    void release(std::span<const Wire> wires) override;
    void gate(GateKind kind, std::span<const Wire> wires) override;
    void conditional(GateKind kind, std::span<const Wire> wires, const Condition &condition) override;
    std::string measure(Wire wire, bool postselect, const std::string &name = "") override;
    std::string majority(const std::vector<std::string> &votes, bool postselect,
                         const std::string &name = "") override;
    void repeat_until_success(std::span<const Wire>, double) override {
    }
    double fidelity(Wire) const override {
        return 1.0;
    }
    void set_fidelity(Wire, double) override {
    }

    using Emitter::conditional;
    using Emitter::gate;

    void add_alias(RecordAlias alias);
    Circuit finish() const;

   private:
    std::string fresh_name();

    int level_;
    std::vector<std::pair<std::string, uint32_t>> registers_;
    uint32_t data_qubits_ = 0;
    uint32_t total_wires_ = 0;
    std::vector<Instruction> instructions_;
    std::vector<RecordAlias> aliases_;
    std::set<std::string> used_names_;
    size_t counter_ = 0;
};

struct LoweredCircuit {
    Circuit circuit;
    /// For every input qubit, the seven output qubits holding it at the end (a Toffoli moves
    /// its operands onto fresh ancillas).
    std::vector<std::vector<uint32_t>> constituents;
};

/// One level of expansion: transversal gates become bit-wise gates and prep, measz, ec and
/// toffoli become their fault-tolerant blocks. Input register r of width w becomes r of width
/// 7w, bit j occupying r[7j .. 7j+6]. Throws std::invalid_argument for level-0 input.
LoweredCircuit lower_with_map(const Circuit &circuit, const PhysicalParams &params = PhysicalParams());
Circuit lower(const Circuit &circuit, const PhysicalParams &params = PhysicalParams());

}  // namespace ftsim

#endif
