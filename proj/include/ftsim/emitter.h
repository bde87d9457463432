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

#ifndef FTSIM_EMITTER_H
#define FTSIM_EMITTER_H

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ftsim/circuit.h"

namespace ftsim {

/// A qubit handle one level below the block being built.
using Wire = uint32_t;

/// Sink for the operations of a fault-tolerant block.
///
/// Block builders describe a level-L gadget as level-(L-1) operations on wires. A recording
/// emitter turns them into circuit text; the engine executes them (recursively, when L-1 > 0)
/// while scheduling and tracking fidelity.
class Emitter {
   public:
    virtual ~Emitter() = default;

    virtual std::vector<Wire> ancillas(size_t n) = 0;
    virtual void release(std::span<const Wire> wires) = 0;

    virtual void gate(GateKind kind, std::span<const Wire> wires) = 0;
    virtual void conditional(GateKind kind, std::span<const Wire> wires, const Condition &condition) = 0;
    /// Returns the record name. `name` may be empty for an auto-generated one.
    virtual std::string measure(Wire wire, bool postselect, const std::string &name = "") = 0;
    /// Majority of `votes` under a fresh or given name.
    virtual std::string majority(const std::vector<std::string> &votes, bool postselect,
                                 const std::string &name = "") = 0;
    /// The preceding postselected check on `wires` is repeated until it passes.
    virtual void repeat_until_success(std::span<const Wire> wires, double expected_repetitions) = 0;

    /// Mean constituent fidelity of a wire (1 for a recording emitter).
    virtual double fidelity(Wire wire) const = 0;
    virtual void set_fidelity(Wire wire, double f) = 0;

    void gate(GateKind kind, std::initializer_list<Wire> wires) {
        gate(kind, std::span<const Wire>(wires.begin(), wires.size()));
    }
    void conditional(GateKind kind, std::initializer_list<Wire> wires, const Condition &condition) {
        conditional(kind, std::span<const Wire>(wires.begin(), wires.size()), condition);
    }
};

}  // namespace ftsim

#endif
