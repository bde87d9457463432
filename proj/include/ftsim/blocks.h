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

#ifndef FTSIM_BLOCKS_H
#define FTSIM_BLOCKS_H

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ftsim/circuit.h"
#include "ftsim/error_model.h"
#include "ftsim/protocols.h"

namespace ftsim {

/// One fault-tolerant gadget, both as a physical sub-circuit and as evaluated by the engine
/// (ASAP on a fresh machine, every input at the given fidelity).
struct BlockResult {
    Circuit circuit;
    /// Output qubit (name in `circuit`) and its fidelity.
    std::vector<std::pair<std::string, double>> outputs;
    /// Flat indices of the outputs in `circuit`.
    std::vector<uint32_t> output_qubits;
    double duration = 0.0;
    /// Peak simultaneous ancilla count.
    size_t ancilla_demand = 0;
    double expected_repetitions = 1.0;
    /// Measurement blocks: error of the reported outcome.
    double readout_error = 0.0;

    /// Union bound over outputs: sum of 2(1 - f).
    double error_union_bound() const;
    std::vector<double> output_fidelities() const;
};

/// l cat qubits plus one verification qubit, register "cat" of width l + 1.
BlockResult cat_block(size_t l, const PhysicalParams &params, bool retry_accounting = true);
/// Three rounds on a fresh codeword "d"; the outputs are the data constituents.
BlockResult stabilizer_measurement_block(const StabilizerGenerator &g, const PhysicalParams &params,
                                         bool retry_accounting = true);
BlockResult logical_prep_zero(const PhysicalParams &params, bool retry_accounting = true);
BlockResult logical_measure_z(const PhysicalParams &params, double input_error = 0.0, bool retry_accounting = true);
BlockResult error_correction_block(const PhysicalParams &params, double input_error = 0.0,
                                   bool retry_accounting = true);
/// Operands "x", "y", "z"; outputs are the 21 constituents of the teleported codewords.
BlockResult ft_toffoli_block(const PhysicalParams &params, std::array<double, 3> input_errors = {},
                             bool retry_accounting = true);
/// `input_fidelities` gives one fidelity per operand codeword, applied to all its constituents.
BlockResult transversal_gate_block(GateKind kind, std::span<const double> input_fidelities,
                                   const PhysicalParams &params);

}  // namespace ftsim

#endif
