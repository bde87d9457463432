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

#ifndef FTSIM_ORACLE_H
#define FTSIM_ORACLE_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ftsim/circuit.h"
#include "ftsim/error_model.h"

namespace ftsim {

struct PauliFrame {
    std::vector<bool> x;
    std::vector<bool> z;

    PauliFrame() = default;
    explicit PauliFrame(size_t n) : x(n, false), z(n, false) {
    }
    friend bool operator==(const PauliFrame &, const PauliFrame &) = default;
};

/// Conjugates the frame through one instruction. Toffoli is accepted only when the frame
/// carries no X on a control and no Z on any operand (X on the target passes through).
/// Throws std::invalid_argument otherwise, and for ec.
PauliFrame pauli_propagate(PauliFrame frame, const Instruction &instruction);

enum class FaultModel : unsigned char {
    XOnly,        ///< X after preps and gates (on the target of CNOT/Toffoli), flipped measurements.
    Depolarizing  ///< Uniform over the gate's nontrivial Paulis; preps and measurements as above.
};

/// One fault location per instruction.
struct FaultSite {
    size_t instruction = 0;
    char symbol = 'c';  ///< s prep, x/y/z/h single-qubit gate, c cnot, t toffoli, m measurement.
    double probability = 0.0;
};

/// Conditional instructions fault with probability p times their firing probability.
std::vector<FaultSite> fault_sites(const Circuit &circuit, const PhysicalParams &params);

/// A trial fails when any listed condition holds on the final frame (accepted trials only).
struct ErrorCriterion {
    std::vector<uint32_t> any_x;
    std::vector<uint32_t> any_pauli;
    /// Nontrivial X residual other than the all-ones pattern (cat states).
    std::vector<std::vector<uint32_t>> x_up_to_all_ones;
    /// Steane codewords: logical X or Z error after single-error decoding.
    std::vector<std::vector<uint32_t>> codewords;
    /// Steane codewords: any residual outside the stabilizer group.
    std::vector<std::vector<uint32_t>> modulo_stabilizers;
    /// Records (or aliases) that deviate from their ideal value.
    std::vector<std::string> records;

    std::vector<uint32_t> qubits() const;
};

/// Monomial label such as "p_s*p_c" or "p_c^2".
std::string monomial(const std::string &symbols);

struct FaultPathCounts {
    size_t sites = 0;
    int max_order = 0;
    /// Fault sets that pass every postselection and still fail the criterion.
    std::map<std::string, uint64_t> undetected;
    /// Order-2 pairs of faults that are each rejected alone but leave identical residuals on
    /// the output qubits, so together they slip through verification.
    std::map<std::string, uint64_t> cancellation_pairs;

    uint64_t undetected_count(const std::string &monomial) const;
    uint64_t cancellation_count(const std::string &monomial) const;
    /// monomial,order,undetected,cancellation_pairs
    std::string to_csv() const;
};

/// Exhaustive enumeration over X-only faults. Toffoli controls always propagate.
/// Throws std::invalid_argument when the circuit has more than `max_sites` fault sites.
FaultPathCounts enumerate_fault_paths(const Circuit &circuit, const ErrorCriterion &criterion, int max_order,
                                      size_t max_sites = 2000);

struct MonteCarloResult {
    uint64_t trials = 0;
    uint64_t accepted = 0;
    uint64_t failures = 0;
    double estimate = 0.0;
    double sigma = 0.0;
    /// 95% Wilson interval.
    double ci_low = 0.0;
    double ci_high = 0.0;
};

/// Bit-parallel Pauli-frame sampling, 64 trials per machine word, mt19937_64 seeded with
/// `seed`. Classically controlled gates misfire when their condition matches the deviation
/// of the records from their ideal values; a misfire injects the gate's own Pauli (X, Y, Z;
/// X on the target of CNOT/Toffoli; nothing for H). Toffoli controls carrying X flip the
/// target with probability 1/2, and a Z on the target reaches each control with probability
/// 1/2.
MonteCarloResult monte_carlo_error(const Circuit &circuit, const PhysicalParams &params,
                                   const ErrorCriterion &criterion, uint64_t trials, uint64_t seed,
                                   FaultModel model = FaultModel::XOnly);

/// Classical evaluation of an X/CNOT/Toffoli/prep circuit on a basis state.
std::vector<bool> reversible_simulate(const Circuit &circuit, std::vector<bool> input);

}  // namespace ftsim

#endif
