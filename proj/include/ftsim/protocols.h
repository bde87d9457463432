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

#ifndef FTSIM_PROTOCOLS_H
#define FTSIM_PROTOCOLS_H

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ftsim/emitter.h"
#include "ftsim/error_model.h"

namespace ftsim {

inline constexpr size_t STEANE_N = 7;

/// One generator of the Steane code. `support` is 0-based.
struct StabilizerGenerator {
    std::string name;
    char type = 'X';  ///< 'X' or 'Z'.
    std::array<uint32_t, 4> support{};

    /// Pauli string such as "IXXIIXX".
    std::string pauli_string() const;
};

/// g1..g3 are X-type, g4..g6 Z-type with the same supports. The support of g_k (k = 1, 2, 3)
/// is the set of constituents whose 1-based index has bit (3 - k) set, so the syndrome of a
/// single flip on constituent j spells j + 1 in binary.
const std::array<StabilizerGenerator, 6> &steane_generators();

/// Constituents carrying logical Z (and logical X).
inline constexpr std::array<uint32_t, 3> STEANE_LOGICAL_SUPPORT = {0, 1, 2};

/// Second-order coefficients of the l-qubit cat fidelity in p_s^2, p_s p_c and p_c^2.
struct CatCoefficients {
    int prep_prep = 0;
    int prep_cnot = 0;
    int cnot_cnot = 0;
};
/// (l-1, l+1, l+1); throws std::invalid_argument for l < 3.
CatCoefficients cat_coefficients(int l);
/// 1 - [(l-1) p_s^2 + (l+1) p_s p_c + (l+1) p_c^2] / 2.
Fidelity cat_fidelity(int l, double p_s, double p_c);
/// First-order probability that the verification qubit reads 1.
double cat_rejection_probability(int l, const PhysicalParams &params);
double cat_expected_repetitions(int l, const PhysicalParams &params);

/// 3p^2(1-p) + p^3.
double majority_vote_error(double p);
/// Two-of-three failure of independent rounds.
double majority_vote_error(double a, double b, double c);

/// Single-round readout error of a cat-based parity measurement of `weight` data qubits:
/// the measurement itself, the two Hadamards on the measured cat qubit, the cat chain and the
/// decoding chain (2(w-1) CNOTs) and the w contacts. A Z-type contact adds two Hadamards per
/// cat qubit. For the weight-4 generators this is 13p (X-type) and 21p (Z-type) at uniform p.
double parity_round_error(char type, size_t weight, const PhysicalParams &params);
double stabilizer_round_error(const StabilizerGenerator &g, const PhysicalParams &params);
/// Single round of the weight-3 logical Z parity.
double logical_measure_round_error(const PhysicalParams &params);

/// p (1 - 3 p^2) with p the X gate error (the correction gate).
double state_prep_error(const PhysicalParams &params);
Fidelity logical_prep_fidelity(const PhysicalParams &params, size_t constituent);

/// Error correction update of one constituent.
///
/// With m = majority failure of a syndrome bit and P = 1 - (1 - m_x)^3 (1 - m_z)^3 the chance
/// that some syndrome bit is wrong, the constituent error e becomes
///     keep = e (1 - (1 - e)^6) + e P + e p_x     (miss, second error in block, correction gate)
///     f_out = (1 - P) (1 - keep / 2).
/// At e = 0 and one syndrome type this is 1 - 9 r^2 to leading order.
Fidelity error_correct_update(Fidelity f_in, double round_error_x, double round_error_z, double correction_error = 0.0);
Fidelity error_correct_update(Fidelity f_in, const PhysicalParams &params);

/// Parameters describing level-(L-1) operations, as used by level-L blocks. Level 1 is the
/// physical model; above that every error probability is replaced by the error-corrected
/// residual of one lower-level operation.
PhysicalParams level_params(const PhysicalParams &base, int level);

/// Verified cat: prep, H, CNOT chain, parity check of the first and last qubits on one extra qubit.
/// Returns the l cat wires; the verification wire is released.
std::vector<Wire> emit_cat(Emitter &out, size_t l, const PhysicalParams &params);

/// One cat-based round measuring the X- or Z-parity of `data`; returns the record.
std::string emit_parity_round(Emitter &out, char type, std::span<const Wire> data, const PhysicalParams &params);

/// Three rounds of all six generators; rounds[g][r].
using SyndromeRecords = std::array<std::array<std::string, 3>, 6>;
SyndromeRecords emit_syndrome_rounds(Emitter &out, std::span<const Wire> data, const PhysicalParams &params);
/// Conditional X (from g4..g6) and Z (from g1..g3) on each constituent, keyed by its column.
void emit_syndrome_corrections(Emitter &out, std::span<const Wire> data, const SyndromeRecords &records,
                               std::span<const double> fire_probability);

void emit_logical_prep(Emitter &out, std::span<const Wire> data, const PhysicalParams &params);
void emit_error_correction(Emitter &out, std::span<const Wire> data, const PhysicalParams &params);
/// Three logical-Z parity rounds and their majority; returns the majority record.
std::string emit_logical_measure(Emitter &out, std::span<const Wire> data, const PhysicalParams &params,
                                 bool postselect = false, const std::string &name = "");

/// Bit-wise gate over codewords; `operands` holds one 7-wire codeword per gate operand.
void emit_transversal(Emitter &out, GateKind kind, std::span<const std::vector<Wire>> operands,
                      const Condition *condition = nullptr);

/// Ancilla preparation plus teleportation completion. Returns the three output codewords;
/// the input codewords are measured and released.
std::array<std::vector<Wire>, 3> emit_ft_toffoli(Emitter &out, std::span<const Wire> x, std::span<const Wire> y,
                                                 std::span<const Wire> z, const PhysicalParams &params);

}  // namespace ftsim

#endif
