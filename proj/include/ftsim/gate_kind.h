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

#ifndef FTSIM_GATE_KIND_H
#define FTSIM_GATE_KIND_H

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace ftsim {

/// The closed universal operation set: Paulis, Hadamard, CNOT, Toffoli, |0> preparation,
/// Z-basis measurement and (logical-level only) error correction.
enum class GateKind : unsigned char {
    PrepZero,
    X,
    Y,
    Z,
    H,
    CNOT,
    Toffoli,
    MeasureZ,
    ErrorCorrect,
};

inline constexpr std::array<GateKind, 9> ALL_GATE_KINDS = {
    GateKind::PrepZero, GateKind::X,       GateKind::Y,        GateKind::Z,           GateKind::H,
    GateKind::CNOT,     GateKind::Toffoli, GateKind::MeasureZ, GateKind::ErrorCorrect,
};

/// Lower-case mnemonic used by the text format ("prep", "x", ..., "measz", "ec").
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

/// Number of qubit operands the kind takes.
std::size_t gate_arity(GateKind kind);

/// True for gates applied bit-wise across a codeword (X, Y, Z, H, CNOT).
bool is_transversal(GateKind kind);

}  // namespace ftsim

#endif
