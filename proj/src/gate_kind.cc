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

#include "ftsim/gate_kind.h"

namespace ftsim {

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::PrepZero:
            return "prep";
        case GateKind::X:
            return "x";
        case GateKind::Y:
            return "y";
        case GateKind::Z:
            return "z";
        case GateKind::H:
            return "h";
        case GateKind::CNOT:
            return "cnot";
        case GateKind::Toffoli:
            return "toffoli";
        case GateKind::MeasureZ:
            return "measz";
        case GateKind::ErrorCorrect:
            return "ec";
    }
    return "?";
}

std::optional<GateKind> gate_from_name(std::string_view name) {
    for (GateKind k : ALL_GATE_KINDS) {
        if (gate_name(k) == name) {
            return k;
        }
    }
    return std::nullopt;
}

std::size_t gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
            return 2;
        case GateKind::Toffoli:
            return 3;
        default:
            return 1;
    }
}

bool is_transversal(GateKind kind) {
    switch (kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::H:
        case GateKind::CNOT:
            return true;
        default:
            return false;
    }
}

}  // namespace ftsim
