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

#ifndef FTSIM_ADDERS_H
#define FTSIM_ADDERS_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ftsim/circuit.h"

namespace ftsim {

enum class AdderKind : unsigned char { Qrca, Qcla };

std::string_view adder_name(AdderKind kind);
std::optional<AdderKind> adder_from_name(std::string_view name);

struct AdderSpec {
    AdderKind kind = AdderKind::Qrca;
    uint32_t n = 1;
};

/// Ripple-carry adder, registers c[1] a[n] b[n] z[1]: b <- a + b (mod 2^n), z <- carry out,
/// a and the borrowed carry c restored. 2n Toffolis, depth 2n + 8 for n >= 2.
Circuit build_qrca(uint32_t n);

/// Out-of-place carry-lookahead adder, registers a[n] b[n] z[n+1] and, for n >= 4, an anc
/// register holding the propagate tree: z <- a + b, inputs and ancillas restored.
/// 5n - 3w(n) - 3 floor(log2 n) - 1 Toffolis (w = Hamming weight), logarithmic depth.
Circuit build_qcla(uint32_t n);

Circuit build_adder(const AdderSpec &spec);

/// Basis input with registers a and b set.
std::vector<bool> adder_input(const Circuit &circuit, uint64_t a, uint64_t b);
/// The (n+1)-bit sum read from the output registers.
uint64_t adder_sum(const Circuit &circuit, AdderKind kind, const std::vector<bool> &bits);

uint64_t read_register(const Circuit &circuit, std::string_view name, const std::vector<bool> &bits);
void write_register(const Circuit &circuit, std::string_view name, uint64_t value, std::vector<bool> &bits);

}  // namespace ftsim

#endif
