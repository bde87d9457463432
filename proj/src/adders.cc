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

#include "ftsim/adders.h"

#include <bit>
#include <map>
#include <stdexcept>
#include <string>

namespace ftsim {

std::string_view adder_name(AdderKind kind) {
    return kind == AdderKind::Qrca ? "qrca" : "qcla";
}

std::optional<AdderKind> adder_from_name(std::string_view name) {
    if (name == "qrca") {
        return AdderKind::Qrca;
    }
    if (name == "qcla") {
        return AdderKind::Qcla;
    }
    return std::nullopt;
}

namespace {

void check_width(uint32_t n) {
    if (n < 1) {
        throw std::invalid_argument("adder width must be at least 1");
    }
    if (n > 62) {
        throw std::invalid_argument("adder width above 62 is not supported");
    }
}

int floor_log2(uint32_t x) {
    return x == 0 ? -1 : 31 - std::countl_zero(x);
}

}  // namespace

Circuit build_qrca(uint32_t n) {
    check_width(n);
    Circuit c;
    uint32_t c0 = c.add_register("c", 1);
    uint32_t a0 = c.add_register("a", n);
    uint32_t b0 = c.add_register("b", n);
    uint32_t z = c.add_register("z", 1);
    auto a = [&](uint32_t i) { return a0 + i; };
    auto b = [&](uint32_t i) { return b0 + i; };
    auto prev = [&](uint32_t i) { return i == 0 ? c0 : a(i - 1); };

    c.append(GateKind::PrepZero, {c0});
    c.append(GateKind::PrepZero, {z});
    // MAJ ladder, its leading CNOTs hoisted so they run in parallel.
    for (uint32_t i = 0; i < n; i++) {
        c.append(GateKind::CNOT, {a(i), b(i)});
    }
    c.append(GateKind::CNOT, {a(0), c0});
    for (uint32_t i = 0; i < n; i++) {
        if (i + 1 < n) {
            c.append(GateKind::CNOT, {a(i + 1), a(i)});
        }
        c.append(GateKind::Toffoli, {prev(i), b(i), a(i)});
    }
    c.append(GateKind::CNOT, {a(n - 1), z});
    // UMA ladder in the 3-CNOT form, with the b-side X/CNOT pairs hoisted.
    for (uint32_t i = 0; i < n; i++) {
        c.append(GateKind::X, {b(i)});
        c.append(GateKind::CNOT, {prev(i), b(i)});
    }
    c.append(GateKind::Toffoli, {prev(n - 1), b(n - 1), a(n - 1)});
    for (uint32_t i = n; i-- > 0;) {
        if (i >= 1) {
            c.append(GateKind::Toffoli, {prev(i - 1), b(i - 1), a(i - 1)});
        }
        c.append(GateKind::CNOT, {a(i), prev(i)});
        c.append(GateKind::X, {b(i)});
        c.append(GateKind::CNOT, {a(i), b(i)});
    }
    return c;
}

Circuit build_qcla(uint32_t n) {
    check_width(n);
    const int log_n = floor_log2(n);

    // Propagate-tree ancillas P_t[m], t >= 1; P_0[m] lives in b[m] once b holds a XOR b.
    std::map<std::pair<int, uint32_t>, uint32_t> tree;
    for (int t = 1; t < log_n; t++) {
        for (uint32_t m = 1; m < (n >> t); m++) {
            tree.emplace(std::make_pair(t, m), static_cast<uint32_t>(tree.size()));
        }
    }

    Circuit c;
    uint32_t a0 = c.add_register("a", n);
    uint32_t b0 = c.add_register("b", n);
    uint32_t z0 = c.add_register("z", n + 1);
    uint32_t anc0 = tree.empty() ? 0 : c.add_register("anc", static_cast<uint32_t>(tree.size()));
    auto a = [&](uint32_t i) { return a0 + i; };
    auto b = [&](uint32_t i) { return b0 + i; };
    auto z = [&](uint32_t i) { return z0 + i; };
    auto P = [&](int t, uint32_t m) { return t == 0 ? b(m) : anc0 + tree.at({t, m}); };

    for (uint32_t i = 0; i <= n; i++) {
        c.append(GateKind::PrepZero, {z(i)});
    }
    for (uint32_t k = 0; k < tree.size(); k++) {
        c.append(GateKind::PrepZero, {anc0 + k});
    }
    for (uint32_t i = 0; i < n; i++) {
        c.append(GateKind::Toffoli, {a(i), b(i), z(i + 1)});
    }
    for (uint32_t i = 0; i < n; i++) {
        c.append(GateKind::CNOT, {a(i), b(i)});
    }
    std::vector<std::vector<uint32_t>> p_rounds;
    for (int t = 1; t < log_n; t++) {
        for (uint32_t m = 1; m < (n >> t); m++) {
            p_rounds.push_back({P(t - 1, 2 * m), P(t - 1, 2 * m + 1), P(t, m)});
        }
    }
    for (const auto &ops : p_rounds) {
        c.append(GateKind::Toffoli, ops);
    }
    // G rounds.
    for (int t = 1; t <= log_n; t++) {
        uint32_t s = 1u << t;
        for (uint32_t m = 0; m < (n >> t); m++) {
            c.append(GateKind::Toffoli, {z(s * m + s / 2), P(t - 1, 2 * m + 1), z(s * m + s)});
        }
    }
    // C rounds.
    int top = floor_log2(static_cast<uint32_t>((2 * n) / 3));
    if (2 * n < 3) {
        top = -1;
    }
    for (int t = top; t >= 1; t--) {
        uint32_t s = 1u << t;
        if (n < s / 2) {
            continue;
        }
        for (uint32_t m = 1; m <= (n - s / 2) / s; m++) {
            c.append(GateKind::Toffoli, {z(s * m), P(t - 1, 2 * m), z(s * m + s / 2)});
        }
    }
    for (auto it = p_rounds.rbegin(); it != p_rounds.rend(); ++it) {
        c.append(GateKind::Toffoli, *it);
    }
    for (uint32_t i = 0; i < n; i++) {
        c.append(GateKind::CNOT, {b(i), z(i)});
    }
    for (uint32_t i = 0; i < n; i++) {
        c.append(GateKind::CNOT, {a(i), b(i)});
    }
    return c;
}

Circuit build_adder(const AdderSpec &spec) {
    return spec.kind == AdderKind::Qrca ? build_qrca(spec.n) : build_qcla(spec.n);
}

uint64_t read_register(const Circuit &circuit, std::string_view name, const std::vector<bool> &bits) {
    const Register *r = circuit.find_register(name);
    if (r == nullptr) {
        throw std::invalid_argument("no register named " + std::string(name));
    }
    uint64_t v = 0;
    for (uint32_t i = 0; i < r->width && i < 64; i++) {
        if (bits.at(r->offset + i)) {
            v |= uint64_t{1} << i;
        }
    }
    return v;
}

void write_register(const Circuit &circuit, std::string_view name, uint64_t value, std::vector<bool> &bits) {
    const Register *r = circuit.find_register(name);
    if (r == nullptr) {
        throw std::invalid_argument("no register named " + std::string(name));
    }
    for (uint32_t i = 0; i < r->width && i < 64; i++) {
        bits.at(r->offset + i) = ((value >> i) & 1) != 0;
    }
}

std::vector<bool> adder_input(const Circuit &circuit, uint64_t a, uint64_t b) {
    std::vector<bool> bits(circuit.num_qubits(), false);
    write_register(circuit, "a", a, bits);
    write_register(circuit, "b", b, bits);
    return bits;
}

uint64_t adder_sum(const Circuit &circuit, AdderKind kind, const std::vector<bool> &bits) {
    if (kind == AdderKind::Qcla) {
        return read_register(circuit, "z", bits);
    }
    uint32_t n = circuit.find_register("b")->width;
    return read_register(circuit, "b", bits) | (read_register(circuit, "z", bits) << n);
}

}  // namespace ftsim
