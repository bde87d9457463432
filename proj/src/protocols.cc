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

#include "ftsim/protocols.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ftsim {

std::string StabilizerGenerator::pauli_string() const {
    std::string s(STEANE_N, 'I');
    for (uint32_t q : support) {
        s[q] = type;
    }
    return s;
}

const std::array<StabilizerGenerator, 6> &steane_generators() {
    static const std::array<StabilizerGenerator, 6> gens = {{
        {"g1", 'X', {3, 4, 5, 6}},
        {"g2", 'X', {1, 2, 5, 6}},
        {"g3", 'X', {0, 2, 4, 6}},
        {"g4", 'Z', {3, 4, 5, 6}},
        {"g5", 'Z', {1, 2, 5, 6}},
        {"g6", 'Z', {0, 2, 4, 6}},
    }};
    return gens;
}

CatCoefficients cat_coefficients(int l) {
    if (l < 3) {
        throw std::invalid_argument("cat state needs at least 3 qubits, got " + std::to_string(l));
    }
    return {l - 1, l + 1, l + 1};
}

Fidelity cat_fidelity(int l, double p_s, double p_c) {
    CatCoefficients c = cat_coefficients(l);
    double second = c.prep_prep * p_s * p_s + c.prep_cnot * p_s * p_c + c.cnot_cnot * p_c * p_c;
    return Fidelity(std::clamp(1.0 - 0.5 * second, 0.0, 1.0));
}

double cat_rejection_probability(int l, const PhysicalParams &params) {
    double p = l * params.prep_error + (l + 1) * params.error(GateKind::CNOT) + params.measurement_error;
    return std::clamp(p, 0.0, 0.999);
}

double cat_expected_repetitions(int l, const PhysicalParams &params) {
    return 1.0 / (1.0 - cat_rejection_probability(l, params));
}

double majority_vote_error(double p) {
    return 3 * p * p * (1 - p) + p * p * p;
}

double majority_vote_error(double a, double b, double c) {
    return a * b + a * c + b * c - 2 * a * b * c;
}

double parity_round_error(char type, size_t weight, const PhysicalParams &params) {
    double w = static_cast<double>(weight);
    double p_h = params.error(GateKind::H);
    double p_c = params.error(GateKind::CNOT);
    double r = params.measurement_error + 2 * p_h + (3 * w - 2) * p_c;
    if (type == 'Z') {
        r += 2 * w * p_h;
    }
    return std::min(r, 1.0);
}

double stabilizer_round_error(const StabilizerGenerator &g, const PhysicalParams &params) {
    return parity_round_error(g.type, g.support.size(), params);
}

double logical_measure_round_error(const PhysicalParams &params) {
    return parity_round_error('Z', STEANE_LOGICAL_SUPPORT.size(), params);
}

double state_prep_error(const PhysicalParams &params) {
    double p = params.error(GateKind::X);
    return p * (1 - 3 * p * p);
}

Fidelity logical_prep_fidelity(const PhysicalParams &params, size_t constituent) {
    double f = error_to_fidelity(state_prep_error(params));
    if (std::find(STEANE_LOGICAL_SUPPORT.begin(), STEANE_LOGICAL_SUPPORT.end(), constituent) !=
        STEANE_LOGICAL_SUPPORT.end()) {
        f *= 1 - params.error(GateKind::X);
    }
    return Fidelity(std::clamp(f, 0.0, 1.0));
}

Fidelity error_correct_update(Fidelity f_in, double round_error_x, double round_error_z, double correction_error) {
    double e = f_in.error_probability();
    double m_x = majority_vote_error(round_error_x);
    double m_z = majority_vote_error(round_error_z);
    double p_false = 1 - std::pow(1 - m_x, 3) * std::pow(1 - m_z, 3);
    double keep = e * (1 - std::pow(1 - e, 6)) + e * p_false + e * correction_error;
    double f = (1 - p_false) * (1 - 0.5 * keep);
    return Fidelity(std::clamp(f, 0.0, 1.0));
}

Fidelity error_correct_update(Fidelity f_in, const PhysicalParams &params) {
    const auto &g = steane_generators();
    return error_correct_update(f_in, stabilizer_round_error(g[0], params), stabilizer_round_error(g[3], params),
                                params.error(GateKind::X));
}

PhysicalParams level_params(const PhysicalParams &base, int level) {
    if (level < 1) {
        throw std::invalid_argument("level_params needs level >= 1");
    }
    if (level == 1) {
        return base;
    }
    PhysicalParams below = level_params(base, level - 1);
    PhysicalParams out = below;
    auto residual = [&](double p) { return error_correct_update(Fidelity::from_error(p), below).error_probability(); };
    for (auto &[kind, p] : out.gate_error) {
        p = residual(p);
    }
    out.prep_error = residual(state_prep_error(below));
    out.measurement_error = majority_vote_error(logical_measure_round_error(below));
    return out;
}

std::vector<Wire> emit_cat(Emitter &out, size_t l, const PhysicalParams &params) {
    std::vector<Wire> w = out.ancillas(l + 1);
    for (Wire q : w) {
        out.gate(GateKind::PrepZero, {q});
    }
    out.gate(GateKind::H, {w[0]});
    for (size_t k = 0; k + 1 < l; k++) {
        out.gate(GateKind::CNOT, {w[k], w[k + 1]});
    }
    out.gate(GateKind::CNOT, {w[l - 1], w[l]});
    out.gate(GateKind::CNOT, {w[0], w[l]});
    out.measure(w[l], true);
    out.repeat_until_success(w, cat_expected_repetitions(static_cast<int>(l), params));
    Fidelity f = cat_fidelity(static_cast<int>(l), params.prep_error, params.error(GateKind::CNOT));
    for (size_t k = 0; k < l; k++) {
        out.set_fidelity(w[k], f.value());
    }
    out.release(std::span<const Wire>(&w[l], 1));
    w.pop_back();
    return w;
}

std::string emit_parity_round(Emitter &out, char type, std::span<const Wire> data, const PhysicalParams &params) {
    size_t l = data.size();
    std::vector<Wire> cat = emit_cat(out, l, params);
    for (size_t k = 0; k < l; k++) {
        if (type == 'X') {
            out.gate(GateKind::CNOT, {cat[k], data[k]});
        } else {
            out.gate(GateKind::H, {cat[k]});
            out.gate(GateKind::CNOT, {data[k], cat[k]});
            out.gate(GateKind::H, {cat[k]});
        }
    }
    for (size_t k = l - 1; k-- > 0;) {
        out.gate(GateKind::CNOT, {cat[k], cat[k + 1]});
    }
    out.gate(GateKind::H, {cat[0]});
    std::string rec = out.measure(cat[0], false);
    out.release(cat);
    return rec;
}

namespace {

std::vector<Wire> pick(std::span<const Wire> data, std::span<const uint32_t> support) {
    std::vector<Wire> w;
    for (uint32_t q : support) {
        w.push_back(data[q]);
    }
    return w;
}

void check_codeword(std::span<const Wire> data) {
    if (data.size() != STEANE_N) {
        throw std::invalid_argument("a Steane codeword has 7 constituents, got " + std::to_string(data.size()));
    }
}

std::vector<Wire> logical_support(std::span<const Wire> data) {
    return pick(data, STEANE_LOGICAL_SUPPORT);
}

}  // namespace

SyndromeRecords emit_syndrome_rounds(Emitter &out, std::span<const Wire> data, const PhysicalParams &params) {
    check_codeword(data);
    SyndromeRecords rec;
    const auto &gens = steane_generators();
    for (size_t r = 0; r < 3; r++) {
        for (size_t g = 0; g < gens.size(); g++) {
            rec[g][r] = emit_parity_round(out, gens[g].type, pick(data, gens[g].support), params);
        }
    }
    return rec;
}

void emit_syndrome_corrections(Emitter &out, std::span<const Wire> data, const SyndromeRecords &records,
                               std::span<const double> fire_probability) {
    check_codeword(data);
    for (size_t j = 0; j < STEANE_N; j++) {
        uint32_t column = static_cast<uint32_t>(j + 1);
        for (GateKind kind : {GateKind::X, GateKind::Z}) {
            size_t first = kind == GateKind::X ? 3 : 0;
            Condition cond;
            cond.fire_probability = fire_probability[j];
            for (size_t b = 0; b < 3; b++) {
                const auto &r = records[first + b];
                cond.bits.push_back({{r[0], r[1], r[2]}, ((column >> (2 - b)) & 1) != 0});
            }
            out.conditional(kind, {data[j]}, cond);
        }
    }
}

void emit_logical_prep(Emitter &out, std::span<const Wire> data, const PhysicalParams &params) {
    check_codeword(data);
    for (Wire q : data) {
        out.gate(GateKind::PrepZero, {q});
    }
    SyndromeRecords rec = emit_syndrome_rounds(out, data, params);
    std::array<double, STEANE_N> fire;
    fire.fill(1.0 / 8.0);
    emit_syndrome_corrections(out, data, rec, fire);

    std::vector<Wire> zs = logical_support(data);
    Condition flip;
    flip.fire_probability = 0.5;
    ConditionBit bit;
    for (size_t r = 0; r < 3; r++) {
        bit.votes.push_back(emit_parity_round(out, 'Z', zs, params));
    }
    flip.bits.push_back(bit);
    for (Wire q : zs) {
        out.conditional(GateKind::X, {q}, flip);
    }
    for (size_t j = 0; j < STEANE_N; j++) {
        out.set_fidelity(data[j], logical_prep_fidelity(params, j).value());
    }
}

void emit_error_correction(Emitter &out, std::span<const Wire> data, const PhysicalParams &params) {
    check_codeword(data);
    std::array<double, STEANE_N> f_in;
    std::array<double, STEANE_N> fire;
    for (size_t j = 0; j < STEANE_N; j++) {
        f_in[j] = out.fidelity(data[j]);
        fire[j] = fidelity_to_error(f_in[j]);
    }
    SyndromeRecords rec = emit_syndrome_rounds(out, data, params);
    emit_syndrome_corrections(out, data, rec, fire);
    for (size_t j = 0; j < STEANE_N; j++) {
        out.set_fidelity(data[j], error_correct_update(Fidelity(f_in[j]), params).value());
    }
}

std::string emit_logical_measure(Emitter &out, std::span<const Wire> data, const PhysicalParams &params,
                                 bool postselect, const std::string &name) {
    check_codeword(data);
    std::vector<Wire> zs = logical_support(data);
    std::vector<std::string> votes;
    for (size_t r = 0; r < 3; r++) {
        votes.push_back(emit_parity_round(out, 'Z', zs, params));
    }
    return out.majority(votes, postselect, name);
}

void emit_transversal(Emitter &out, GateKind kind, std::span<const std::vector<Wire>> operands,
                      const Condition *condition) {
    if (!is_transversal(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " is not transversal");
    }
    if (operands.size() != gate_arity(kind)) {
        throw std::invalid_argument(std::string(gate_name(kind)) + " takes " + std::to_string(gate_arity(kind)) +
                                    " codewords, got " + std::to_string(operands.size()));
    }
    for (const auto &w : operands) {
        check_codeword(w);
    }
    std::vector<Wire> wires(operands.size());
    for (size_t i = 0; i < STEANE_N; i++) {
        for (size_t k = 0; k < operands.size(); k++) {
            wires[k] = operands[k][i];
        }
        if (condition != nullptr) {
            out.conditional(kind, wires, *condition);
        } else {
            out.gate(kind, wires);
        }
    }
}

std::array<std::vector<Wire>, 3> emit_ft_toffoli(Emitter &out, std::span<const Wire> x, std::span<const Wire> y,
                                                 std::span<const Wire> z, const PhysicalParams &params) {
    check_codeword(x);
    check_codeword(y);
    check_codeword(z);
    using Words = std::vector<std::vector<Wire>>;
    std::vector<Wire> a = out.ancillas(STEANE_N);
    std::vector<Wire> b = out.ancillas(STEANE_N);
    std::vector<Wire> c = out.ancillas(STEANE_N);
    emit_logical_prep(out, a, params);
    emit_logical_prep(out, b, params);
    emit_logical_prep(out, c, params);
    emit_transversal(out, GateKind::H, Words{a});
    emit_transversal(out, GateKind::H, Words{b});

    // Verify the ancilla state three times with a 7-qubit cat.
    ConditionBit verdict;
    for (size_t r = 0; r < 3; r++) {
        std::vector<Wire> cat = emit_cat(out, STEANE_N, params);
        for (size_t i = 0; i < STEANE_N; i++) {
            out.gate(GateKind::Toffoli, {cat[i], b[i], c[i]});
        }
        for (size_t i = 0; i < STEANE_N; i++) {
            out.gate(GateKind::H, {a[i]});
            out.gate(GateKind::CNOT, {cat[i], a[i]});
            out.gate(GateKind::H, {a[i]});
        }
        for (size_t k = STEANE_N - 1; k-- > 0;) {
            out.gate(GateKind::CNOT, {cat[k], cat[k + 1]});
        }
        out.gate(GateKind::H, {cat[0]});
        verdict.votes.push_back(out.measure(cat[0], false));
        out.release(cat);
    }
    Condition fix{{verdict}, 0.5};
    emit_transversal(out, GateKind::X, Words{c}, &fix);

    std::vector<Wire> xs(x.begin(), x.end());
    std::vector<Wire> ys(y.begin(), y.end());
    std::vector<Wire> zs(z.begin(), z.end());
    emit_transversal(out, GateKind::CNOT, Words{a, xs});
    emit_transversal(out, GateKind::CNOT, Words{b, ys});
    emit_transversal(out, GateKind::CNOT, Words{zs, c});
    emit_transversal(out, GateKind::H, Words{zs});
    std::string m_x = emit_logical_measure(out, xs, params);
    std::string m_y = emit_logical_measure(out, ys, params);
    std::string m_z = emit_logical_measure(out, zs, params);

    Condition on_x{{{{m_x}, true}}, 0.5};
    emit_transversal(out, GateKind::X, Words{a}, &on_x);
    emit_transversal(out, GateKind::CNOT, Words{b, c}, &on_x);
    Condition on_y{{{{m_y}, true}}, 0.5};
    emit_transversal(out, GateKind::X, Words{b}, &on_y);
    emit_transversal(out, GateKind::CNOT, Words{a, c}, &on_y);
    Condition on_z{{{{m_z}, true}}, 0.5};
    emit_transversal(out, GateKind::Z, Words{c}, &on_z);
    emit_transversal(out, GateKind::H, Words{b}, &on_z);
    emit_transversal(out, GateKind::CNOT, Words{a, b}, &on_z);
    emit_transversal(out, GateKind::H, Words{b}, &on_z);

    out.release(xs);
    out.release(ys);
    out.release(zs);
    return {a, b, c};
}

}  // namespace ftsim
