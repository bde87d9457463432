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

#include "ftsim/circuit.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <sstream>

namespace ftsim {

namespace {

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

std::vector<std::string> split_on(std::string_view s, char sep) {
    std::vector<std::string> out;
    size_t start = 0;
    while (true) {
        size_t end = s.find(sep, start);
        out.emplace_back(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
        if (end == std::string_view::npos) {
            return out;
        }
        start = end + 1;
    }
}

bool parse_uint(std::string_view s, uint32_t &out) {
    if (s.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

bool valid_name(std::string_view s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) {
        return false;
    }
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    });
}

std::string format_probability(double p) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", p);
    return buf;
}

std::string join(const std::vector<std::string> &parts, std::string_view sep) {
    std::string out;
    for (size_t k = 0; k < parts.size(); k++) {
        if (k) {
            out += sep;
        }
        out += parts[k];
    }
    return out;
}

}  // namespace

ParseError::ParseError(size_t line, const std::string &reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line) {
}

uint32_t Circuit::add_register(const std::string &name, uint32_t width) {
    if (!valid_name(name)) {
        throw std::invalid_argument("invalid register name '" + name + "'");
    }
    if (width == 0) {
        throw std::invalid_argument("register '" + name + "' has zero width");
    }
    if (find_register(name) != nullptr) {
        throw std::invalid_argument("register '" + name + "' declared twice");
    }
    registers_.push_back(Register{name, width, num_qubits_});
    num_qubits_ += width;
    return registers_.back().offset;
}

const Register *Circuit::find_register(std::string_view name) const {
    for (const auto &r : registers_) {
        if (r.name == name) {
            return &r;
        }
    }
    return nullptr;
}

uint32_t Circuit::qubit(std::string_view name, uint32_t index) const {
    const Register *r = find_register(name);
    if (r == nullptr) {
        throw std::out_of_range("undeclared register '" + std::string(name) + "'");
    }
    if (index >= r->width) {
        throw std::out_of_range(std::string(name) + "[" + std::to_string(index) + "] out of range (width " +
                                std::to_string(r->width) + ")");
    }
    return r->offset + index;
}

std::string Circuit::qubit_name(uint32_t flat) const {
    for (const auto &r : registers_) {
        if (flat >= r.offset && flat < r.offset + r.width) {
            return r.name + "[" + std::to_string(flat - r.offset) + "]";
        }
    }
    throw std::out_of_range("qubit index " + std::to_string(flat) + " not declared");
}

void Circuit::append(Instruction instruction) {
    if (instruction.operands.size() != gate_arity(instruction.kind)) {
        throw std::invalid_argument(std::string(gate_name(instruction.kind)) + " takes " +
                                    std::to_string(gate_arity(instruction.kind)) + " operand(s), got " +
                                    std::to_string(instruction.operands.size()));
    }
    for (size_t a = 0; a < instruction.operands.size(); a++) {
        if (instruction.operands[a] >= num_qubits_) {
            throw std::invalid_argument("operand " + std::to_string(instruction.operands[a]) + " not declared");
        }
        for (size_t b = 0; b < a; b++) {
            if (instruction.operands[a] == instruction.operands[b]) {
                throw std::invalid_argument("repeated operand " + qubit_name(instruction.operands[a]));
            }
        }
    }
    if (instruction.kind != GateKind::MeasureZ && (!instruction.label.empty() || instruction.postselect)) {
        throw std::invalid_argument("only measz carries a record label");
    }
    if (instruction.postselect && instruction.label.empty()) {
        throw std::invalid_argument("postselected measurement needs a label");
    }
    if (instruction.condition.has_value()) {
        const Condition &c = *instruction.condition;
        if (c.bits.empty() || !(c.fire_probability >= 0.0 && c.fire_probability <= 1.0)) {
            throw std::invalid_argument("malformed condition");
        }
        for (const auto &bit : c.bits) {
            if (bit.votes.empty() || bit.votes.size() % 2 == 0) {
                throw std::invalid_argument("condition majority needs an odd number of votes");
            }
        }
    }
    instructions_.push_back(std::move(instruction));
}

void Circuit::append(GateKind kind, std::vector<uint32_t> operands) {
    Instruction inst;
    inst.kind = kind;
    inst.operands = std::move(operands);
    append(std::move(inst));
}

void Circuit::add_alias(RecordAlias alias) {
    if (!valid_name(alias.name) || alias.votes.empty() || alias.votes.size() % 2 == 0) {
        throw std::invalid_argument("malformed record alias '" + alias.name + "'");
    }
    aliases_.push_back(std::move(alias));
}

std::string Circuit::serialize() const {
    std::ostringstream out;
    for (const auto &r : registers_) {
        out << "qreg " << r.name << " " << r.width;
        if (level_ != 0) {
            out << " " << level_;
        }
        out << "\n";
    }
    for (const auto &inst : instructions_) {
        out << gate_name(inst.kind);
        for (uint32_t q : inst.operands) {
            out << " " << qubit_name(q);
        }
        if (inst.kind == GateKind::MeasureZ && !inst.label.empty()) {
            out << " -> " << inst.label;
            if (inst.postselect) {
                out << " postselect";
            }
        }
        if (inst.condition.has_value()) {
            out << " if";
            for (const auto &bit : inst.condition->bits) {
                out << " maj(" << join(bit.votes, ",") << ")=" << (bit.expected ? 1 : 0);
            }
            out << " p=" << format_probability(inst.condition->fire_probability);
        }
        out << "\n";
    }
    for (const auto &a : aliases_) {
        out << "maj " << a.name << " = " << join(a.votes, " ");
        if (a.postselect) {
            out << " postselect";
        }
        out << "\n";
    }
    return out.str();
}

namespace {

struct Statement {
    size_t line;
    std::vector<std::string> tokens;
};

uint32_t parse_operand(const Circuit &c, const std::string &tok, size_t line) {
    size_t open = tok.find('[');
    if (open == std::string::npos || tok.back() != ']') {
        throw ParseError(line, "expected operand of the form name[index], got '" + tok + "'");
    }
    std::string name = tok.substr(0, open);
    uint32_t index = 0;
    if (!parse_uint(std::string_view(tok).substr(open + 1, tok.size() - open - 2), index)) {
        throw ParseError(line, "bad index in '" + tok + "'");
    }
    const Register *r = c.find_register(name);
    if (r == nullptr) {
        throw ParseError(line, "undeclared register '" + name + "'");
    }
    if (index >= r->width) {
        throw ParseError(line, "index out of range in '" + tok + "'");
    }
    return r->offset + index;
}

ConditionBit parse_condition_bit(const std::string &tok, size_t line) {
    // maj(a,b,c)=1
    if (tok.rfind("maj(", 0) != 0) {
        throw ParseError(line, "expected maj(...)=0|1, got '" + tok + "'");
    }
    size_t close = tok.find(")=");
    if (close == std::string::npos || close + 3 != tok.size() || (tok.back() != '0' && tok.back() != '1')) {
        throw ParseError(line, "expected maj(...)=0|1, got '" + tok + "'");
    }
    ConditionBit bit;
    bit.votes = split_on(std::string_view(tok).substr(4, close - 4), ',');
    for (const auto &v : bit.votes) {
        if (!valid_name(v)) {
            throw ParseError(line, "bad record name in '" + tok + "'");
        }
    }
    if (bit.votes.size() % 2 == 0) {
        throw ParseError(line, "majority needs an odd number of votes in '" + tok + "'");
    }
    bit.expected = tok.back() == '1';
    return bit;
}

}  // namespace

Circuit Circuit::parse(std::string_view text) {
    std::vector<Statement> statements;
    {
        size_t line = 0;
        for (const std::string &raw_line : split_on(text, '\n')) {
            line++;
            std::string_view content = raw_line;
            content = content.substr(0, content.find('#'));
            for (const std::string &piece : split_on(content, ';')) {
                auto tokens = split_ws(piece);
                if (!tokens.empty()) {
                    statements.push_back({line, std::move(tokens)});
                }
            }
        }
    }

    Circuit c;
    std::optional<int> level;
    for (const auto &st : statements) {
        const auto &t = st.tokens;
        const std::string &head = t[0];
        if (head == "qreg") {
            if (t.size() != 3 && t.size() != 4) {
                throw ParseError(st.line, "expected 'qreg <name> <width> [level]'");
            }
            uint32_t width = 0;
            if (!parse_uint(t[2], width) || width == 0) {
                throw ParseError(st.line, "bad register width '" + t[2] + "'");
            }
            uint32_t reg_level = 0;
            if (t.size() == 4 && !parse_uint(t[3], reg_level)) {
                throw ParseError(st.line, "bad register level '" + t[3] + "'");
            }
            if (level.has_value() && *level != static_cast<int>(reg_level)) {
                throw ParseError(st.line, "all registers must share one encoding level");
            }
            level = static_cast<int>(reg_level);
            c.level_ = *level;
            try {
                c.add_register(t[1], width);
            } catch (const std::invalid_argument &e) {
                throw ParseError(st.line, e.what());
            }
            continue;
        }
        if (head == "maj") {
            if (t.size() < 4 || t[2] != "=") {
                throw ParseError(st.line, "expected 'maj <name> = <record>...'");
            }
            RecordAlias alias;
            alias.name = t[1];
            size_t end = t.size();
            if (t.back() == "postselect") {
                alias.postselect = true;
                end--;
            }
            alias.votes.assign(t.begin() + 3, t.begin() + static_cast<std::ptrdiff_t>(end));
            try {
                c.add_alias(std::move(alias));
            } catch (const std::invalid_argument &e) {
                throw ParseError(st.line, e.what());
            }
            continue;
        }

        auto kind = gate_from_name(head);
        if (!kind.has_value()) {
            throw ParseError(st.line, "unknown statement '" + head + "'");
        }
        Instruction inst;
        inst.kind = *kind;
        size_t k = 1;
        while (k < t.size() && t[k] != "->" && t[k] != "if") {
            inst.operands.push_back(parse_operand(c, t[k], st.line));
            k++;
        }
        if (k < t.size() && t[k] == "->") {
            if (*kind != GateKind::MeasureZ) {
                throw ParseError(st.line, "only measz takes '-> label'");
            }
            if (k + 1 >= t.size() || !valid_name(t[k + 1])) {
                throw ParseError(st.line, "missing or bad record label");
            }
            inst.label = t[k + 1];
            k += 2;
            if (k < t.size() && t[k] == "postselect") {
                inst.postselect = true;
                k++;
            }
        }
        if (k < t.size() && t[k] == "if") {
            Condition cond;
            k++;
            bool saw_p = false;
            for (; k < t.size(); k++) {
                if (t[k].rfind("p=", 0) == 0) {
                    try {
                        cond.fire_probability = std::stod(t[k].substr(2));
                    } catch (const std::exception &) {
                        throw ParseError(st.line, "bad fire probability '" + t[k] + "'");
                    }
                    saw_p = true;
                } else {
                    cond.bits.push_back(parse_condition_bit(t[k], st.line));
                }
            }
            if (cond.bits.empty() || !saw_p) {
                throw ParseError(st.line, "condition needs at least one maj(...) term and p=<prob>");
            }
            inst.condition = std::move(cond);
        }
        if (k != t.size()) {
            throw ParseError(st.line, "unexpected token '" + t[k] + "'");
        }
        try {
            c.append(std::move(inst));
        } catch (const std::invalid_argument &e) {
            throw ParseError(st.line, e.what());
        }
    }
    return c;
}

size_t depth(const Circuit &circuit) {
    std::vector<size_t> busy(circuit.num_qubits(), 0);
    size_t result = 0;
    for (const auto &inst : circuit.instructions()) {
        size_t t = 0;
        for (uint32_t q : inst.operands) {
            t = std::max(t, busy[q]);
        }
        t++;
        for (uint32_t q : inst.operands) {
            busy[q] = t;
        }
        result = std::max(result, t);
    }
    return result;
}

std::map<GateKind, size_t> gate_counts(const Circuit &circuit) {
    std::map<GateKind, size_t> counts;
    for (const auto &inst : circuit.instructions()) {
        counts[inst.kind]++;
    }
    return counts;
}

}  // namespace ftsim
