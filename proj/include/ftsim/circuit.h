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

#ifndef FTSIM_CIRCUIT_H
#define FTSIM_CIRCUIT_H

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ftsim/gate_kind.h"

namespace ftsim {

/// Malformed circuit text. `line()` is 1-based.
class ParseError : public std::runtime_error {
   public:
    ParseError(size_t line, const std::string &reason);
    size_t line() const {
        return line_;
    }

   private:
    size_t line_;
};

struct Register {
    std::string name;
    uint32_t width = 0;
    uint32_t offset = 0;  ///< Flat index of bit 0.

    friend bool operator==(const Register &, const Register &) = default;
};

/// One bit of a classical condition: the majority of `votes` (an odd number of measurement
/// records or aliases) must equal `expected`.
struct ConditionBit {
    std::vector<std::string> votes;
    bool expected = true;

    friend bool operator==(const ConditionBit &, const ConditionBit &) = default;
};

/// A classically controlled instruction fires when every bit matches.
///
/// `fire_probability` is the probability the instruction fires in an ideal run. Fidelity
/// tracking weights the instruction by it instead of branching. Frame simulation ignores it
/// and instead fires on deviations of the records from their ideal values.
struct Condition {
    std::vector<ConditionBit> bits;
    double fire_probability = 0.5;

    friend bool operator==(const Condition &, const Condition &) = default;
};

struct Instruction {
    GateKind kind = GateKind::X;
    /// Flat qubit indices; control(s) first for CNOT and Toffoli.
    std::vector<uint32_t> operands;
    /// MeasureZ only: record name.
    std::string label;
    /// MeasureZ only: the run is discarded (and repeated) when the record reads 1.
    bool postselect = false;
    std::optional<Condition> condition;

    friend bool operator==(const Instruction &, const Instruction &) = default;
};

/// A derived classical record: the majority of other records.
struct RecordAlias {
    std::string name;
    std::vector<std::string> votes;
    bool postselect = false;

    friend bool operator==(const RecordAlias &, const RecordAlias &) = default;
};

/// Register declarations plus an ordered instruction list at one encoding level
/// (0 = physical). Text form, one statement per line or ';'-separated:
///
///     qreg <name> <width> [level]
///     prep r[i] | x r[i] | y r[i] | z r[i] | h r[i] | ec r[i]
///     cnot r[i] r[j] | toffoli r[i] r[j] r[k]
///     measz r[i] -> <label> [postselect]
///     <gate> ... if maj(m1,m2,m3)=1 maj(m4)=0 p=0.5
///     maj <name> = <record> <record> <record> [postselect]
///     # comment
class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(int level) : level_(level) {
    }

    int level() const {
        return level_;
    }
    const std::vector<Register> &registers() const {
        return registers_;
    }
    const std::vector<Instruction> &instructions() const {
        return instructions_;
    }
    const std::vector<RecordAlias> &aliases() const {
        return aliases_;
    }
    uint32_t num_qubits() const {
        return num_qubits_;
    }

    /// Returns the flat index of bit 0. Throws on a duplicate name or zero width.
    uint32_t add_register(const std::string &name, uint32_t width);
    const Register *find_register(std::string_view name) const;
    /// Flat index of name[index]; throws std::out_of_range.
    uint32_t qubit(std::string_view name, uint32_t index) const;
    /// "name[index]" for a flat index.
    std::string qubit_name(uint32_t flat) const;

    /// Validates arity, operand range and distinctness, then appends.
    void append(Instruction instruction);
    void append(GateKind kind, std::vector<uint32_t> operands);
    void add_alias(RecordAlias alias);

    std::string serialize() const;
    static Circuit parse(std::string_view text);

    friend bool operator==(const Circuit &, const Circuit &) = default;

   private:
    int level_ = 0;
    uint32_t num_qubits_ = 0;
    std::vector<Register> registers_;
    std::vector<Instruction> instructions_;
    std::vector<RecordAlias> aliases_;
};

/// Longest dependency chain, each instruction counting 1.
size_t depth(const Circuit &circuit);
std::map<GateKind, size_t> gate_counts(const Circuit &circuit);

}  // namespace ftsim

#endif
