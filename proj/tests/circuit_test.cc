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


#include <gtest/gtest.h>

#include "ftsim/adders.h"
#include "ftsim/circuit.h"

namespace ftsim {
namespace {

TEST(Parse, SingleInstruction) {
    Circuit c = Circuit::parse("qreg a 1; h a[0]");
    ASSERT_EQ(c.instructions().size(), 1u);
    EXPECT_EQ(c.instructions()[0].kind, GateKind::H);
    EXPECT_EQ(c.num_qubits(), 1u);
    EXPECT_EQ(c.level(), 0);
}

TEST(Parse, RepeatedOperandIsRejected) {
    EXPECT_THROW(Circuit::parse("qreg a 2\ncnot a[0] a[0]\n"), ParseError);
}

TEST(Parse, ErrorsCarryLineNumbers) {
    try {
        Circuit::parse("qreg a 2\nh a[0]\ntoffoli a[0] a[1]\n");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 3u);
    }
    EXPECT_THROW(Circuit::parse("h b[0]"), ParseError);
    EXPECT_THROW(Circuit::parse("qreg a 1\nh a[1]"), ParseError);
    EXPECT_THROW(Circuit::parse("qreg a 1\nfoo a[0]"), ParseError);
}

TEST(Parse, LevelAndComments) {
    Circuit c = Circuit::parse("# logical\nqreg q 3 1\nprep q[0]\nec q[0]  # explicit\nmeasz q[0] -> out\n");
    EXPECT_EQ(c.level(), 1);
    ASSERT_EQ(c.instructions().size(), 3u);
    EXPECT_EQ(c.instructions()[2].label, "out");
}

TEST(Parse, ConditionsAndAliases) {
    std::string text =
        "qreg d 2\n"
        "measz d[0] -> r0\n"
        "measz d[0] -> r1\n"
        "measz d[0] -> r2\n"
        "x d[1] if maj(r0,r1,r2)=1 p=0.5\n"
        "maj s = r0 r1 r2\n";
    Circuit c = Circuit::parse(text);
    ASSERT_TRUE(c.instructions()[3].condition.has_value());
    EXPECT_EQ(c.instructions()[3].condition->fire_probability, 0.5);
    ASSERT_EQ(c.aliases().size(), 1u);
    EXPECT_EQ(c.aliases()[0].votes.size(), 3u);
    EXPECT_EQ(Circuit::parse(c.serialize()), c);
}

TEST(Serialize, QrcaRoundTrip) {
    Circuit c = build_qrca(4);
    EXPECT_EQ(Circuit::parse(c.serialize()), c);
}

TEST(Analysis, Depth) {
    EXPECT_EQ(depth(Circuit()), 0u);
    Circuit c = Circuit::parse("qreg q 4\ncnot q[0] q[1]\ncnot q[1] q[2]\ncnot q[2] q[3]\n");
    EXPECT_EQ(depth(c), 3u);
    Circuit par = Circuit::parse("qreg q 4\nh q[0]\nh q[1]\ncnot q[2] q[3]\n");
    EXPECT_EQ(depth(par), 1u);
}

TEST(Analysis, GateCountsSumToLength) {
    Circuit c = build_qcla(8);
    size_t total = 0;
    for (const auto &[k, n] : gate_counts(c)) {
        total += n;
    }
    EXPECT_EQ(total, c.instructions().size());
}

TEST(Circuit, QubitNames) {
    Circuit c;
    c.add_register("a", 2);
    c.add_register("b", 3);
    EXPECT_EQ(c.qubit("b", 1), 3u);
    EXPECT_EQ(c.qubit_name(3), "b[1]");
    EXPECT_THROW(c.add_register("a", 1), std::invalid_argument);
}

}  // namespace
}  // namespace ftsim
