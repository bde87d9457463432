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

#include <algorithm>
#include <random>

#include "ftsim/adders.h"
#include "ftsim/oracle.h"

namespace ftsim {
namespace {

uint64_t add(AdderKind kind, uint32_t n, uint64_t a, uint64_t b) {
    Circuit c = build_adder({kind, n});
    return adder_sum(c, kind, reversible_simulate(c, adder_input(c, a, b)));
}

TEST(Qrca, OneBit) {
    Circuit c = build_qrca(1);
    std::vector<bool> out = reversible_simulate(c, adder_input(c, 1, 1));
    EXPECT_EQ(read_register(c, "b", out), 0u);
    EXPECT_EQ(read_register(c, "z", out), 1u);
    EXPECT_EQ(read_register(c, "a", out), 1u);
}

class Exhaustive : public ::testing::TestWithParam<std::tuple<AdderKind, uint32_t>> {};

TEST_P(Exhaustive, AllInputPairs) {
    auto [kind, n] = GetParam();
    for (uint64_t a = 0; a < (1u << n); a++) {
        for (uint64_t b = 0; b < (1u << n); b++) {
            ASSERT_EQ(add(kind, n, a, b), a + b) << adder_name(kind) << " " << a << "+" << b;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Adders, Exhaustive,
                         ::testing::Combine(::testing::Values(AdderKind::Qrca, AdderKind::Qcla),
                                            ::testing::Values(1u, 2u, 3u, 4u)));

TEST(Adders, RandomWide) {
    std::mt19937_64 rng(7);
    for (AdderKind kind : {AdderKind::Qrca, AdderKind::Qcla}) {
        for (uint32_t n : {8u, 13u, 32u}) {
            uint64_t mask = (uint64_t{1} << n) - 1;
            for (int t = 0; t < 200; t++) {
                uint64_t a = rng() & mask;
                uint64_t b = rng() & mask;
                ASSERT_EQ(add(kind, n, a, b), a + b);
            }
        }
    }
}

TEST(Adders, InputsAndAncillasRestored) {
    for (AdderKind kind : {AdderKind::Qrca, AdderKind::Qcla}) {
        Circuit c = build_adder({kind, 6});
        std::vector<bool> out = reversible_simulate(c, adder_input(c, 45, 27));
        EXPECT_EQ(read_register(c, "a", out), 45u);
        if (kind == AdderKind::Qcla) {
            EXPECT_EQ(read_register(c, "b", out), 27u);
            EXPECT_EQ(read_register(c, "anc", out), 0u);
        } else {
            EXPECT_EQ(read_register(c, "c", out), 0u);
        }
    }
}

TEST(Adders, GateSetClosure) {
    for (AdderKind kind : {AdderKind::Qrca, AdderKind::Qcla}) {
        for (const auto &inst : build_adder({kind, 9}).instructions()) {
            EXPECT_TRUE(inst.kind == GateKind::X || inst.kind == GateKind::CNOT || inst.kind == GateKind::Toffoli ||
                        inst.kind == GateKind::PrepZero);
        }
    }
}

TEST(Adders, InverseRestoresBasisStates) {
    for (AdderKind kind : {AdderKind::Qrca, AdderKind::Qcla}) {
        Circuit c = build_adder({kind, 5});
        Circuit inv;
        for (const auto &r : c.registers()) {
            inv.add_register(r.name, r.width);
        }
        auto ins = c.instructions();
        std::reverse(ins.begin(), ins.end());
        for (const auto &inst : ins) {
            if (inst.kind != GateKind::PrepZero) {
                inv.append(inst);
            }
        }
        std::vector<bool> in = adder_input(c, 19, 22);
        EXPECT_EQ(reversible_simulate(inv, reversible_simulate(c, in)), in);
    }
}

TEST(Qrca, ScalingConstants) {
    for (uint32_t n : {2u, 4u, 8u, 16u, 32u}) {
        Circuit c = build_qrca(n);
        EXPECT_EQ(gate_counts(c)[GateKind::Toffoli], 2 * n);
        EXPECT_EQ(depth(c), 2 * n + 8);
    }
}

TEST(Qcla, ScalingConstants) {
    // 5n - 3w(n) - 3 floor(log2 n) - 1, w = popcount.
    for (uint32_t n : {2u, 4u, 8u, 16u, 32u, 37u}) {
        uint32_t log2n = 31 - __builtin_clz(n);
        uint32_t expect = 5 * n - 3 * __builtin_popcount(n) - 3 * log2n - 1;
        EXPECT_EQ(gate_counts(build_qcla(n))[GateKind::Toffoli], expect) << n;
    }
    for (uint32_t n : {4u, 8u, 16u}) {
        EXPECT_LE(depth(build_qcla(2 * n)) - depth(build_qcla(n)), 2u);
    }
}

TEST(Adders, RejectsBadWidth) {
    EXPECT_THROW(build_qrca(0), std::invalid_argument);
    EXPECT_THROW(build_qcla(0), std::invalid_argument);
    EXPECT_THROW(build_qcla(63), std::invalid_argument);
    EXPECT_EQ(adder_from_name("qcla"), AdderKind::Qcla);
    EXPECT_FALSE(adder_from_name("bogus").has_value());
}

}  // namespace
}  // namespace ftsim
