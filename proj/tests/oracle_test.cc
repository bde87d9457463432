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
#include "ftsim/blocks.h"
#include "ftsim/oracle.h"

namespace ftsim {
namespace {

Instruction op(GateKind kind, std::vector<uint32_t> operands) {
    Instruction i;
    i.kind = kind;
    i.operands = std::move(operands);
    return i;
}

PauliFrame frame(size_t n, std::vector<uint32_t> xs, std::vector<uint32_t> zs) {
    PauliFrame f(n);
    for (uint32_t q : xs) {
        f.x[q] = true;
    }
    for (uint32_t q : zs) {
        f.z[q] = true;
    }
    return f;
}

TEST(Propagate, CnotRules) {
    Instruction cnot = op(GateKind::CNOT, {0, 1});
    EXPECT_EQ(pauli_propagate(frame(2, {0}, {}), cnot), frame(2, {0, 1}, {}));
    EXPECT_EQ(pauli_propagate(frame(2, {1}, {}), cnot), frame(2, {1}, {}));
    EXPECT_EQ(pauli_propagate(frame(2, {}, {0}), cnot), frame(2, {}, {0}));
    EXPECT_EQ(pauli_propagate(frame(2, {}, {1}), cnot), frame(2, {}, {0, 1}));
}

TEST(Propagate, Hadamard) {
    Instruction h = op(GateKind::H, {0});
    EXPECT_EQ(pauli_propagate(frame(1, {0}, {}), h), frame(1, {}, {0}));
    EXPECT_EQ(pauli_propagate(frame(1, {}, {0}), h), frame(1, {0}, {}));
}

TEST(Propagate, SelfInverse) {
    PauliFrame f = frame(3, {0, 2}, {1});
    for (const Instruction &i : {op(GateKind::H, {1}), op(GateKind::CNOT, {2, 0}), op(GateKind::X, {0}),
                                 op(GateKind::Z, {2})}) {
        EXPECT_EQ(pauli_propagate(pauli_propagate(f, i), i), f);
    }
}

TEST(Propagate, ToffoliRestrictedToTargetX) {
    Instruction t = op(GateKind::Toffoli, {0, 1, 2});
    EXPECT_EQ(pauli_propagate(frame(3, {2}, {}), t), frame(3, {2}, {}));
    EXPECT_THROW(pauli_propagate(frame(3, {0}, {}), t), std::invalid_argument);
    EXPECT_THROW(pauli_propagate(frame(1, {}, {}), op(GateKind::ErrorCorrect, {0})), std::invalid_argument);
}

FaultPathCounts cat_paths(size_t l, int order) {
    BlockResult b = cat_block(l, PhysicalParams());
    ErrorCriterion c;
    std::vector<uint32_t> q;
    for (uint32_t k = 0; k < l; k++) {
        q.push_back(k);
    }
    c.x_up_to_all_ones = {q};
    return enumerate_fault_paths(b.circuit, c, order);
}

TEST(Enumerate, SingleXFaultsAreDetected) {
    for (size_t l : {3u, 4u, 7u}) {
        FaultPathCounts f = cat_paths(l, 1);
        for (const auto &[m, n] : f.undetected) {
            EXPECT_EQ(n, 0u) << m;
        }
    }
}

TEST(Enumerate, MixedCancellationPairsAreLPlusOne) {
    for (size_t l : {3u, 4u, 7u}) {
        FaultPathCounts f = cat_paths(l, 2);
        EXPECT_EQ(f.cancellation_count("p_s*p_c"), l + 1);
    }
}

TEST(Enumerate, CatCountsRegression) {
    FaultPathCounts f = cat_paths(4, 2);
    EXPECT_EQ(f.undetected_count("p_s^2"), 6u);
    EXPECT_EQ(f.undetected_count("p_s*p_c"), 15u);
    EXPECT_EQ(f.undetected_count("p_c^2"), 9u);
    EXPECT_EQ(f.cancellation_count("p_s^2"), 0u);
    EXPECT_EQ(f.cancellation_count("p_c^2"), 1u);
    EXPECT_EQ(f.to_csv().substr(0, 45), "monomial,order,undetected,cancellation_pairs\n");
}

TEST(Enumerate, HandPropagatedOrderOne) {
    // prep, cnot fan-out, no verification: every single fault leaves an X on the outputs.
    Circuit c = Circuit::parse("qreg q 2\nprep q[0]\nprep q[1]\ncnot q[0] q[1]\n");
    ErrorCriterion crit;
    crit.any_x = {0, 1};
    FaultPathCounts f = enumerate_fault_paths(c, crit, 1);
    EXPECT_EQ(f.undetected_count("p_s"), 2u);
    EXPECT_EQ(f.undetected_count("p_c"), 1u);
}

TEST(Enumerate, SizeLimit) {
    Circuit big = ft_toffoli_block(PhysicalParams()).circuit;
    ErrorCriterion crit;
    crit.any_x = {0};
    EXPECT_THROW(enumerate_fault_paths(big, crit, 2), std::invalid_argument);
}

TEST(MonteCarlo, NoiselessAndDeterministic) {
    BlockResult b = cat_block(4, PhysicalParams());
    ErrorCriterion c;
    c.x_up_to_all_ones = {{0, 1, 2, 3}};
    EXPECT_EQ(monte_carlo_error(b.circuit, PhysicalParams(), c, 5000, 1).estimate, 0.0);
    PhysicalParams p = PhysicalParams::uniform(2e-2);
    BlockResult noisy = cat_block(4, p);
    MonteCarloResult r1 = monte_carlo_error(noisy.circuit, p, c, 20000, 42);
    MonteCarloResult r2 = monte_carlo_error(noisy.circuit, p, c, 20000, 42);
    EXPECT_EQ(r1.estimate, r2.estimate);
    EXPECT_EQ(r1.accepted, r2.accepted);
    EXPECT_GT(r1.estimate, 0.0);
    EXPECT_LE(r1.ci_low, r1.estimate);
    EXPECT_GE(r1.ci_high, r1.estimate);
    EXPECT_LT(r1.accepted, r1.trials);
}

TEST(MonteCarlo, SingleGateRate) {
    PhysicalParams p = PhysicalParams::uniform(0.1);
    Circuit c = Circuit::parse("qreg q 1\nx q[0]");
    ErrorCriterion crit;
    crit.any_x = {0};
    MonteCarloResult r = monte_carlo_error(c, p, crit, 200000, 5);
    EXPECT_NEAR(r.estimate, 0.1, 4 * r.sigma);
}

TEST(MonteCarlo, WorstCaseBoundsCat) {
    PhysicalParams p = PhysicalParams::uniform(1e-2);
    BlockResult b = cat_block(4, p);
    ErrorCriterion c;
    c.x_up_to_all_ones = {{0, 1, 2, 3}};
    MonteCarloResult r = monte_carlo_error(b.circuit, p, c, 100000, 9);
    EXPECT_GE(b.error_union_bound(), r.estimate - 3 * r.sigma);
}

TEST(Reversible, Examples) {
    Circuit t = Circuit::parse("qreg q 3\ntoffoli q[0] q[1] q[2]");
    EXPECT_EQ(reversible_simulate(t, {true, true, false}), (std::vector<bool>{true, true, true}));
    EXPECT_EQ(reversible_simulate(t, {true, false, false}), (std::vector<bool>{true, false, false}));
    Circuit c = Circuit::parse("qreg q 2\ncnot q[0] q[1]");
    EXPECT_EQ(reversible_simulate(c, {true, false}), (std::vector<bool>{true, true}));
    Circuit qrca = build_qrca(4);
    EXPECT_EQ(read_register(qrca, "b", reversible_simulate(qrca, adder_input(qrca, 3, 5))), 8u);
    EXPECT_THROW(reversible_simulate(Circuit::parse("qreg q 1\nh q[0]"), {false}), std::invalid_argument);
    EXPECT_THROW(reversible_simulate(t, {false}), std::invalid_argument);
}

}  // namespace
}  // namespace ftsim
