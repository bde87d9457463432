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

#include <cmath>
#include <set>

#include "ftsim/blocks.h"
#include "ftsim/protocols.h"
#include "ftsim/scheduler.h"

namespace ftsim {
namespace {

TEST(Cat, ClosedForm) {
    EXPECT_EQ(cat_fidelity(4, 0, 0).value(), 1.0);
    EXPECT_NEAR(cat_fidelity(4, 1e-3, 1e-3).value(), 1 - 6.5e-6, 1e-15);
    EXPECT_NEAR(cat_fidelity(7, 1e-4, 1e-4).value(), 1 - 1.1e-7, 1e-16);
    EXPECT_THROW(cat_fidelity(2, 0, 0), std::invalid_argument);
    for (int l : {3, 4, 7, 16}) {
        CatCoefficients c = cat_coefficients(l);
        EXPECT_EQ(c.prep_prep, l - 1);
        EXPECT_EQ(c.prep_cnot, l + 1);
        EXPECT_EQ(c.cnot_cnot, l + 1);
        double p = 1e-3;
        EXPECT_NEAR(cat_fidelity(l, p, p).value(), 1 - (3 * l + 1) * p * p / 2, 1e-15);
    }
}

TEST(Cat, Block) {
    PhysicalParams clean;
    BlockResult b = cat_block(4, clean);
    EXPECT_EQ(b.duration, 206.0);
    EXPECT_EQ(b.expected_repetitions, 1.0);
    EXPECT_EQ(b.ancilla_demand, 5u);
    auto counts = gate_counts(b.circuit);
    EXPECT_EQ(counts[GateKind::H], 1u);
    EXPECT_EQ(counts[GateKind::CNOT], 5u);
    EXPECT_EQ(counts[GateKind::MeasureZ], 1u);

    PhysicalParams p = PhysicalParams::uniform(1e-3);
    BlockResult noisy = cat_block(4, p);
    EXPECT_GT(noisy.expected_repetitions, 1.0);
    EXPECT_DOUBLE_EQ(noisy.expected_repetitions, cat_expected_repetitions(4, p));
    for (double f : noisy.output_fidelities()) {
        EXPECT_DOUBLE_EQ(f, cat_fidelity(4, 1e-3, 1e-3).value());
    }
}

TEST(Majority, Values) {
    EXPECT_EQ(majority_vote_error(0.0), 0.0);
    EXPECT_NEAR(majority_vote_error(1e-3), 2.998e-6, 1e-18);
    EXPECT_DOUBLE_EQ(majority_vote_error(0.5), 0.5);
    EXPECT_DOUBLE_EQ(majority_vote_error(0.1, 0.1, 0.1), majority_vote_error(0.1));
}

TEST(Stabilizer, Generators) {
    const auto &g = steane_generators();
    EXPECT_EQ(g[1].pauli_string(), "IXXIIXX");
    int x = 0;
    for (const auto &s : g) {
        x += s.type == 'X';
    }
    EXPECT_EQ(x, 3);
}

TEST(Stabilizer, G2Contacts) {
    BlockResult b = stabilizer_measurement_block(steane_generators()[1], PhysicalParams());
    const Register *d = b.circuit.find_register("d");
    ASSERT_NE(d, nullptr);
    std::set<uint32_t> touched;
    size_t contacts = 0;
    for (const auto &inst : b.circuit.instructions()) {
        for (uint32_t q : inst.operands) {
            if (q >= d->offset && q < d->offset + d->width) {
                EXPECT_EQ(inst.kind, GateKind::CNOT);
                touched.insert(q - d->offset);
                contacts++;
            }
        }
    }
    EXPECT_EQ(contacts, 12u);  // 4 per round
    EXPECT_EQ(touched, (std::set<uint32_t>{1, 2, 5, 6}));
    EXPECT_EQ(b.readout_error, 0.0);
}

TEST(Stabilizer, ReadoutIsMajorityOfRound) {
    PhysicalParams p = PhysicalParams::uniform(1e-4);
    const auto &g = steane_generators()[1];
    double r = stabilizer_round_error(g, p);
    EXPECT_NEAR(r, 13e-4, 1e-12);
    EXPECT_NEAR(stabilizer_round_error(steane_generators()[4], p), 21e-4, 1e-12);
    EXPECT_NEAR(logical_measure_round_error(p), 16e-4, 1e-12);
    EXPECT_DOUBLE_EQ(stabilizer_measurement_block(g, p).readout_error, majority_vote_error(r));
}

TEST(LogicalPrep, Fidelities) {
    BlockResult clean = logical_prep_zero(PhysicalParams());
    for (double f : clean.output_fidelities()) {
        EXPECT_EQ(f, 1.0);
    }
    PhysicalParams p = PhysicalParams::uniform(1e-2);
    EXPECT_NEAR(state_prep_error(p), 9.997e-3, 1e-15);
    BlockResult b = logical_prep_zero(p);
    auto f = b.output_fidelities();
    ASSERT_EQ(f.size(), 7u);
    for (size_t i = 0; i < 7; i++) {
        EXPECT_NEAR(f[i], i < 3 ? 0.9950015 * 0.99 : 0.9950015, 1e-12);
        EXPECT_DOUBLE_EQ(f[i], logical_prep_fidelity(p, i).value());
    }
    EXPECT_GE(b.ancilla_demand, 30u);
}

TEST(LogicalMeasure, ThreeRounds) {
    BlockResult clean = logical_measure_z(PhysicalParams());
    EXPECT_EQ(clean.readout_error, 0.0);
    size_t measurements = gate_counts(clean.circuit)[GateKind::MeasureZ];
    EXPECT_EQ(measurements, 6u);  // 3 verification + 3 parity readouts
    PhysicalParams p = PhysicalParams::uniform(1e-4);
    EXPECT_DOUBLE_EQ(logical_measure_z(p).readout_error, majority_vote_error(logical_measure_round_error(p)));
}

TEST(ErrorCorrection, LeadingOrder) {
    EXPECT_EQ(error_correct_update(Fidelity(1.0), PhysicalParams()).value(), 1.0);
    double f = error_correct_update(Fidelity(1.0), 1e-3, 0.0).value();
    EXPECT_NEAR(1 - f, 9e-6, 1e-7);
}

TEST(ErrorCorrection, ResidualIsSecondOrder) {
    for (double p : {1e-5, 1e-4, 1e-3, 1e-2}) {
        PhysicalParams params = PhysicalParams::uniform(p);
        double residual = fidelity_to_error(error_correct_update(Fidelity(1.0), params).value());
        EXPECT_LE(residual, 1.2e4 * p * p) << p;
        double fed = fidelity_to_error(error_correct_update(Fidelity::from_error(p), params).value());
        EXPECT_LE(fed, 1.2e4 * p * p) << p;
    }
}

TEST(Transversal, ProductRule) {
    std::array<double, 2> ones = {1.0, 1.0};
    for (double f : transversal_gate_block(GateKind::CNOT, ones, PhysicalParams()).output_fidelities()) {
        EXPECT_EQ(f, 1.0);
    }
    std::array<double, 2> in = {0.999, 0.998};
    PhysicalParams p = PhysicalParams::uniform(2e-3);
    BlockResult b = transversal_gate_block(GateKind::CNOT, in, p);
    EXPECT_EQ(b.output_fidelities().size(), 14u);
    for (double f : b.output_fidelities()) {
        EXPECT_NEAR(f, 0.996005, 5e-7);
    }
    std::array<double, 1> h = {0.9995};
    for (double f : transversal_gate_block(GateKind::H, h, PhysicalParams::uniform(1e-3)).output_fidelities()) {
        EXPECT_NEAR(f, 0.99900025, 1e-15);
    }
    EXPECT_THROW(transversal_gate_block(GateKind::CNOT, h, p), std::invalid_argument);
    EXPECT_THROW(transversal_gate_block(GateKind::Toffoli, h, p), std::invalid_argument);
}

TEST(Toffoli, CleanOutputs) {
    BlockResult b = ft_toffoli_block(PhysicalParams());
    EXPECT_EQ(b.output_fidelities().size(), 21u);
    for (double f : b.output_fidelities()) {
        EXPECT_EQ(f, 1.0);
    }
    EXPECT_EQ(gate_counts(b.circuit)[GateKind::Toffoli], 21u);  // 3 verification rounds of 7
}

TEST(Blocks, DurationIsCriticalPath) {
    for (double p : {0.0, 1e-3}) {
        PhysicalParams params = PhysicalParams::uniform(p);
        std::vector<BlockResult> blocks = {cat_block(4, params, false),
                                           cat_block(7, params, false),
                                           stabilizer_measurement_block(steane_generators()[4], params, false),
                                           logical_prep_zero(params, false),
                                           logical_measure_z(params, 0.0, false),
                                           error_correction_block(params, 0.0, false),
                                           ft_toffoli_block(params, {}, false)};
        for (const auto &b : blocks) {
            EXPECT_DOUBLE_EQ(b.duration, critical_path(b.circuit, params));
            EXPECT_DOUBLE_EQ(b.duration, schedule(b.circuit, params).total_time);
        }
    }
}

TEST(Blocks, MonotoneInError) {
    double prev_ec = 0, prev_prep = 0, prev_tof = 0;
    for (double p : {1e-5, 1e-4, 1e-3}) {
        PhysicalParams params = PhysicalParams::uniform(p);
        double ec = error_correction_block(params, p).error_union_bound();
        double prep = logical_prep_zero(params).error_union_bound();
        double tof = ft_toffoli_block(params, {p, p, p}).error_union_bound();
        EXPECT_GT(ec, prev_ec);
        EXPECT_GT(prep, prev_prep);
        EXPECT_GE(tof, prev_tof);
        prev_ec = ec;
        prev_prep = prep;
        prev_tof = tof;
    }
    PhysicalParams params = PhysicalParams::uniform(1e-4);
    EXPECT_LE(error_correction_block(params, 1e-5).error_union_bound(),
              error_correction_block(params, 1e-4).error_union_bound());
}

TEST(Blocks, RetryAccountingStretchesDuration) {
    PhysicalParams p = PhysicalParams::uniform(1e-2);
    EXPECT_GT(cat_block(4, p, true).duration, cat_block(4, p, false).duration);
}

}  // namespace
}  // namespace ftsim
