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

#include "ftsim/adders.h"
#include "ftsim/engine.h"

namespace ftsim {
namespace {

RunMetrics run_text(const std::string &text, double p, int level = 0, EcPolicy ec = EcPolicy::Auto) {
    RunConfig cfg;
    cfg.circuit = Circuit::parse(text);
    cfg.level = level;
    cfg.params = PhysicalParams::uniform(p);
    cfg.ec_policy = ec;
    return run(cfg);
}

TEST(Run, UnencodedHadamard) {
    RunMetrics m = run_text("qreg q 1\nh q[0]", 1e-3);
    EXPECT_NEAR(m.mean_error, 1e-3, 1e-15);
    EXPECT_EQ(m.total_time, 1.0);
    EXPECT_EQ(m.qubit_total, 1u);
}

TEST(Run, NoiselessIsExact) {
    RunConfig cfg;
    cfg.circuit = build_qcla(4);
    cfg.params = PhysicalParams();
    EXPECT_EQ(run(cfg).mean_error, 0.0);
    cfg.level = 1;
    RunMetrics m = run(cfg);
    EXPECT_EQ(m.mean_error, 0.0);
    EXPECT_EQ(m.max_error, 0.0);
}

TEST(Run, MeanIsArithmeticMean) {
    RunMetrics m = run_text("qreg q 3\nh q[0]\ncnot q[0] q[1]", 1e-3);
    ASSERT_EQ(m.qubit_errors.size(), 3u);
    double sum = 0;
    for (double e : m.qubit_errors) {
        sum += e;
    }
    EXPECT_DOUBLE_EQ(m.mean_error, sum / 3);
    EXPECT_EQ(m.qubit_errors[2], 0.0);
}

TEST(Run, DecoherenceAccruesOverIdleTime) {
    RunConfig cfg;
    cfg.circuit = Circuit::parse("qreg q 2\nmeasz q[0] -> r");
    cfg.params = PhysicalParams::uniform(0.0, 1e-6);
    RunMetrics m = run(cfg);
    EXPECT_EQ(m.total_time, 200.0);
    EXPECT_NEAR(m.qubit_errors[1], 2 * (1 - std::exp(-2e-4)), 1e-12);
}

TEST(Run, ConditionalWaitsForMeasurement) {
    EXPECT_EQ(run_text("qreg q 2\nmeasz q[0] -> r\nx q[1] if maj(r)=1 p=0.5", 0.0).total_time, 201.0);
    RunMetrics m = run_text("qreg q 2\nmeasz q[0] -> r\nx q[1] if maj(r)=1 p=0.5", 1e-3);
    EXPECT_NEAR(m.qubit_errors[1], 0.5e-3, 1e-12);
}

TEST(Run, EcNeedsEncoding) {
    EXPECT_THROW(run_text("qreg q 1\nec q[0]", 1e-3), std::invalid_argument);
}

TEST(Run, EncodedTransversalMatchesBlock) {
    RunMetrics m = run_text("qreg q 1 1\nh q[0]", 0.0, 1, EcPolicy::Explicit);
    EXPECT_EQ(m.total_time, 1.0);
    EXPECT_EQ(m.qubit_total, 7u);
    RunMetrics two = run_text("qreg q 1 2\nh q[0]", 1e-3, 2, EcPolicy::Explicit);
    EXPECT_EQ(two.qubit_total, 49u);
    EXPECT_NEAR(two.mean_error, 1e-3, 1e-12);
}

TEST(Run, Deterministic) {
    RunConfig cfg;
    cfg.circuit = build_qrca(4);
    cfg.level = 1;
    cfg.params = PhysicalParams::uniform(1e-4);
    EXPECT_EQ(run(cfg), run(cfg));
}

TEST(Run, MonotoneInP) {
    double prev = -1;
    for (double p : {0.0, 1e-6, 1e-5, 1e-4, 1e-3}) {
        RunConfig cfg;
        cfg.circuit = build_qcla(4);
        cfg.level = 1;
        cfg.params = PhysicalParams::uniform(p);
        double e = run(cfg).mean_error;
        EXPECT_GE(e, prev);
        prev = e;
    }
}

TEST(Run, EncodingHelpsBelowThreshold) {
    RunConfig cfg;
    cfg.circuit = build_qcla(4);
    cfg.params = PhysicalParams::uniform(1e-5);
    double unencoded = run(cfg).mean_error;
    cfg.level = 1;
    RunMetrics enc = run(cfg);
    EXPECT_LT(enc.mean_error, unencoded);
    EXPECT_GT(enc.ancilla_high_water, 0u);
    EXPECT_LE(enc.ancilla_high_water, enc.qubit_total);
}

TEST(Run, RetryAccountingOnlyAddsTime) {
    RunConfig cfg;
    cfg.circuit = Circuit::parse("qreg q 1 1\nprep q[0]");
    cfg.params = PhysicalParams::uniform(1e-3);
    double with = run(cfg).total_time;
    cfg.retry_accounting = false;
    double without = run(cfg).total_time;
    EXPECT_GT(with, without);
}

TEST(Run, MeasureOutputsReportsReadout) {
    RunConfig cfg;
    cfg.circuit = Circuit::parse("qreg q 1 1\nh q[0]\nmeasz q[0] -> out");
    cfg.params = PhysicalParams::uniform(1e-4);
    RunMetrics m = run(cfg);
    ASSERT_TRUE(m.readout_errors.contains("out"));
    EXPECT_GT(m.readout_errors["out"], 0.0);
}

TEST(Sweep, RowsAndDuplicates) {
    SweepConfig cfg;
    cfg.adder = "qrca";
    cfg.sizes = {2, 4, 2};
    cfg.p_values = {1e-4, 1e-3};
    auto rows = sweep(cfg);
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0].p, 1e-4);
    EXPECT_EQ(rows[1].n, 4u);
    EXPECT_EQ(to_csv(rows[0]), to_csv(rows[2]));
    EXPECT_EQ(to_csv(rows), to_csv(sweep(cfg)));
    EXPECT_EQ(sweep_csv_header(), "adder,n,level,p,lambda,total_time,qubit_total,ancilla_high_water,mean_error,max_error");
    std::string records = to_records(rows);
    EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 6);
    EXPECT_NE(records.find("\"mean_error\""), std::string::npos);
}

TEST(Sweep, ErrorGrowsWithSizeUnencoded) {
    SweepConfig cfg;
    cfg.adder = "qcla";
    cfg.sizes = {4, 8, 16};
    cfg.p_values = {1e-3};
    auto rows = sweep(cfg);
    EXPECT_LT(rows[0].metrics.mean_error, rows[1].metrics.mean_error);
    EXPECT_LT(rows[1].metrics.mean_error, rows[2].metrics.mean_error);
}

TEST(Threshold, CrossoverInterpolation) {
    std::vector<ThresholdPoint> pts = {{1e-6, 1e-8, 1e-6}, {1e-5, 1e-5, 1e-5}, {1e-4, 1e-3, 1e-4}};
    ASSERT_TRUE(crossover(pts).has_value());
    EXPECT_NEAR(*crossover(pts), 1e-5, 1e-12);
    std::vector<ThresholdPoint> never = {{1e-6, 1e-8, 1e-6}, {1e-5, 1e-7, 1e-5}};
    EXPECT_FALSE(crossover(never).has_value());
    auto grid = log_space(1e-6, 1e-3, 31);
    ASSERT_EQ(grid.size(), 31u);
    EXPECT_NEAR(grid[10], 1e-5, 1e-18);
}

TEST(Threshold, ToffoliNearPaperValue) {
    ThresholdResult r = toffoli_threshold(log_space(1e-6, 1e-3, 13), PhysicalParams());
    ASSERT_TRUE(r.crossover.has_value());
    EXPECT_GT(*r.crossover, 4e-5 / 3);
    EXPECT_LT(*r.crossover, 4e-5 * 3);
    EXPECT_GT(r.points.back().encoded, r.points.back().unencoded);
    EXPECT_EQ(to_csv(r).substr(0, 32), "p,encoded_error,unencoded_error\n");
}

}  // namespace
}  // namespace ftsim
