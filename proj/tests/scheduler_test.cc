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
#include "ftsim/scheduler.h"

namespace ftsim {
namespace {

double total(const std::string &text) {
    return schedule(Circuit::parse(text), PhysicalParams()).total_time;
}

TEST(Schedule, Examples) {
    EXPECT_EQ(schedule(Circuit(), PhysicalParams()).total_time, 0.0);
    EXPECT_EQ(total("qreg q 1\nh q[0]"), 1.0);
    EXPECT_EQ(total("qreg q 2\nh q[0]\ncnot q[0] q[1]\nmeasz q[1] -> m"), 202.0);
}

TEST(Schedule, ParallelGatesOverlap) {
    EXPECT_EQ(total("qreg q 4\nh q[0]\nh q[1]\ncnot q[2] q[3]\nx q[0]"), 2.0);
}

TEST(Schedule, ConditionWaitsForItsRecord) {
    EXPECT_EQ(total("qreg q 2\nmeasz q[0] -> r\nx q[1] if maj(r)=1 p=0.5"), 201.0);
}

TEST(Schedule, NoOverlapPerQubitAndExactDurations) {
    Circuit c = build_qrca(6);
    PhysicalParams p;
    Timeline t = schedule(c, p);
    ASSERT_EQ(t.entries.size(), c.instructions().size());
    std::vector<double> busy(c.num_qubits(), 0.0);
    for (const auto &e : t.entries) {
        EXPECT_DOUBLE_EQ(e.end - e.start, p.duration(e.kind));
        for (uint32_t q : e.operands) {
            EXPECT_GE(e.start, busy[q]);
            busy[q] = e.end;
        }
    }
    EXPECT_EQ(t.total_time, critical_path(c, p));
}

TEST(Schedule, Deterministic) {
    Circuit c = build_qcla(8);
    EXPECT_EQ(schedule(c, PhysicalParams()).to_csv(c), schedule(c, PhysicalParams()).to_csv(c));
}

TEST(Schedule, CsvHeader) {
    Circuit c = Circuit::parse("qreg q 1\nh q[0]");
    EXPECT_EQ(schedule(c, PhysicalParams()).to_csv(c), "instruction,kind,operands,start,end\n0,h,q[0],0,1\n");
}

TEST(Pool, ReuseAfterRelease) {
    Scheduler s;
    ResourceQueue pool(s);
    auto a = pool.acquire(5);
    pool.release(a);
    auto b = pool.acquire(5);
    EXPECT_EQ(pool.total_created(), 5u);
    EXPECT_EQ(pool.high_water(), 5u);
    EXPECT_EQ(pool.in_use(), 5u);
}

TEST(Pool, Accumulates) {
    Scheduler s;
    ResourceQueue pool(s);
    pool.acquire(5);
    pool.acquire(3);
    EXPECT_EQ(pool.high_water(), 8u);
    EXPECT_EQ(pool.total_created(), 8u);
}

TEST(Pool, BusyAncillaIsNotReusedEarly) {
    Scheduler s;
    ResourceQueue pool(s);
    auto a = pool.acquire(1, 0.0);
    s.place(a, 10.0);
    pool.release(a);
    auto b = pool.acquire(1, 5.0);
    EXPECT_NE(a[0], b[0]);
    auto c = pool.acquire(1, 10.0);
    EXPECT_EQ(a[0], c[0]);
}

TEST(Pool, CapIsEnforced) {
    Scheduler s;
    ResourceQueue pool(s, 2);
    pool.acquire(2);
    EXPECT_THROW(pool.acquire(1), std::runtime_error);
}

TEST(Decoherence, Accrue) {
    QubitRecord r;
    r.fidelity = 0.9;
    accrue_decoherence(r, 200.0, 0.0);
    EXPECT_EQ(r.fidelity, 0.9);
    EXPECT_EQ(r.last_touch, 200.0);
    QubitRecord idle;
    accrue_decoherence(idle, 200.0, 1e-6);
    EXPECT_NEAR(idle.fidelity, std::exp(-2e-4), 1e-15);
    double before = idle.fidelity;
    accrue_decoherence(idle, 200.0, 1e-6);
    EXPECT_EQ(idle.fidelity, before);
}

}  // namespace
}  // namespace ftsim
