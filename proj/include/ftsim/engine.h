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

#ifndef FTSIM_ENGINE_H
#define FTSIM_ENGINE_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftsim/circuit.h"
#include "ftsim/error_model.h"

namespace ftsim {

enum class EcPolicy : unsigned char {
    Explicit,  ///< Only the circuit's own ec instructions.
    Auto,      ///< EC on every operand after each logical gate.
};

struct RunConfig {
    Circuit circuit;
    /// Encoding level of every register; nullopt uses the circuit's declared level.
    std::optional<int> level;
    PhysicalParams params;
    EcPolicy ec_policy = EcPolicy::Auto;
    bool retry_accounting = true;
    /// Append a Z measurement to every qubit not measured by the circuit itself.
    bool measure_outputs = false;
    std::optional<size_t> max_ancilla;
};

struct RunMetrics {
    double total_time = 0.0;
    size_t qubit_total = 0;
    size_t ancilla_high_water = 0;
    /// 2(1 - f) per circuit qubit, f the mean fidelity of its physical constituents.
    std::vector<double> qubit_errors;
    double mean_error = 0.0;
    double max_error = 0.0;
    /// Readout error of every labelled measurement.
    std::map<std::string, double> readout_errors;

    friend bool operator==(const RunMetrics &, const RunMetrics &) = default;
};

RunMetrics run(const RunConfig &config);

struct SweepConfig {
    /// Either an adder ("qrca"/"qcla", with `sizes`) or a fixed circuit.
    std::string adder;
    std::vector<uint32_t> sizes;
    std::optional<Circuit> circuit;
    int level = 0;
    /// Every gate, prep and measurement error is set to each p in turn.
    std::vector<double> p_values;
    PhysicalParams base;
    EcPolicy ec_policy = EcPolicy::Auto;
    bool retry_accounting = true;
    bool measure_outputs = false;
    std::optional<size_t> max_ancilla;
    unsigned threads = 0;  ///< 0 = hardware concurrency.
};

struct SweepRow {
    std::string adder;
    uint32_t n = 0;
    int level = 0;
    double p = 0.0;
    double lambda = 0.0;
    RunMetrics metrics;
};

/// Rows ordered by p (outer) then n, whatever order they were evaluated in.
std::vector<SweepRow> sweep(const SweepConfig &config);

/// Uniform error p on every gate, preparation and measurement; durations and lambda kept.
PhysicalParams with_uniform_error(const PhysicalParams &base, double p);

std::string sweep_csv_header();
std::string to_csv(const SweepRow &row);
std::string to_csv(const std::vector<SweepRow> &rows);
/// One JSON object per line with the CSV fields.
std::string to_records(const std::vector<SweepRow> &rows);

/// `points` log-spaced values from start to stop inclusive.
std::vector<double> log_space(double start, double stop, size_t points);

struct ThresholdPoint {
    double p = 0.0;
    double encoded = 0.0;
    double unencoded = 0.0;
};

struct ThresholdResult {
    std::vector<ThresholdPoint> points;
    /// First p where the encoded Toffoli stops beating the unencoded one.
    std::optional<double> crossover;
};

/// Level-1 FT Toffoli (with EC on its outputs) against a physical Toffoli over a p grid.
ThresholdResult toffoli_threshold(const std::vector<double> &p_values, const PhysicalParams &base,
                                  bool retry_accounting = true);
/// Log-linear interpolation of the sign change of log(encoded / unencoded).
std::optional<double> crossover(const std::vector<ThresholdPoint> &points);

std::string to_csv(const ThresholdResult &result);

}  // namespace ftsim

#endif
