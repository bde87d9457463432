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

#ifndef FTSIM_ERROR_MODEL_H
#define FTSIM_ERROR_MODEL_H

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "ftsim/gate_kind.h"

namespace ftsim {

/// Scalar per-qubit fidelity in [0, 1].
///
/// The associated error probability uses the linearized convention f = 1 - p/2, so a qubit
/// of fidelity f reports error probability 2(1 - f), clamped to [0, 1].
class Fidelity {
   public:
    constexpr Fidelity() = default;
    explicit Fidelity(double value);

    static Fidelity from_error(double error_probability);

    constexpr double value() const {
        return value_;
    }
    double error_probability() const;

    friend bool operator==(Fidelity, Fidelity) = default;

   private:
    double value_ = 1.0;
};

/// 1 - p/2 for a gate of error probability p in [0, 1).
Fidelity gate_fidelity(double p);
Fidelity combine(Fidelity a, Fidelity b);
/// Memory loss over an idle gap: f * exp(-lambda * dt).
Fidelity apply_decoherence(Fidelity f, double dt, double lambda);

/// Unchecked double forms of the same algebra, for inner loops.
inline double error_to_fidelity(double p) {
    return 1.0 - 0.5 * p;
}
double fidelity_to_error(double f);

/// Physical hardware description: per-gate-kind durations and error probabilities.
///
/// Gate kinds X, Y, Z, H, CNOT, Toffoli carry both a duration and an error probability.
/// PrepZero carries a duration (default 0, preparation is not a gate) and uses prep_error.
/// MeasureZ uses measurement_duration and measurement_error.
struct PhysicalParams {
    std::map<GateKind, double> gate_duration;
    std::map<GateKind, double> gate_error;
    double measurement_duration = 200.0;
    double measurement_error = 0.0;
    double prep_error = 0.0;
    double decoherence_rate = 0.0;

    /// Unit gate times, 200-unit measurement, every error probability equal to p.
    PhysicalParams();
    static PhysicalParams uniform(double p, double lambda = 0.0);

    double duration(GateKind kind) const;
    double error(GateKind kind) const;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;

    /// key=value form accepted by parse().
    std::string to_text() const;
    /// Keys: gate_time.<kind>, gate_error.<kind>, meas_time, meas_error, prep_error, lambda.
    /// Keys not listed keep their defaults; unknown keys are an error.
    static PhysicalParams parse(std::string_view text);
    static PhysicalParams load(const std::filesystem::path &path);

    friend bool operator==(const PhysicalParams &, const PhysicalParams &) = default;
};

}  // namespace ftsim

#endif
