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

#include "ftsim/error_model.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ftsim {

namespace {

constexpr std::array<GateKind, 6> PHYSICAL_GATES = {
    GateKind::X, GateKind::Y, GateKind::Z, GateKind::H, GateKind::CNOT, GateKind::Toffoli,
};

bool is_probability(double p) {
    return p >= 0.0 && p < 1.0;
}

std::string trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        b++;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        e--;
    }
    return std::string(s.substr(b, e - b));
}

double parse_number(const std::string &text, size_t line) {
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) {
            throw std::invalid_argument(text);
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("line " + std::to_string(line) + ": not a number: '" + text + "'");
    }
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

Fidelity::Fidelity(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("fidelity outside [0, 1]: " + std::to_string(value));
    }
}

Fidelity Fidelity::from_error(double error_probability) {
    return Fidelity(std::clamp(error_to_fidelity(error_probability), 0.0, 1.0));
}

double Fidelity::error_probability() const {
    return fidelity_to_error(value_);
}

double fidelity_to_error(double f) {
    return std::clamp(2.0 * (1.0 - f), 0.0, 1.0);
}

Fidelity gate_fidelity(double p) {
    if (!is_probability(p)) {
        throw std::invalid_argument("gate error probability outside [0, 1): " + std::to_string(p));
    }
    return Fidelity(error_to_fidelity(p));
}

Fidelity combine(Fidelity a, Fidelity b) {
    return Fidelity(a.value() * b.value());
}

Fidelity apply_decoherence(Fidelity f, double dt, double lambda) {
    if (dt < 0 || lambda < 0) {
        throw std::invalid_argument("decoherence needs dt >= 0 and lambda >= 0");
    }
    if (dt == 0 || lambda == 0) {
        return f;
    }
    return Fidelity(f.value() * std::exp(-lambda * dt));
}

PhysicalParams::PhysicalParams() {
    for (GateKind k : PHYSICAL_GATES) {
        gate_duration[k] = 1.0;
        gate_error[k] = 0.0;
    }
    gate_duration[GateKind::PrepZero] = 0.0;
}

PhysicalParams PhysicalParams::uniform(double p, double lambda) {
    PhysicalParams r;
    for (GateKind k : PHYSICAL_GATES) {
        r.gate_error[k] = p;
    }
    r.measurement_error = p;
    r.prep_error = p;
    r.decoherence_rate = lambda;
    r.validate();
    return r;
}

double PhysicalParams::duration(GateKind kind) const {
    if (kind == GateKind::MeasureZ) {
        return measurement_duration;
    }
    auto it = gate_duration.find(kind);
    if (it == gate_duration.end()) {
        throw std::invalid_argument("no physical duration for gate kind " + std::string(gate_name(kind)));
    }
    return it->second;
}

double PhysicalParams::error(GateKind kind) const {
    if (kind == GateKind::MeasureZ) {
        return measurement_error;
    }
    if (kind == GateKind::PrepZero) {
        return prep_error;
    }
    auto it = gate_error.find(kind);
    if (it == gate_error.end()) {
        throw std::invalid_argument("no physical error for gate kind " + std::string(gate_name(kind)));
    }
    return it->second;
}

void PhysicalParams::validate() const {
    for (const auto &[k, v] : gate_duration) {
        if (!(v >= 0.0)) {
            throw std::invalid_argument("gate_time." + std::string(gate_name(k)) + " must be >= 0");
        }
    }
    for (const auto &[k, v] : gate_error) {
        if (!is_probability(v)) {
            throw std::invalid_argument("gate_error." + std::string(gate_name(k)) + " must lie in [0, 1)");
        }
    }
    if (!(measurement_duration >= 0.0)) {
        throw std::invalid_argument("meas_time must be >= 0");
    }
    if (!is_probability(measurement_error)) {
        throw std::invalid_argument("meas_error must lie in [0, 1)");
    }
    if (!is_probability(prep_error)) {
        throw std::invalid_argument("prep_error must lie in [0, 1)");
    }
    if (!(decoherence_rate >= 0.0)) {
        throw std::invalid_argument("lambda must be >= 0");
    }
}

std::string PhysicalParams::to_text() const {
    std::ostringstream out;
    for (const auto &[k, v] : gate_duration) {
        out << "gate_time." << gate_name(k) << "=" << format_number(v) << "\n";
    }
    for (const auto &[k, v] : gate_error) {
        out << "gate_error." << gate_name(k) << "=" << format_number(v) << "\n";
    }
    out << "meas_time=" << format_number(measurement_duration) << "\n";
    out << "meas_error=" << format_number(measurement_error) << "\n";
    out << "prep_error=" << format_number(prep_error) << "\n";
    out << "lambda=" << format_number(decoherence_rate) << "\n";
    return out.str();
}

PhysicalParams PhysicalParams::parse(std::string_view text) {
    PhysicalParams r;
    std::istringstream in{std::string(text)};
    std::string raw;
    size_t line_number = 0;
    while (std::getline(in, raw)) {
        line_number++;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) {
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("line " + std::to_string(line_number) + ": expected key=value");
        }
        std::string key = trim(line.substr(0, eq));
        double value = parse_number(trim(line.substr(eq + 1)), line_number);

        auto kind_after = [&](std::string_view prefix) -> std::optional<GateKind> {
            if (key.rfind(prefix, 0) != 0) {
                return std::nullopt;
            }
            auto k = gate_from_name(std::string_view(key).substr(prefix.size()));
            if (!k.has_value() || *k == GateKind::MeasureZ || *k == GateKind::ErrorCorrect) {
                throw std::invalid_argument("line " + std::to_string(line_number) + ": unknown gate kind in key '" + key + "'");
            }
            return k;
        };

        if (auto k = kind_after("gate_time.")) {
            r.gate_duration[*k] = value;
        } else if (auto k2 = kind_after("gate_error.")) {
            if (*k2 == GateKind::PrepZero) {
                r.prep_error = value;
            } else {
                r.gate_error[*k2] = value;
            }
        } else if (key == "meas_time") {
            r.measurement_duration = value;
        } else if (key == "meas_error") {
            r.measurement_error = value;
        } else if (key == "prep_error") {
            r.prep_error = value;
        } else if (key == "lambda") {
            r.decoherence_rate = value;
        } else {
            throw std::invalid_argument("line " + std::to_string(line_number) + ": unknown key '" + key + "'");
        }
    }
    r.validate();
    return r;
}

PhysicalParams PhysicalParams::load(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open parameter file " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

}  // namespace ftsim
