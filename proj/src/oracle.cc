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

#include "ftsim/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ftsim {

PauliFrame pauli_propagate(PauliFrame f, const Instruction &inst) {
    const auto &q = inst.operands;
    for (uint32_t o : q) {
        if (o >= f.x.size()) {
            throw std::invalid_argument("frame is smaller than the instruction's operands");
        }
    }
    switch (inst.kind) {
        case GateKind::PrepZero:
            f.x[q[0]] = false;
            f.z[q[0]] = false;
            break;
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::MeasureZ:
            break;
        case GateKind::H: {
            bool t = f.x[q[0]];
            f.x[q[0]] = f.z[q[0]];
            f.z[q[0]] = t;
            break;
        }
        case GateKind::CNOT:
            f.x[q[1]] = f.x[q[1]] != f.x[q[0]];
            f.z[q[0]] = f.z[q[0]] != f.z[q[1]];
            break;
        case GateKind::Toffoli:
            if (f.x[q[0]] || f.x[q[1]] || f.z[q[0]] || f.z[q[1]] || f.z[q[2]]) {
                throw std::invalid_argument("Toffoli propagation is defined only for an X frame on the target");
            }
            break;
        case GateKind::ErrorCorrect:
            throw std::invalid_argument("ec has no Pauli-frame rule");
    }
    return f;
}

std::vector<FaultSite> fault_sites(const Circuit &circuit, const PhysicalParams &params) {
    std::vector<FaultSite> out;
    const auto &insts = circuit.instructions();
    for (size_t k = 0; k < insts.size(); k++) {
        const Instruction &inst = insts[k];
        FaultSite s;
        s.instruction = k;
        switch (inst.kind) {
            case GateKind::PrepZero:
                s.symbol = 's';
                break;
            case GateKind::MeasureZ:
                s.symbol = 'm';
                break;
            case GateKind::CNOT:
                s.symbol = 'c';
                break;
            case GateKind::Toffoli:
                s.symbol = 't';
                break;
            case GateKind::ErrorCorrect:
                throw std::invalid_argument("fault sites need a physical-level circuit");
            default:
                s.symbol = gate_name(inst.kind)[0];
        }
        s.probability = params.error(inst.kind);
        if (inst.condition) {
            s.probability *= inst.condition->fire_probability;
        }
        out.push_back(s);
    }
    return out;
}

std::vector<uint32_t> ErrorCriterion::qubits() const {
    std::set<uint32_t> s(any_x.begin(), any_x.end());
    s.insert(any_pauli.begin(), any_pauli.end());
    for (const auto &g : x_up_to_all_ones) {
        s.insert(g.begin(), g.end());
    }
    for (const auto &g : codewords) {
        s.insert(g.begin(), g.end());
    }
    for (const auto &g : modulo_stabilizers) {
        s.insert(g.begin(), g.end());
    }
    return {s.begin(), s.end()};
}

std::string monomial(const std::string &symbols) {
    static const std::string order = "schtxyzm";
    std::string sorted = symbols;
    std::sort(sorted.begin(), sorted.end(), [](char a, char b) { return order.find(a) < order.find(b); });
    auto factor = [](char c) { return c == 'm' ? std::string("p_meas") : std::string("p_") + c; };
    std::string out;
    for (size_t k = 0; k < sorted.size();) {
        size_t run = 1;
        while (k + run < sorted.size() && sorted[k + run] == sorted[k]) {
            run++;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += factor(sorted[k]);
        if (run > 1) {
            out += "^" + std::to_string(run);
        }
        k += run;
    }
    return out;
}

namespace {

/// Word-parallel Pauli-frame simulator over a physical circuit.
class FrameSim {
   public:
    FrameSim(const Circuit &circuit, size_t words) : c_(circuit), w_(words) {
        if (circuit.level() != 0) {
            throw std::invalid_argument("frame simulation needs a physical-level circuit");
        }
        const auto &insts = circuit.instructions();
        record_of_.assign(insts.size(), SIZE_MAX);
        for (size_t k = 0; k < insts.size(); k++) {
            if (insts[k].kind == GateKind::MeasureZ) {
                record_of_[k] = num_records_;
                names_[insts[k].label] = {false, num_records_++};
            }
        }
        for (size_t a = 0; a < circuit.aliases().size(); a++) {
            names_[circuit.aliases()[a].name] = {true, a};
        }
        x_.assign(size_t{circuit.num_qubits()} * w_, 0);
        z_.assign(x_.size(), 0);
        rec_.assign(num_records_ * w_, 0);
        rec_done_.assign(num_records_, false);
        alias_.assign(circuit.aliases().size() * w_, 0);
        alias_done_.assign(circuit.aliases().size(), false);
        reject_.assign(w_, 0);
    }

    /// `faults(site)` returns W mask words (or nullptr). `rng` null means deterministic Toffoli
    /// propagation and X-only faults.
    void run(const std::function<const uint64_t *(size_t)> &faults, std::mt19937_64 *rng, FaultModel model) {
        std::fill(x_.begin(), x_.end(), 0);
        std::fill(z_.begin(), z_.end(), 0);
        std::fill(rec_done_.begin(), rec_done_.end(), false);
        std::fill(alias_done_.begin(), alias_done_.end(), false);
        std::fill(reject_.begin(), reject_.end(), 0);
        const auto &insts = c_.instructions();
        std::vector<uint64_t> fire(w_);
        for (size_t k = 0; k < insts.size(); k++) {
            const Instruction &inst = insts[k];
            const uint32_t *q = inst.operands.data();
            const uint64_t *f = faults(k);
            if (inst.condition) {
                condition_mask(*inst.condition, fire);
            }
            switch (inst.kind) {
                case GateKind::PrepZero:
                    for (size_t w = 0; w < w_; w++) {
                        X(q[0], w) = f ? f[w] : 0;
                        Z(q[0], w) = 0;
                    }
                    continue;
                case GateKind::MeasureZ: {
                    size_t r = record_of_[k];
                    for (size_t w = 0; w < w_; w++) {
                        uint64_t dev = X(q[0], w) ^ (f ? f[w] : 0);
                        rec_[r * w_ + w] = dev;
                        if (inst.postselect) {
                            reject_[w] |= dev;
                        }
                    }
                    rec_done_[r] = true;
                    continue;
                }
                case GateKind::H:
                    for (size_t w = 0; w < w_; w++) {
                        std::swap(X(q[0], w), Z(q[0], w));
                    }
                    break;
                case GateKind::CNOT:
                    for (size_t w = 0; w < w_; w++) {
                        X(q[1], w) ^= X(q[0], w);
                        Z(q[0], w) ^= Z(q[1], w);
                    }
                    break;
                case GateKind::Toffoli:
                    for (size_t w = 0; w < w_; w++) {
                        uint64_t r1 = rng ? (*rng)() : ~uint64_t{0};
                        uint64_t r2 = rng ? (*rng)() : ~uint64_t{0};
                        uint64_t r3 = rng ? (*rng)() : ~uint64_t{0};
                        uint64_t r4 = rng ? (*rng)() : ~uint64_t{0};
                        X(q[2], w) ^= (X(q[0], w) & r1) ^ (X(q[1], w) & r2);
                        Z(q[0], w) ^= Z(q[2], w) & r3;
                        Z(q[1], w) ^= Z(q[2], w) & r4;
                    }
                    break;
                case GateKind::ErrorCorrect:
                    throw std::invalid_argument("ec has no physical frame rule");
                default:
                    break;
            }
            if (inst.condition) {
                misfire(inst, fire);
            }
            if (f != nullptr) {
                inject(inst, f, rng, model);
            }
        }
        for (size_t a = 0; a < c_.aliases().size(); a++) {
            if (c_.aliases()[a].postselect) {
                const uint64_t *v = alias(a);
                for (size_t w = 0; w < w_; w++) {
                    reject_[w] |= v[w];
                }
            }
        }
    }

    const std::vector<uint64_t> &reject() const {
        return reject_;
    }

    std::vector<uint64_t> failures(const ErrorCriterion &crit) {
        std::vector<uint64_t> fail(w_, 0);
        for (size_t w = 0; w < w_; w++) {
            uint64_t m = 0;
            for (uint32_t q : crit.any_x) {
                m |= X(q, w);
            }
            for (uint32_t q : crit.any_pauli) {
                m |= X(q, w) | Z(q, w);
            }
            for (const auto &g : crit.x_up_to_all_ones) {
                uint64_t any = 0;
                uint64_t all = ~uint64_t{0};
                for (uint32_t q : g) {
                    any |= X(q, w);
                    all &= X(q, w);
                }
                m |= any & ~all;
            }
            for (const auto &cw : crit.codewords) {
                m |= logical_error(cw, w, true) | logical_error(cw, w, false);
            }
            for (const auto &cw : crit.modulo_stabilizers) {
                m |= outside_stabilizers(cw, w, true) | outside_stabilizers(cw, w, false);
            }
            fail[w] = m;
        }
        for (const auto &name : crit.records) {
            const uint64_t *v = lookup(name);
            for (size_t w = 0; w < w_; w++) {
                fail[w] |= v[w];
            }
        }
        return fail;
    }

    /// Frame bits of `qubits` in lane `lane`, plus the rejection flag.
    std::vector<bool> signature(const std::vector<uint32_t> &qubits, size_t lane) const {
        std::vector<bool> s;
        size_t w = lane / 64;
        uint64_t bit = uint64_t{1} << (lane % 64);
        s.push_back((reject_[w] & bit) != 0);
        for (uint32_t q : qubits) {
            s.push_back((x_[q * w_ + w] & bit) != 0);
            s.push_back((z_[q * w_ + w] & bit) != 0);
        }
        return s;
    }

   private:
    uint64_t &X(uint32_t q, size_t w) {
        return x_[q * w_ + w];
    }
    uint64_t &Z(uint32_t q, size_t w) {
        return z_[q * w_ + w];
    }

    uint64_t logical_error(const std::vector<uint32_t> &cw, size_t w, bool x_type) {
        uint64_t s[3] = {0, 0, 0};
        uint64_t parity = syndrome(cw, w, x_type, s);
        return parity ^ (s[0] | s[1] | s[2]);
    }

    // Stabilizers have even weight and zero syndrome.
    uint64_t outside_stabilizers(const std::vector<uint32_t> &cw, size_t w, bool x_type) {
        uint64_t s[3] = {0, 0, 0};
        uint64_t parity = syndrome(cw, w, x_type, s);
        return parity | s[0] | s[1] | s[2];
    }

    uint64_t syndrome(const std::vector<uint32_t> &cw, size_t w, bool x_type, uint64_t s[3]) {
        uint64_t parity = 0;
        for (size_t j = 0; j < cw.size(); j++) {
            uint64_t v = x_type ? X(cw[j], w) : Z(cw[j], w);
            parity ^= v;
            for (int b = 0; b < 3; b++) {
                if (((j + 1) >> b) & 1) {
                    s[b] ^= v;
                }
            }
        }
        return parity;
    }

    const uint64_t *lookup(const std::string &name) {
        auto it = names_.find(name);
        if (it == names_.end()) {
            throw std::invalid_argument("unknown record '" + name + "'");
        }
        if (it->second.first) {
            return alias(it->second.second);
        }
        if (!rec_done_[it->second.second]) {
            throw std::invalid_argument("record '" + name + "' used before it is measured");
        }
        return &rec_[it->second.second * w_];
    }

    void majority(const std::vector<std::string> &votes, uint64_t *out) {
        std::vector<const uint64_t *> v;
        for (const auto &n : votes) {
            v.push_back(lookup(n));
        }
        for (size_t w = 0; w < w_; w++) {
            if (v.size() == 1) {
                out[w] = v[0][w];
            } else if (v.size() == 3) {
                out[w] = (v[0][w] & v[1][w]) | (v[0][w] & v[2][w]) | (v[1][w] & v[2][w]);
            } else {
                uint64_t r = 0;
                for (int b = 0; b < 64; b++) {
                    size_t ones = 0;
                    for (const uint64_t *p : v) {
                        ones += (p[w] >> b) & 1;
                    }
                    if (2 * ones > v.size()) {
                        r |= uint64_t{1} << b;
                    }
                }
                out[w] = r;
            }
        }
    }

    const uint64_t *alias(size_t a) {
        if (!alias_done_[a]) {
            majority(c_.aliases()[a].votes, &alias_[a * w_]);
            alias_done_[a] = true;
        }
        return &alias_[a * w_];
    }

    void condition_mask(const Condition &cond, std::vector<uint64_t> &fire) {
        std::fill(fire.begin(), fire.end(), ~uint64_t{0});
        std::vector<uint64_t> v(w_);
        for (const auto &bit : cond.bits) {
            majority(bit.votes, v.data());
            for (size_t w = 0; w < w_; w++) {
                fire[w] &= bit.expected ? v[w] : ~v[w];
            }
        }
    }

    void misfire(const Instruction &inst, const std::vector<uint64_t> &fire) {
        uint32_t t = inst.operands.back();
        for (size_t w = 0; w < w_; w++) {
            switch (inst.kind) {
                case GateKind::X:
                case GateKind::CNOT:
                case GateKind::Toffoli:
                    X(t, w) ^= fire[w];
                    break;
                case GateKind::Y:
                    X(t, w) ^= fire[w];
                    Z(t, w) ^= fire[w];
                    break;
                case GateKind::Z:
                    Z(t, w) ^= fire[w];
                    break;
                default:
                    break;
            }
        }
    }

    void inject(const Instruction &inst, const uint64_t *f, std::mt19937_64 *rng, FaultModel model) {
        if (model == FaultModel::XOnly || rng == nullptr) {
            uint32_t t = inst.operands.back();
            for (size_t w = 0; w < w_; w++) {
                X(t, w) ^= f[w];
            }
            return;
        }
        size_t k = inst.operands.size();
        uint64_t choices = (uint64_t{1} << (2 * k)) - 1;
        for (size_t w = 0; w < w_; w++) {
            for (uint64_t m = f[w]; m != 0; m &= m - 1) {
                uint64_t bit = m & (~m + 1);
                uint64_t pauli = 1 + (*rng)() % choices;
                for (size_t j = 0; j < k; j++) {
                    if ((pauli >> (2 * j)) & 1) {
                        X(inst.operands[j], w) ^= bit;
                    }
                    if ((pauli >> (2 * j + 1)) & 1) {
                        Z(inst.operands[j], w) ^= bit;
                    }
                }
            }
        }
    }

    const Circuit &c_;
    size_t w_;
    size_t num_records_ = 0;
    std::vector<size_t> record_of_;
    std::unordered_map<std::string, std::pair<bool, size_t>> names_;
    std::vector<uint64_t> x_, z_, rec_, alias_, reject_;
    std::vector<bool> rec_done_, alias_done_;
};

}  // namespace

uint64_t FaultPathCounts::undetected_count(const std::string &m) const {
    auto it = undetected.find(m);
    return it == undetected.end() ? 0 : it->second;
}

uint64_t FaultPathCounts::cancellation_count(const std::string &m) const {
    auto it = cancellation_pairs.find(m);
    return it == cancellation_pairs.end() ? 0 : it->second;
}

std::string FaultPathCounts::to_csv() const {
    std::set<std::string> keys;
    for (const auto &[k, v] : undetected) {
        keys.insert(k);
    }
    for (const auto &[k, v] : cancellation_pairs) {
        keys.insert(k);
    }
    std::ostringstream out;
    out << "monomial,order,undetected,cancellation_pairs\n";
    for (const auto &k : keys) {
        size_t order = 1;
        for (char c : k) {
            order += c == '*';
        }
        if (k.find("^2") != std::string::npos) {
            order++;
        }
        out << k << "," << order << "," << undetected_count(k) << "," << cancellation_count(k) << "\n";
    }
    return out.str();
}

FaultPathCounts enumerate_fault_paths(const Circuit &circuit, const ErrorCriterion &criterion, int max_order,
                                      size_t max_sites) {
    if (max_order != 1 && max_order != 2) {
        throw std::invalid_argument("max_order must be 1 or 2");
    }
    std::vector<FaultSite> sites = fault_sites(circuit, PhysicalParams());
    if (sites.size() > max_sites) {
        throw std::invalid_argument("circuit has " + std::to_string(sites.size()) + " fault sites, limit is " +
                                    std::to_string(max_sites));
    }
    FaultPathCounts out;
    out.sites = sites.size();
    out.max_order = max_order;
    std::vector<uint32_t> outputs = criterion.qubits();

    // Lane-parallel batches: each lane carries one fault set.
    FrameSim sim(circuit, 1);
    std::vector<uint64_t> masks(sites.size(), 0);
    auto provider = [&](size_t k) -> const uint64_t * { return masks[k] ? &masks[k] : nullptr; };
    std::vector<std::vector<size_t>> batch;
    std::vector<std::vector<bool>> single_sig(sites.size());
    std::vector<bool> single_rejected(sites.size());

    auto flush = [&](bool record_singles) {
        if (batch.empty()) {
            return;
        }
        std::fill(masks.begin(), masks.end(), 0);
        for (size_t lane = 0; lane < batch.size(); lane++) {
            for (size_t s : batch[lane]) {
                masks[s] ^= uint64_t{1} << lane;
            }
        }
        sim.run(provider, nullptr, FaultModel::XOnly);
        std::vector<uint64_t> fail = sim.failures(criterion);
        uint64_t undetected = fail[0] & ~sim.reject()[0];
        for (size_t lane = 0; lane < batch.size(); lane++) {
            std::string sym;
            for (size_t s : batch[lane]) {
                sym += sites[s].symbol;
            }
            if ((undetected >> lane) & 1) {
                out.undetected[monomial(sym)]++;
            }
            if (record_singles) {
                size_t s = batch[lane][0];
                single_sig[s] = sim.signature(outputs, lane);
                single_rejected[s] = ((sim.reject()[0] >> lane) & 1) != 0;
            }
        }
        batch.clear();
    };

    for (size_t s = 0; s < sites.size(); s++) {
        batch.push_back({s});
        if (batch.size() == 64) {
            flush(true);
        }
    }
    flush(true);
    if (max_order == 2) {
        for (size_t a = 0; a < sites.size(); a++) {
            for (size_t b = a + 1; b < sites.size(); b++) {
                batch.push_back({a, b});
                if (batch.size() == 64) {
                    flush(false);
                }
                if (single_rejected[a] && single_rejected[b] && single_sig[a] == single_sig[b]) {
                    out.cancellation_pairs[monomial(std::string{sites[a].symbol, sites[b].symbol})]++;
                }
            }
        }
        flush(false);
    }
    return out;
}

MonteCarloResult monte_carlo_error(const Circuit &circuit, const PhysicalParams &params,
                                   const ErrorCriterion &criterion, uint64_t trials, uint64_t seed, FaultModel model) {
    constexpr size_t WORDS = 16;
    constexpr uint64_t LANES = WORDS * 64;
    std::vector<FaultSite> sites = fault_sites(circuit, params);
    FrameSim sim(circuit, WORDS);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<uint64_t> masks(sites.size() * WORDS);
    std::vector<bool> any(sites.size());
    auto provider = [&](size_t k) -> const uint64_t * { return any[k] ? &masks[k * WORDS] : nullptr; };

    MonteCarloResult r;
    r.trials = trials;
    for (uint64_t done = 0; done < trials; done += LANES) {
        uint64_t lanes = std::min<uint64_t>(LANES, trials - done);
        std::fill(masks.begin(), masks.end(), 0);
        for (size_t k = 0; k < sites.size(); k++) {
            double p = sites[k].probability;
            any[k] = false;
            if (p <= 0) {
                continue;
            }
            double log_q = std::log1p(-std::min(p, 1.0 - 1e-16));
            uint64_t pos = 0;
            while (true) {
                double u = unit(rng);
                pos += static_cast<uint64_t>(std::floor(std::log1p(-u) / log_q));
                if (pos >= lanes) {
                    break;
                }
                masks[k * WORDS + pos / 64] |= uint64_t{1} << (pos % 64);
                any[k] = true;
                pos++;
            }
        }
        sim.run(provider, &rng, model);
        std::vector<uint64_t> fail = sim.failures(criterion);
        for (size_t w = 0; w < WORDS; w++) {
            uint64_t valid = w * 64 >= lanes ? 0 : (lanes - w * 64 >= 64 ? ~uint64_t{0} : (uint64_t{1} << (lanes - w * 64)) - 1);
            uint64_t acc = ~sim.reject()[w] & valid;
            r.accepted += std::popcount(acc);
            r.failures += std::popcount(fail[w] & acc);
        }
    }
    if (r.accepted > 0) {
        double n = static_cast<double>(r.accepted);
        double ph = static_cast<double>(r.failures) / n;
        r.estimate = ph;
        r.sigma = std::sqrt(ph * (1 - ph) / n);
        const double zc = 1.959963984540054;
        double denom = 1 + zc * zc / n;
        double centre = (ph + zc * zc / (2 * n)) / denom;
        double half = zc * std::sqrt(ph * (1 - ph) / n + zc * zc / (4 * n * n)) / denom;
        r.ci_low = std::max(0.0, centre - half);
        r.ci_high = std::min(1.0, centre + half);
    }
    return r;
}

std::vector<bool> reversible_simulate(const Circuit &circuit, std::vector<bool> bits) {
    if (bits.size() != circuit.num_qubits()) {
        throw std::invalid_argument("input has " + std::to_string(bits.size()) + " bits, circuit has " +
                                    std::to_string(circuit.num_qubits()) + " qubits");
    }
    for (const Instruction &inst : circuit.instructions()) {
        if (inst.condition) {
            throw std::invalid_argument("classically controlled gates are not reversible logic");
        }
        const auto &q = inst.operands;
        switch (inst.kind) {
            case GateKind::PrepZero:
                bits[q[0]] = false;
                break;
            case GateKind::X:
                bits[q[0]] = !bits[q[0]];
                break;
            case GateKind::CNOT:
                bits[q[1]] = bits[q[1]] != bits[q[0]];
                break;
            case GateKind::Toffoli:
                bits[q[2]] = bits[q[2]] != (bits[q[0]] && bits[q[1]]);
                break;
            default:
                throw std::invalid_argument("non-classical gate " + std::string(gate_name(inst.kind)));
        }
    }
    return bits;
}

}  // namespace ftsim
