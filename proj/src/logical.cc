// Copyright 2026 The Triortho Authors
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

#include "triortho/logical.h"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json.hpp"

namespace triortho {

const char *location_name(FaultLocation location) {
    switch (location) {
        case FaultLocation::DataBeforeH:
            return "data_before_h";
        case FaultLocation::DataAfterH:
            return "data_after_h";
        case FaultLocation::AncillaPrep:
            return "ancilla_prep";
        case FaultLocation::CnotData:
            return "cnot_data";
        case FaultLocation::CnotAncilla:
            return "cnot_ancilla";
        case FaultLocation::CnotBoth:
            return "cnot_both";
        case FaultLocation::Measurement:
            return "measurement";
    }
    return "?";
}

std::string FaultSpec::str() const {
    const char *p = pauli == FaultPauli::X ? "X" : pauli == FaultPauli::Z ? "Z" : "FLIP";
    return std::string(p) + "@" + location_name(location) + "[" + std::to_string(qubit) + "]";
}

FaultSpec parse_fault_spec(const std::string &text) {
    auto at = text.find('@');
    auto open = text.find('[', at == std::string::npos ? 0 : at);
    auto close = text.find(']', open == std::string::npos ? 0 : open);
    if (at == std::string::npos || open == std::string::npos || close != text.size() - 1 || close == open + 1) {
        throw std::invalid_argument("fault must look like X@cnot_data[3], got '" + text + "'");
    }
    FaultSpec f{};
    std::string p = text.substr(0, at);
    if (p == "X") {
        f.pauli = FaultPauli::X;
    } else if (p == "Z") {
        f.pauli = FaultPauli::Z;
    } else if (p == "FLIP") {
        f.pauli = FaultPauli::MeasurementFlip;
    } else {
        throw std::invalid_argument("unknown fault type '" + p + "'");
    }
    std::string loc = text.substr(at + 1, open - at - 1);
    bool found = false;
    for (int l = 0; l <= static_cast<int>(FaultLocation::Measurement); l++) {
        if (loc == location_name(static_cast<FaultLocation>(l))) {
            f.location = static_cast<FaultLocation>(l);
            found = true;
        }
    }
    if (!found) {
        throw std::invalid_argument("unknown fault location '" + loc + "'");
    }
    std::string q = text.substr(open + 1, close - open - 1);
    if (q.find_first_not_of("0123456789") != std::string::npos) {
        throw std::invalid_argument("fault qubit must be a nonnegative integer, got '" + q + "'");
    }
    f.qubit = std::stoul(q);
    if ((f.pauli == FaultPauli::MeasurementFlip) != (f.location == FaultLocation::Measurement)) {
        throw std::invalid_argument("FLIP faults go with the measurement location only");
    }
    return f;
}

std::string SteaneReport::to_json() const {
    nlohmann::ordered_json j;
    j["raw_outcomes"] = raw_outcomes.str();
    j["x_syndrome"] = x_syndrome.str();
    j["gauge_parities"] = gauge_parities.str();
    j["applied_correction"] = applied_correction.str();
    j["decode_success"] = decode_success;
    return j.dump();
}

SyndromeTable::SyndromeTable(const BitMatrix &checks, size_t max_weight)
    : n_(checks.cols()), max_weight_(max_weight) {
    if (checks.rows() > 64) {
        throw std::invalid_argument("syndrome table supports at most 64 checks");
    }
    for (size_t w = 0; w <= max_weight && w <= n_; w++) {
        std::vector<size_t> idx(w);
        for (size_t i = 0; i < w; i++) {
            idx[i] = i;
        }
        while (true) {
            BitVector e(n_);
            for (auto i : idx) {
                e.set(i, true);
            }
            table_.emplace(checks.syndrome(e).to_word(), e);
            // Next combination in lexicographic order.
            size_t i = w;
            while (i > 0 && idx[i - 1] == n_ - w + i - 1) {
                i--;
            }
            if (i == 0) {
                break;
            }
            idx[i - 1]++;
            for (size_t j = i; j < w; j++) {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
}

std::optional<BitVector> SyndromeTable::lookup(const BitVector &syndrome) const {
    auto it = table_.find(syndrome.to_word());
    if (it == table_.end()) {
        return std::nullopt;
    }
    return it->second;
}

namespace {

size_t correctable_weight(TriorthogonalCode &code) {
    if (!code.distance()) {
        fill_distances(code);
    }
    return (*code.distance() - 1) / 2;
}

SparseState plus_ancilla(const TriorthogonalCode &code) {
    std::vector<BitVector> labels = enumerate_span(BitMatrix::identity(code.k), BitVector(code.k));
    return encode(code, SparseState::uniform(code.k, labels));
}

void apply_pauli(SparseState &s, FaultPauli p, size_t q) {
    if (p == FaultPauli::X) {
        s.apply(Gate::X, {q});
    } else if (p == FaultPauli::Z) {
        s.apply(Gate::Z, {q});
    }
}

void apply_x_pattern(SparseState &s, const BitVector &pattern) {
    for (auto q : pattern.support()) {
        s.apply(Gate::X, {q});
    }
}

}  // namespace

SteaneProcedure::SteaneProcedure(TriorthogonalCode code)
    : code_(std::move(code)),
      table_(code_.g0_basis, correctable_weight(code_)),
      ancilla_(plus_ancilla(code_)),
      g0_elements_(enumerate_span(code_.g0_basis, BitVector(code_.n))) {
    if (2 * code_.n > kMaxSimulatedQubits) {
        throw std::invalid_argument("Steane procedure needs 2n <= 64 simulated qubits");
    }
}

HadamardOutput SteaneProcedure::logical_hadamard(const SparseState &data,
                                                 const std::vector<FaultSpec> &faults,
                                                 Randomness &randomness, bool strict) const {
    return run(data, faults, randomness, strict, true);
}

HadamardOutput SteaneProcedure::steane_x_correct(const SparseState &data,
                                                 const std::vector<FaultSpec> &faults,
                                                 Randomness &randomness, bool strict) const {
    return run(data, faults, randomness, strict, false);
}

HadamardOutput SteaneProcedure::run(const SparseState &data, const std::vector<FaultSpec> &faults,
                                    Randomness &randomness, bool strict, bool with_hadamard) const {
    size_t n = code_.n;
    if (data.qubit_count() != n) {
        throw std::invalid_argument("data state has " + std::to_string(data.qubit_count()) +
                                    " qubits, code has n=" + std::to_string(n));
    }
    BitVector flips(n);
    for (const auto &f : faults) {
        if (f.qubit >= n) {
            throw std::invalid_argument("fault " + f.str() + " is outside the code block");
        }
        if ((f.location == FaultLocation::Measurement) != (f.pauli == FaultPauli::MeasurementFlip)) {
            throw std::invalid_argument("fault " + f.str() + " does not exist in the circuit");
        }
        if (f.location == FaultLocation::Measurement) {
            flips.flip(f.qubit);
        }
    }
    auto inject = [&](SparseState &s, FaultLocation where, size_t offset) {
        for (const auto &f : faults) {
            if (f.location == where) {
                apply_pauli(s, f.pauli, f.qubit + offset);
            }
        }
    };

    SparseState d = data;
    inject(d, FaultLocation::DataBeforeH, 0);
    if (with_hadamard) {
        for (size_t q = 0; q < n; q++) {
            d.apply(Gate::H, {q});
        }
    }
    inject(d, FaultLocation::DataAfterH, 0);
    SparseState anc = ancilla_;
    inject(anc, FaultLocation::AncillaPrep, 0);

    SparseState joint = d.tensor(anc);
    for (size_t q = 0; q < n; q++) {
        joint.apply(Gate::CNOT, {q, n + q});
    }
    inject(joint, FaultLocation::CnotData, 0);
    inject(joint, FaultLocation::CnotAncilla, n);
    inject(joint, FaultLocation::CnotBoth, 0);
    inject(joint, FaultLocation::CnotBoth, n);

    HadamardOutput out{SparseState(n), {}};
    SteaneReport &report = out.report;
    report.raw_outcomes = BitVector(n);
    for (size_t q = 0; q < n; q++) {
        bool outcome = randomness.next_outcome(joint.probability_of_one(n + q));
        joint.project(n + q, outcome);
        report.raw_outcomes.set(q, outcome != flips.get(q));
    }
    out.state = joint.take_prefix(n);

    report.x_syndrome = code_.g0_basis.syndrome(report.raw_outcomes);
    auto correction = table_.lookup(report.x_syndrome);
    if (!correction) {
        if (strict) {
            throw DecodeFailure("X syndrome " + report.x_syndrome.str() +
                                " is outside the decoder table (error weight above " +
                                std::to_string(table_.max_weight()) + ")");
        }
        report.decode_success = false;
        correction = BitVector(n);
    }
    report.applied_correction = *correction;
    apply_x_pattern(out.state, *correction);

    // Gauge values are read from the outcomes after the X correction.
    BitVector corrected = report.raw_outcomes ^ *correction;
    report.gauge_parities = BitVector(code_.gauge_pairs.size());
    for (size_t i = 0; i < code_.gauge_pairs.size(); i++) {
        if (code_.gauge_pairs[i].z_part.dot(corrected)) {
            report.gauge_parities.set(i, true);
            apply_x_pattern(out.state, code_.gauge_pairs[i].x_part);
        }
    }
    return out;
}

SparseState SteaneProcedure::ideal_hadamard_image(const SparseState &data) const {
    SparseState logical = decode(code_, data);
    for (size_t q = 0; q < logical.qubit_count(); q++) {
        logical.apply(Gate::H, {q});
    }
    return encode(code_, logical);
}

BitVector SteaneProcedure::ideal_z_correct(SparseState &state) const {
    BitVector syndrome(code_.g0_basis.rows());
    for (size_t i = 0; i < code_.g0_basis.rows(); i++) {
        double e = state.x_expectation(code_.g0_basis.row(i));
        if (std::abs(std::abs(e) - 1) > 1e-9) {
            throw DecodeFailure("state is not an eigenstate of X stabilizer " +
                                code_.g0_basis.row(i).str());
        }
        syndrome.set(i, e < 0);
    }
    auto z = table_.lookup(syndrome);
    if (!z) {
        throw DecodeFailure("Z syndrome " + syndrome.str() + " is outside the decoder table");
    }
    for (auto q : z->support()) {
        state.apply(Gate::Z, {q});
    }
    return *z;
}

size_t SteaneProcedure::reduced_weight(const BitVector &pattern) const {
    size_t best = pattern.size() + 1;
    for (const auto &g : g0_elements_) {
        best = std::min(best, (pattern ^ g).weight());
    }
    return best;
}

HadamardOutput logical_hadamard(const SparseState &data, const TriorthogonalCode &code,
                                const std::vector<FaultSpec> &faults, Randomness &randomness) {
    return SteaneProcedure(code).logical_hadamard(data, faults, randomness);
}

HadamardOutput steane_x_correct(const SparseState &data, const TriorthogonalCode &code,
                                const std::vector<FaultSpec> &faults, Randomness &randomness) {
    return SteaneProcedure(code).steane_x_correct(data, faults, randomness);
}

std::vector<FaultSpec> enumerate_fault_sites(size_t n, bool include_z_faults) {
    std::vector<FaultSpec> sites;
    for (auto loc : {FaultLocation::DataBeforeH, FaultLocation::DataAfterH, FaultLocation::AncillaPrep,
                     FaultLocation::CnotData, FaultLocation::CnotAncilla, FaultLocation::CnotBoth}) {
        for (size_t q = 0; q < n; q++) {
            sites.push_back({loc, FaultPauli::X, q});
            if (include_z_faults) {
                sites.push_back({loc, FaultPauli::Z, q});
            }
        }
    }
    for (size_t q = 0; q < n; q++) {
        sites.push_back({FaultLocation::Measurement, FaultPauli::MeasurementFlip, q});
    }
    return sites;
}

namespace {

SparseState sweep_input(const TriorthogonalCode &code) {
    SparseState one(1);
    one = SparseState::from_terms(1, {{BitVector::from_string("0"), Amplitude(0.6, 0)},
                                      {BitVector::from_string("1"), Amplitude(0, 0.8)}});
    SparseState logical = one;
    for (size_t j = 1; j < code.k; j++) {
        logical = logical.tensor(one);
    }
    return encode(code, logical);
}

std::optional<std::string> evaluate_fault_set(const SteaneProcedure &proc, const SparseState &input,
                                              const SparseState &ideal,
                                              const std::vector<FaultSpec> &faults, uint64_t seed) {
    const TriorthogonalCode &code = proc.code();
    Randomness randomness = Randomness::seeded(seed);
    HadamardOutput out = proc.logical_hadamard(input, faults, randomness, false);
    if (!out.report.decode_success) {
        return "decoder table miss during the procedure";
    }
    Randomness repair_randomness = Randomness::seeded(seed ^ 0x9E3779B97F4A7C15ull);
    HadamardOutput fix = proc.steane_x_correct(out.state, {}, repair_randomness, false);
    if (!fix.report.decode_success) {
        return "residual X error is not decodable";
    }
    BitVector x_residual = fix.report.applied_correction;
    for (size_t i = 0; i < code.gauge_pairs.size(); i++) {
        if (fix.report.gauge_parities.get(i)) {
            x_residual ^= code.gauge_pairs[i].x_part;
        }
    }
    size_t x_weight = proc.reduced_weight(x_residual);
    SparseState repaired = fix.state;
    BitVector z_residual;
    try {
        z_residual = proc.ideal_z_correct(repaired);
    } catch (const DecodeFailure &e) {
        return std::string("residual Z error: ") + e.what();
    }
    if (x_weight > faults.size()) {
        return "residual X error of weight " + std::to_string(x_weight);
    }
    if (z_residual.weight() > faults.size()) {
        return "residual Z error of weight " + std::to_string(z_residual.weight());
    }
    if (!states_equal_up_to_global_phase(ideal, repaired, 1e-9)) {
        return "logical error after ideal correction of the residual";
    }
    return std::nullopt;
}

}  // namespace

SweepReport fault_tolerance_sweep(const TriorthogonalCode &code, const SweepOptions &options) {
    SteaneProcedure proc(code);
    SparseState input = sweep_input(proc.code());
    SparseState ideal = proc.ideal_hadamard_image(input);
    std::vector<FaultSpec> sites = enumerate_fault_sites(code.n, options.include_z_faults);
    SweepReport report;

    std::vector<size_t> idx;
    std::vector<FaultSpec> faults;
    bool done = false;
    std::function<void(size_t)> visit = [&](size_t start) {
        if (done) {
            return;
        }
        report.fault_sets_checked++;
        for (auto seed : options.seeds) {
            report.runs++;
            auto reason = evaluate_fault_set(proc, input, ideal, faults, seed);
            if (reason) {
                report.counterexamples.push_back({faults, seed, *reason});
                if (options.max_counterexamples &&
                    report.counterexamples.size() >= options.max_counterexamples) {
                    done = true;
                    return;
                }
                break;
            }
        }
        if (faults.size() == options.weight_limit) {
            return;
        }
        for (size_t i = start; i < sites.size() && !done; i++) {
            faults.push_back(sites[i]);
            visit(i + 1);
            faults.pop_back();
        }
    };
    visit(0);
    return report;
}

SparseState toffoli_resource_state() {
    SparseState s(3);
    s.apply(Gate::H, {0});
    s.apply(Gate::H, {1});
    // Toffoli = H_target CCZ H_target.
    s.apply(Gate::H, {2});
    s.apply(Gate::CCZ, {0, 1, 2});
    s.apply(Gate::H, {2});
    return s;
}

SparseState ccz_via_toffoli_state(const SparseState &inputs, const SparseState &toffoli_state,
                                  Randomness &randomness) {
    if (inputs.qubit_count() != 3 || toffoli_state.qubit_count() != 3) {
        throw std::invalid_argument("CCZ teleportation acts on three input and three resource qubits");
    }
    if (!states_equal_up_to_global_phase(toffoli_resource_state(), toffoli_state, 1e-10)) {
        throw std::invalid_argument("malformed resource: state is not Toffoli|+,+,0>");
    }
    // The H on the target turns the Toffoli state into CCZ|+,+,+>.
    SparseState resource = toffoli_state;
    resource.apply(Gate::H, {2});
    SparseState joint = inputs.tensor(resource);
    for (size_t i = 0; i < 3; i++) {
        joint.apply(Gate::CNOT, {3 + i, i});
    }
    bool m[3];
    for (size_t i = 0; i < 3; i++) {
        m[i] = randomness.next_outcome(joint.probability_of_one(i));
        joint.project(i, m[i]);
    }
    SparseState out = joint.take_qubits({3, 4, 5});
    // The output is CCZ X^m |in>; undo with X^m and the diagonal Clifford
    // X^m CCZ X^m CCZ expanded into CZ and Z terms.
    for (size_t i = 0; i < 3; i++) {
        if (m[i]) {
            out.apply(Gate::X, {i});
        }
    }
    if (m[2]) out.apply(Gate::CZ, {0, 1});
    if (m[1]) out.apply(Gate::CZ, {0, 2});
    if (m[0]) out.apply(Gate::CZ, {1, 2});
    if (m[1] && m[2]) out.apply(Gate::Z, {0});
    if (m[0] && m[2]) out.apply(Gate::Z, {1});
    if (m[0] && m[1]) out.apply(Gate::Z, {2});
    return out;
}

}  // namespace triortho
