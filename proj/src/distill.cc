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

#include "triortho/distill.h"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "triortho/simulator.h"

namespace triortho {

ErrorModel ErrorModel::uniform(double p) {
    ErrorModel m;
    m.p = p;
    m.class_weights.fill(1.0 / kErrorClasses);
    return m;
}

ErrorModel ErrorModel::single_class(double p, unsigned error_class) {
    if (error_class < 1 || error_class > kErrorClasses) {
        throw std::invalid_argument("error class must be in 1..7");
    }
    ErrorModel m;
    m.p = p;
    m.class_weights[error_class - 1] = 1.0;
    return m;
}

void ErrorModel::validate() const {
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("failure probability must lie in [0, 1]");
    }
    double total = 0;
    for (auto w : class_weights) {
        if (!(w >= 0)) {
            throw std::invalid_argument("class weights must be nonnegative");
        }
        total += w;
    }
    if (std::abs(total - 1) > 1e-9) {
        throw std::invalid_argument("class weights must sum to 1");
    }
}

bool DistillOutcome::harmful() const {
    for (const auto &l : logical_error) {
        if (!l.is_zero()) {
            return true;
        }
    }
    return false;
}

DistillOutcome propagate(const TriorthogonalMatrix &g, const std::vector<InjectedFault> &injected) {
    size_t n = g.cols();
    DistillOutcome out;
    out.fault_sites = injected;
    for (auto &b : out.block_errors) {
        b = BitVector(n);
    }
    for (const auto &f : injected) {
        if (f.site >= n) {
            throw std::invalid_argument("fault site " + std::to_string(f.site) + " out of range");
        }
        if (f.error_class < 1 || f.error_class > kErrorClasses) {
            throw std::invalid_argument("error class must be in 1..7");
        }
        for (size_t b = 0; b < 3; b++) {
            if ((f.error_class >> b) & 1) {
                out.block_errors[b].flip(f.site);
            }
        }
    }
    const auto &even = g.even_rows();
    const auto &odd = g.odd_rows();
    for (size_t b = 0; b < 3; b++) {
        for (auto r : even) {
            if (g.matrix().row(r).dot(out.block_errors[b])) {
                out.accepted = false;
            }
        }
        out.logical_error[b] = BitVector(odd.size());
        for (size_t j = 0; j < odd.size(); j++) {
            out.logical_error[b].set(j, g.matrix().row(odd[j]).dot(out.block_errors[b]));
        }
    }
    return out;
}

double CoefficientReport::predicted_failure(double p) const {
    return order1_coefficient * p + order2_coefficient * p * p;
}

CoefficientReport enumerate_order2(const TriorthogonalMatrix &g, const ErrorModel &model) {
    model.validate();
    size_t n = g.cols();
    CoefficientReport report;
    BitMatrix even = g.even_matrix();
    BitMatrix odd = g.odd_matrix();
    // A class touches each of its blocks with the same site pattern, so
    // detection and harm depend only on the site pattern.
    auto undetected_harmful = [&](const BitVector &pattern) {
        return even.syndrome(pattern).is_zero() && !odd.syndrome(pattern).is_zero();
    };
    for (size_t i = 0; i < n; i++) {
        if (undetected_harmful(BitVector::unit(n, i))) {
            report.order1_total += kErrorClasses;
            report.order1_coefficient += 1.0;
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            BitVector pair = BitVector::unit(n, i) ^ BitVector::unit(n, j);
            if (undetected_harmful(pair)) {
                report.harmful_site_pairs++;
            }
            for (unsigned e1 = 1; e1 <= kErrorClasses; e1++) {
                for (unsigned e2 = 1; e2 <= kErrorClasses; e2++) {
                    DistillOutcome o = propagate(g, {{i, e1}, {j, e2}});
                    if (o.accepted && o.harmful()) {
                        report.order2_pairs_total++;
                        report.per_class[e1 - 1][e2 - 1]++;
                        if (e1 == e2) {
                            report.identical_class_pairs++;
                        }
                        report.order2_coefficient +=
                            model.class_weights[e1 - 1] * model.class_weights[e2 - 1];
                    }
                }
            }
        }
    }
    return report;
}

Interval wilson_interval(uint64_t successes, uint64_t trials, double z) {
    if (trials == 0) {
        return {0, 1};
    }
    double n = static_cast<double>(trials);
    double phat = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (phat + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

uint64_t splitmix64(uint64_t &state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double unit_double(uint64_t &state) { return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53; }

struct Tally {
    uint64_t accepted = 0;
    uint64_t failures = 0;
};

Tally run_trials(const TriorthogonalMatrix &g, const ErrorModel &model, uint64_t seed, uint64_t begin,
                 uint64_t end, const TrialObserver *observer) {
    Tally t;
    for (uint64_t trial = begin; trial < end; trial++) {
        auto faults = sample_trial_faults(g.cols(), model, seed, trial);
        if (faults.empty() && !observer) {
            t.accepted++;
            continue;
        }
        DistillOutcome o = propagate(g, faults);
        if (o.accepted) {
            t.accepted++;
            if (o.harmful()) {
                t.failures++;
            }
        }
        if (observer) {
            (*observer)(trial, o);
        }
    }
    return t;
}

MonteCarloStats finish(uint64_t trials, uint64_t seed, const Tally &t) {
    MonteCarloStats s;
    s.trials = trials;
    s.seed = seed;
    s.accepted = t.accepted;
    s.failures = t.failures;
    s.acceptance_rate = trials ? static_cast<double>(t.accepted) / trials : 0;
    s.error_rate = t.accepted ? static_cast<double>(t.failures) / t.accepted : 0;
    s.acceptance_wilson = wilson_interval(t.accepted, trials, 1);
    s.error_wilson = wilson_interval(t.failures, t.accepted, 1);
    return s;
}

}  // namespace

std::vector<InjectedFault> sample_trial_faults(size_t n, const ErrorModel &model, uint64_t seed,
                                               uint64_t trial) {
    uint64_t state = seed ^ (trial * 0xD1B54A32D192ED03ull);
    splitmix64(state);
    std::vector<InjectedFault> faults;
    for (size_t site = 0; site < n; site++) {
        if (unit_double(state) < model.p) {
            double u = unit_double(state);
            unsigned e = kErrorClasses;
            double acc = 0;
            for (unsigned c = 1; c <= kErrorClasses; c++) {
                acc += model.class_weights[c - 1];
                if (u < acc) {
                    e = c;
                    break;
                }
            }
            // Guard against rounding in the cumulative sum.
            while (model.class_weights[e - 1] == 0 && e > 1) {
                e--;
            }
            faults.push_back({site, e});
        }
    }
    return faults;
}

MonteCarloStats monte_carlo(const TriorthogonalMatrix &g, const ErrorModel &model, uint64_t trials,
                            uint64_t seed, unsigned threads) {
    model.validate();
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo needs at least one trial");
    }
    threads = std::max(1u, threads);
    if (threads == 1) {
        return finish(trials, seed, run_trials(g, model, seed, 0, trials, nullptr));
    }
    std::vector<Tally> tallies(threads);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; w++) {
        uint64_t begin = trials * w / threads;
        uint64_t end = trials * (w + 1) / threads;
        workers.emplace_back([&, w, begin, end] { tallies[w] = run_trials(g, model, seed, begin, end, nullptr); });
    }
    Tally total;
    for (unsigned w = 0; w < threads; w++) {
        workers[w].join();
        total.accepted += tallies[w].accepted;
        total.failures += tallies[w].failures;
    }
    return finish(trials, seed, total);
}

MonteCarloStats monte_carlo(const TriorthogonalMatrix &g, const ErrorModel &model, uint64_t trials,
                            uint64_t seed, const TrialObserver &observer) {
    model.validate();
    if (trials == 0) {
        throw std::invalid_argument("monte_carlo needs at least one trial");
    }
    return finish(trials, seed, run_trials(g, model, seed, 0, trials, &observer));
}

std::vector<ToffoliErrorLabel> decode_outputs(const DistillOutcome &outcome, const TriorthogonalCode &code) {
    if (!outcome.accepted) {
        throw std::invalid_argument("decode_outputs called on a rejected distillation outcome");
    }
    std::vector<ToffoliErrorLabel> labels(code.k);
    for (size_t j = 0; j < code.k; j++) {
        labels[j].z_control1 = outcome.logical_error[0].get(j);
        labels[j].z_control2 = outcome.logical_error[1].get(j);
        labels[j].x_target = outcome.logical_error[2].get(j);
    }
    return labels;
}

SparseDistillResult simulate_distillation_sparse(const TriorthogonalCode &code,
                                                 const std::vector<InjectedFault> &injected) {
    size_t n = code.n;
    size_t k = code.k;
    if (3 * n > kMaxSimulatedQubits) {
        throw std::invalid_argument("sparse distillation simulation needs 3n <= 64");
    }
    // |+>^{3k} logical, encoded block by block.
    std::vector<BitVector> all_labels = enumerate_span(BitMatrix::identity(3 * k), BitVector(3 * k));
    SparseState logical_plus = SparseState::uniform(3 * k, all_labels);
    SparseState state = encode(code, logical_plus);
    for (size_t i = 0; i < n; i++) {
        state.apply(Gate::CCZ, {i, n + i, 2 * n + i});
    }
    for (const auto &f : injected) {
        if (f.site >= n || f.error_class < 1 || f.error_class > kErrorClasses) {
            throw std::invalid_argument("invalid injected fault");
        }
        for (size_t b = 0; b < 3; b++) {
            if ((f.error_class >> b) & 1) {
                state.apply(Gate::Z, {b * n + f.site});
            }
        }
    }

    SparseDistillResult result;
    for (size_t b = 0; b < 3; b++) {
        for (const auto &row : code.x_stabilizers.row_vectors()) {
            BitVector mask(3 * n);
            for (auto q : row.support()) {
                mask.set(b * n + q, true);
            }
            double e = state.x_expectation(mask);
            if (std::abs(std::abs(e) - 1) > 1e-9) {
                throw std::logic_error("distillation state is not an X-stabilizer eigenstate");
            }
            if (e < 0) {
                result.accepted = false;
            }
        }
    }
    if (!result.accepted) {
        return result;
    }

    // Ideal output: CCZ on each logical triple, then H on the target block.
    auto finish_logical = [&](SparseState s) {
        for (size_t j = 0; j < k; j++) {
            s.apply(Gate::H, {2 * k + j});
        }
        return s;
    };
    SparseState ideal = logical_plus;
    for (size_t j = 0; j < k; j++) {
        ideal.apply(Gate::CCZ, {j, k + j, 2 * k + j});
    }
    ideal = finish_logical(ideal);
    SparseState actual = finish_logical(decode(code, state));

    // Identify the Pauli on each output among Z on controls and X on target.
    uint64_t candidates = uint64_t{1} << (3 * k);
    for (uint64_t c = 0; c < candidates; c++) {
        SparseState guess = ideal;
        std::vector<ToffoliErrorLabel> labels(k);
        for (size_t j = 0; j < k; j++) {
            labels[j].z_control1 = (c >> (3 * j)) & 1;
            labels[j].z_control2 = (c >> (3 * j + 1)) & 1;
            labels[j].x_target = (c >> (3 * j + 2)) & 1;
            if (labels[j].z_control1) guess.apply(Gate::Z, {j});
            if (labels[j].z_control2) guess.apply(Gate::Z, {k + j});
            if (labels[j].x_target) guess.apply(Gate::X, {2 * k + j});
        }
        if (states_equal_up_to_global_phase(guess, actual, 1e-9)) {
            result.labels = labels;
            return result;
        }
    }
    throw std::logic_error("accepted distillation output matches no Pauli-frame candidate");
}

}  // namespace triortho
