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

#ifndef TRIORTHO_DISTILL_H
#define TRIORTHO_DISTILL_H

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "triortho/codes.h"
#include "triortho/gf2.h"

namespace triortho {

/// Number of nontrivial Z patterns on a CCZ triple. Class e in 1..7 puts a
/// Z on block b iff bit b of e is set.
inline constexpr size_t kErrorClasses = 7;

struct ErrorModel {
    /// Failure probability per transversal CCZ site (or per input Toffoli state).
    double p = 0;
    /// class_weights[e - 1] is the probability of class e given a failure.
    std::array<double, kErrorClasses> class_weights{};

    static ErrorModel uniform(double p);
    static ErrorModel single_class(double p, unsigned error_class);
    /// Throws std::invalid_argument unless p is in [0,1] and weights are a distribution.
    void validate() const;
};

struct InjectedFault {
    size_t site;
    unsigned error_class;
    bool operator==(const InjectedFault &) const = default;
};

struct DistillOutcome {
    bool accepted = true;
    /// Per-block Z error pattern on the n physical sites.
    std::array<BitVector, 3> block_errors;
    /// Per-block logical Z content: bit j = overlap parity with odd row j.
    std::array<BitVector, 3> logical_error;
    std::vector<InjectedFault> fault_sites;

    bool harmful() const;
};

/// Classical Z-error propagation through encode, transversal CCZ and the
/// X-stabilizer checks of the three blocks.
DistillOutcome propagate(const TriorthogonalMatrix &g, const std::vector<InjectedFault> &injected);

struct CoefficientReport {
    /// Single faults that are undetected and harmful (zero for any d_z >= 2 code).
    uint64_t order1_total = 0;
    /// (unordered site pair, ordered class pair) combinations that are
    /// undetected and harmful.
    uint64_t order2_pairs_total = 0;
    /// Same count restricted to equal classes on both sites.
    uint64_t identical_class_pairs = 0;
    /// per_class[e1-1][e2-1]: counts with class e1 on the lower site index.
    std::array<std::array<uint64_t, kErrorClasses>, kErrorClasses> per_class{};
    /// Site pairs whose equal-class fault is undetected and harmful.
    uint64_t harmful_site_pairs = 0;
    /// sum of w(e) over counted single faults.
    double order1_coefficient = 0;
    /// sum of w(e1) w(e2) over counted pairs.
    double order2_coefficient = 0;

    /// order1_coefficient p + order2_coefficient p^2.
    double predicted_failure(double p) const;
};

CoefficientReport enumerate_order2(const TriorthogonalMatrix &g, const ErrorModel &model);

struct Interval {
    double low = 0;
    double high = 0;
};

/// Wilson score interval for k successes in n trials at z standard deviations.
Interval wilson_interval(uint64_t successes, uint64_t trials, double z);

struct MonteCarloStats {
    uint64_t trials = 0;
    uint64_t accepted = 0;
    /// Accepted trials with a nonzero logical error.
    uint64_t failures = 0;
    uint64_t seed = 0;
    double acceptance_rate = 0;
    /// failures / accepted.
    double error_rate = 0;
    Interval acceptance_wilson;  // z = 1
    Interval error_wilson;       // z = 1
};

/// The faults of one trial. Trial t draws from its own generator seeded by
/// (seed, t), so results do not depend on how trials are split across threads.
std::vector<InjectedFault> sample_trial_faults(size_t n, const ErrorModel &model, uint64_t seed,
                                               uint64_t trial);

using TrialObserver = std::function<void(uint64_t trial, const DistillOutcome &outcome)>;

MonteCarloStats monte_carlo(const TriorthogonalMatrix &g, const ErrorModel &model, uint64_t trials,
                            uint64_t seed, unsigned threads = 1);
/// Sequential variant that reports every trial with at least one fault.
MonteCarloStats monte_carlo(const TriorthogonalMatrix &g, const ErrorModel &model, uint64_t trials,
                            uint64_t seed, const TrialObserver &observer);

/// Error on one output Toffoli state: Z on either control, X on the target
/// (a block-3 logical Z turned into X by the final Hadamard).
struct ToffoliErrorLabel {
    bool z_control1 = false;
    bool z_control2 = false;
    bool x_target = false;

    bool clean() const { return !z_control1 && !z_control2 && !x_target; }
    /// Class-style encoding: bit 0 control 1, bit 1 control 2, bit 2 target.
    unsigned bits() const { return z_control1 | (z_control2 << 1) | (x_target << 2); }
    bool operator==(const ToffoliErrorLabel &) const = default;
};

std::vector<ToffoliErrorLabel> decode_outputs(const DistillOutcome &outcome, const TriorthogonalCode &code);

/// State-level simulation of the distillation circuit for small codes:
/// encode |+>^k in three blocks, apply transversal CCZ, inject the Z faults,
/// read every X stabilizer, decode, apply H to the target block and identify
/// the Pauli error on each output. Needs 3n <= 64 and a modest G.
struct SparseDistillResult {
    bool accepted = true;
    std::vector<ToffoliErrorLabel> labels;
};

SparseDistillResult simulate_distillation_sparse(const TriorthogonalCode &code,
                                                 const std::vector<InjectedFault> &injected);

}  // namespace triortho

#endif
