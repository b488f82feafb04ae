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

#ifndef TRIORTHO_COST_H
#define TRIORTHO_COST_H

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace triortho {

/// sum_i coeff_i p^degree_i.
struct Polynomial {
    std::vector<std::pair<double, int>> terms;

    double operator()(double p) const;
    static Polynomial monomial(double coeff, int degree) { return {{{coeff, degree}}}; }
    /// 1 - c p.
    static Polynomial one_minus(double c) { return {{{1.0, 0}, {-c, 1}}}; }
};

/// Toffoli and CCZ states are interchangeable up to a Hadamard, so they share a kind.
enum class StateKind { T, Toffoli };

const char *kind_name(StateKind kind);
StateKind parse_kind(const std::string &name);

struct ProtocolSpec {
    std::string name;
    /// Groups the k-parameterized members of one protocol family.
    std::string family;
    /// 0 for protocols without a size parameter.
    int k = 0;
    double inputs_per_output = 1;
    Polynomial error_poly;
    Polynomial success_poly;
    StateKind input_kind = StateKind::T;
    StateKind output_kind = StateKind::T;
    /// When nonempty, the level below must belong to this family. The
    /// triorthogonal error formula assumes its inputs carry the seven CCZ
    /// error classes with equal weight, which holds for Jones outputs only.
    std::string input_family;

    /// Throws std::invalid_argument unless error(0)=0, success(0)=1 and inputs > 0.
    void validate() const;
};

/// 15 T states in, one T out, error 35p^3.
ProtocolSpec fifteen_to_one();
/// [[3k+8,k,2]] T distillation: (3k+8)/k inputs per output, error (3k+1)p^2.
ProtocolSpec bravyi_haah_t(int k);
/// Eight T states in, one Toffoli state out, error 28p^2.
ProtocolSpec jones_toffoli();
/// [[3k+8,k,2]] Toffoli distillation fed with Toffoli states of error p1:
/// error 7(3k+1)(p1/7)^2, k even in 2..100.
ProtocolSpec triorthogonal_top_level(int k);

/// 15-to-1, the even-k T family and the Jones Toffoli protocol.
std::vector<ProtocolSpec> default_t_menu();
/// default_t_menu plus the triorthogonal top level for every even k <= 100.
std::vector<ProtocolSpec> default_menu();

struct InfeasibleTarget : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CostQuery {
    double target_error = 1e-13;
    double physical_t_error = 1e-2;
    /// Maximum number of protocol levels in a stack.
    int max_depth = 4;
    std::vector<ProtocolSpec> menu;
    /// When set, the top level must belong to this family.
    std::optional<std::string> top_family;

    void validate() const;
};

struct StackLevel {
    ProtocolSpec protocol;
    double input_error = 0;
    double output_error = 0;
    double success_prob = 1;
    /// Expected physical T states per output of this level.
    double cost = 0;
};

struct CostResult {
    double expected_t_count = 0;
    double achieved_error = 0;
    std::vector<StackLevel> stack;

    /// Levels that output T states.
    int t_distillation_depth() const;
    /// k of the top level, 0 if it has no size parameter.
    int top_k() const { return stack.empty() ? 0 : stack.back().protocol.k; }
    std::string describe() const;
};

/// Forward composition of a stack starting from physical T states. Returns
/// nullopt when the kinds or input families do not chain, or a success
/// probability is not positive.
std::optional<CostResult> evaluate_stack(const std::vector<ProtocolSpec> &stack, double physical_t_error);

/// Minimum expected T count over stacks of depth <= max_depth whose top
/// outputs a Toffoli state with error <= target. Throws InfeasibleTarget.
CostResult optimize_stack(const CostQuery &query);

struct CostCurveRow {
    double target_error = 0;
    std::optional<double> jones;
    std::optional<double> jones_double;
    std::optional<double> triortho;
    std::optional<int> k_star;
};

/// 1e-6, 1e-7, ..., 1e-20.
std::vector<double> default_target_grid();

/// One row per target. "jones" excludes the triorthogonal and double
/// families; "jones_double" needs a menu entry of family jones_double on top;
/// "triortho" forces the triorthogonal family on top.
std::vector<CostCurveRow> cost_curve(const CostQuery &base, const std::vector<double> &targets,
                                     unsigned threads = 1);
std::string cost_curve_csv(const std::vector<CostCurveRow> &rows);

/// Menu JSON: a list of {name, inputs_per_output, error_poly, success_poly,
/// kind[, family, k, input_family]} objects. "kind" is "T->T", "T->Toffoli" or "Toffoli->Toffoli" (CCZ
/// is accepted for Toffoli). An entry {"family": "bravyi_haah_t" |
/// "triorthogonal", "k": [..]} expands to the built-in members.
std::vector<ProtocolSpec> parse_menu_json(const std::string &text);

}  // namespace triortho

#endif
