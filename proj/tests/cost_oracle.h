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

#ifndef TRIORTHO_TESTS_COST_ORACLE_H
#define TRIORTHO_TESTS_COST_ORACLE_H

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "triortho/cost.h"

namespace cost_oracle {

using namespace triortho;

// Every stack of length 1..depth, evaluated with its own arithmetic.
inline std::optional<double> brute_force(const std::vector<ProtocolSpec> &menu, double p0, double target, int depth,
                                         const std::optional<std::string> &top = std::nullopt) {
    std::optional<double> best;
    std::vector<size_t> idx;
    std::function<void()> rec = [&] {
        if (!idx.empty()) {
            bool ok = true;
            StateKind kind = StateKind::T;
            double cost = 1, err = p0;
            const ProtocolSpec *below = nullptr;
            for (auto i : idx) {
                const auto &p = menu[i];
                if (p.input_kind != kind || (!p.input_family.empty() && (!below || below->family != p.input_family))) {
                    ok = false;
                    break;
                }
                double s = 0, e = 0;
                for (auto [c, d] : p.success_poly.terms) s += c * std::pow(err, d);
                for (auto [c, d] : p.error_poly.terms) e += c * std::pow(err, d);
                if (s <= 0) {
                    ok = false;
                    break;
                }
                cost = cost * p.inputs_per_output / s;
                err = std::clamp(e, 0.0, 1.0);
                kind = p.output_kind;
                below = &p;
            }
            if (ok && kind == StateKind::Toffoli && err <= target && (!top || below->family == *top)) {
                if (!best || cost < *best) best = cost;
            }
        }
        if (static_cast<int>(idx.size()) == depth) return;
        for (size_t i = 0; i < menu.size(); i++) {
            idx.push_back(i);
            rec();
            idx.pop_back();
        }
    };
    rec();
    return best;
}

inline std::optional<double> optimize_or_none(const CostQuery &q) {
    try {
        return optimize_stack(q).expected_t_count;
    } catch (const InfeasibleTarget &) {
        return std::nullopt;
    }
}

inline ProtocolSpec random_protocol(std::mt19937_64 &rng, int id) {
    std::uniform_real_distribution<double> u(0, 1);
    ProtocolSpec p;
    p.name = "p" + std::to_string(id);
    p.family = p.name;
    p.inputs_per_output = 1 + 15 * u(rng);
    int degree = 2 + rng() % 2;
    p.error_poly = Polynomial::monomial(1 + 60 * u(rng), degree);
    p.success_poly = Polynomial::one_minus(20 * u(rng));
    // Mostly T -> T, sometimes a Toffoli producer or a Toffoli -> Toffoli level.
    int kind = rng() % 3;
    p.input_kind = kind == 2 ? StateKind::Toffoli : StateKind::T;
    p.output_kind = kind == 0 ? StateKind::T : StateKind::Toffoli;
    return p;
}

inline std::vector<ProtocolSpec> random_menu(std::mt19937_64 &rng, size_t size) {
    std::vector<ProtocolSpec> menu;
    for (size_t i = 0; i < size; i++) menu.push_back(random_protocol(rng, static_cast<int>(i)));
    // Keep at least one way to reach a Toffoli state.
    if (std::none_of(menu.begin(), menu.end(),
                     [](const auto &p) { return p.input_kind == StateKind::T && p.output_kind == StateKind::Toffoli; })) {
        menu.back().input_kind = StateKind::T;
        menu.back().output_kind = StateKind::Toffoli;
    }
    return menu;
}


struct MenuComparison {
    int menus = 0;
    int feasible = 0;
    int mismatches = 0;
};

// Random menus of 1..3 protocols at depth 1..3. A mismatch is a feasibility
// disagreement or a relative cost difference above 1e-12.
inline MenuComparison compare_random_menus(uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    MenuComparison out;
    for (int t = 0; t < count; t++) {
        auto menu = random_menu(rng, 1 + rng() % 3);
        CostQuery q;
        q.menu = menu;
        q.max_depth = 1 + rng() % 3;
        q.physical_t_error = std::pow(10.0, -2.0 - static_cast<double>(rng() % 2));
        q.target_error = std::pow(10.0, -4.0 - static_cast<double>(rng() % 6));
        auto expect = brute_force(menu, q.physical_t_error, q.target_error, q.max_depth);
        auto got = optimize_or_none(q);
        out.menus++;
        if (expect.has_value() != got.has_value()) {
            out.mismatches++;
        } else if (expect) {
            out.feasible++;
            if (std::abs(*got - *expect) > 1e-12 * *expect) out.mismatches++;
        }
    }
    return out;
}

}  // namespace cost_oracle

#endif
