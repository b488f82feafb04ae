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

#include "triortho/cost.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace triortho {

double Polynomial::operator()(double p) const {
    double v = 0;
    for (const auto &[c, d] : terms) {
        v += c * std::pow(p, d);
    }
    return v;
}

const char *kind_name(StateKind kind) { return kind == StateKind::T ? "T" : "Toffoli"; }

StateKind parse_kind(const std::string &name) {
    if (name == "T") {
        return StateKind::T;
    }
    if (name == "Toffoli" || name == "CCZ" || name == "toffoli" || name == "ccz") {
        return StateKind::Toffoli;
    }
    throw std::invalid_argument("unknown state kind '" + name + "'");
}

void ProtocolSpec::validate() const {
    if (!(inputs_per_output > 0)) {
        throw std::invalid_argument(name + ": inputs_per_output must be positive");
    }
    if (error_poly(0) != 0) {
        throw std::invalid_argument(name + ": output error at p=0 must be 0");
    }
    if (success_poly(0) != 1) {
        throw std::invalid_argument(name + ": success probability at p=0 must be 1");
    }
}

ProtocolSpec fifteen_to_one() {
    return {"15-to-1", "fifteen_to_one", 0, 15.0, Polynomial::monomial(35, 3), Polynomial::one_minus(15),
            StateKind::T, StateKind::T, ""};
}

namespace {

void check_even_k(int k) {
    if (k < 2 || k > 100 || k % 2 != 0) {
        throw std::invalid_argument("k must be even with 2 <= k <= 100, got " + std::to_string(k));
    }
}

}  // namespace

ProtocolSpec bravyi_haah_t(int k) {
    check_even_k(k);
    return {"bh-t-" + std::to_string(k), "bravyi_haah_t", k, (3.0 * k + 8) / k,
            Polynomial::monomial(3.0 * k + 1, 2), Polynomial::one_minus(3.0 * k + 8),
            StateKind::T, StateKind::T, ""};
}

ProtocolSpec jones_toffoli() {
    return {"jones", "jones", 0, 8.0, Polynomial::monomial(28, 2), Polynomial::one_minus(8),
            StateKind::T, StateKind::Toffoli, ""};
}

ProtocolSpec triorthogonal_top_level(int k) {
    check_even_k(k);
    // 7(3k+1)(p/7)^2 with the 1/49 folded in.
    return {"triortho-" + std::to_string(k), "triorthogonal", k, (3.0 * k + 8) / k,
            Polynomial::monomial(7.0 * (3 * k + 1) / 49.0, 2), Polynomial::one_minus(3.0 * k + 8),
            StateKind::Toffoli, StateKind::Toffoli, "jones"};
}

std::vector<ProtocolSpec> default_t_menu() {
    std::vector<ProtocolSpec> menu{fifteen_to_one()};
    for (int k = 2; k <= 100; k += 2) {
        menu.push_back(bravyi_haah_t(k));
    }
    menu.push_back(jones_toffoli());
    return menu;
}

std::vector<ProtocolSpec> default_menu() {
    auto menu = default_t_menu();
    for (int k = 2; k <= 100; k += 2) {
        menu.push_back(triorthogonal_top_level(k));
    }
    return menu;
}

void CostQuery::validate() const {
    if (!(target_error > 0 && target_error < 1)) {
        throw std::invalid_argument("target error must lie in (0, 1)");
    }
    if (!(physical_t_error > 0 && physical_t_error < 1)) {
        throw std::invalid_argument("physical T error must lie in (0, 1)");
    }
    if (max_depth < 1) {
        throw std::invalid_argument("max_depth must be at least 1");
    }
    if (menu.empty()) {
        throw std::invalid_argument("protocol menu is empty");
    }
    for (const auto &p : menu) {
        p.validate();
    }
}

int CostResult::t_distillation_depth() const {
    return static_cast<int>(std::count_if(stack.begin(), stack.end(), [](const StackLevel &l) {
        return l.protocol.output_kind == StateKind::T;
    }));
}

std::string CostResult::describe() const {
    std::string s;
    for (const auto &l : stack) {
        if (!s.empty()) {
            s += " -> ";
        }
        s += l.protocol.name;
    }
    return s;
}

namespace {

struct Step {
    bool ok;
    double cost;
    double error;
    double success;
};

// Shared by the optimizer and evaluate_stack so both agree bit for bit.
Step apply_level(const ProtocolSpec &p, double cost, double error) {
    double s = p.success_poly(error);
    if (!(s > 0)) {
        return {false, 0, 0, 0};
    }
    double e = std::min(1.0, std::max(0.0, p.error_poly(error)));
    return {true, cost * p.inputs_per_output / s, e, s};
}

bool chains(const ProtocolSpec &p, StateKind kind, const ProtocolSpec *below) {
    if (p.input_kind != kind) {
        return false;
    }
    return p.input_family.empty() || (below && below->family == p.input_family);
}

bool never_cheapens(const std::vector<ProtocolSpec> &menu) {
    for (const auto &p : menu) {
        if (p.inputs_per_output < 1) {
            return false;
        }
        for (const auto &[c, d] : p.success_poly.terms) {
            if (d == 0 ? c > 1 : c > 0) {
                return false;
            }
        }
    }
    return true;
}

struct Search {
    const CostQuery &q;
    bool prune;
    std::vector<const ProtocolSpec *> path;
    std::vector<const ProtocolSpec *> best_path;
    double best = INFINITY;

    void dfs(StateKind kind, double cost, double error) {
        if (kind == StateKind::Toffoli && !path.empty() && error <= q.target_error &&
            (!q.top_family || path.back()->family == *q.top_family) && cost < best) {
            best = cost;
            best_path = path;
        }
        if (static_cast<int>(path.size()) >= q.max_depth) {
            return;
        }
        for (const auto &p : q.menu) {
            if (!chains(p, kind, path.empty() ? nullptr : path.back())) {
                continue;
            }
            Step s = apply_level(p, cost, error);
            if (!s.ok || (prune && s.cost >= best)) {
                continue;
            }
            path.push_back(&p);
            dfs(p.output_kind, s.cost, s.error);
            path.pop_back();
        }
    }
};

}  // namespace

std::optional<CostResult> evaluate_stack(const std::vector<ProtocolSpec> &stack, double physical_t_error) {
    CostResult r;
    StateKind kind = StateKind::T;
    double cost = 1;
    double error = physical_t_error;
    const ProtocolSpec *below = nullptr;
    for (const auto &p : stack) {
        if (!chains(p, kind, below)) {
            return std::nullopt;
        }
        below = &p;
        Step s = apply_level(p, cost, error);
        if (!s.ok) {
            return std::nullopt;
        }
        r.stack.push_back({p, error, s.error, s.success, s.cost});
        cost = s.cost;
        error = s.error;
        kind = p.output_kind;
    }
    r.expected_t_count = cost;
    r.achieved_error = error;
    return r;
}

CostResult optimize_stack(const CostQuery &query) {
    query.validate();
    Search s{query, never_cheapens(query.menu), {}, {}, INFINITY};
    s.dfs(StateKind::T, 1.0, query.physical_t_error);
    if (s.best_path.empty()) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "no stack of depth <= %d reaches target error %.3g", query.max_depth,
                      query.target_error);
        throw InfeasibleTarget(buf);
    }
    std::vector<ProtocolSpec> stack;
    for (const auto *p : s.best_path) {
        stack.push_back(*p);
    }
    return *evaluate_stack(stack, query.physical_t_error);
}

std::vector<double> default_target_grid() {
    std::vector<double> grid;
    for (int e = 6; e <= 20; e++) {
        grid.push_back(std::pow(10.0, -e));
    }
    return grid;
}

namespace {

std::optional<CostResult> try_optimize(const CostQuery &q) {
    try {
        return optimize_stack(q);
    } catch (const InfeasibleTarget &) {
        return std::nullopt;
    }
}

CostCurveRow curve_row(const CostQuery &base, double target) {
    CostCurveRow row;
    row.target_error = target;
    CostQuery q = base;
    q.target_error = target;

    std::vector<ProtocolSpec> plain;
    bool has_double = false;
    bool has_triortho = false;
    for (const auto &p : base.menu) {
        has_double |= p.family == "jones_double";
        has_triortho |= p.family == "triorthogonal";
        if (p.family != "triorthogonal" && p.family != "jones_double") {
            plain.push_back(p);
        }
    }
    q.top_family.reset();
    q.menu = plain;
    if (auto r = try_optimize(q)) {
        row.jones = r->expected_t_count;
    }
    if (has_double) {
        q.menu.clear();
        for (const auto &p : base.menu) {
            if (p.family != "triorthogonal") {
                q.menu.push_back(p);
            }
        }
        q.top_family = "jones_double";
        if (auto r = try_optimize(q)) {
            row.jones_double = r->expected_t_count;
        }
    }
    if (has_triortho) {
        q.menu = base.menu;
        q.top_family = "triorthogonal";
        if (auto r = try_optimize(q)) {
            row.triortho = r->expected_t_count;
            row.k_star = r->top_k();
        }
    }
    return row;
}

}  // namespace

std::vector<CostCurveRow> cost_curve(const CostQuery &base, const std::vector<double> &targets, unsigned threads) {
    std::vector<CostCurveRow> rows(targets.size());
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(targets.size())));
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; w++) {
        workers.emplace_back([&, w] {
            for (size_t i = w; i < targets.size(); i += threads) {
                rows[i] = curve_row(base, targets[i]);
            }
        });
    }
    for (auto &t : workers) {
        t.join();
    }
    return rows;
}

std::string cost_curve_csv(const std::vector<CostCurveRow> &rows) {
    std::ostringstream out;
    out << "target_error,jones,jones_double,triortho_k_opt,k_star\n";
    auto num = [&](const std::optional<double> &v) {
        if (v) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.6f", *v);
            out << buf;
        }
    };
    for (const auto &r : rows) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.0e", r.target_error);
        out << buf << ',';
        num(r.jones);
        out << ',';
        num(r.jones_double);
        out << ',';
        num(r.triortho);
        out << ',';
        if (r.k_star) {
            out << *r.k_star;
        }
        out << '\n';
    }
    return out.str();
}

namespace {

Polynomial parse_poly(const nlohmann::json &j, const std::string &what) {
    if (!j.is_array()) {
        throw std::invalid_argument(what + " must be a list of [coeff, degree] pairs");
    }
    Polynomial p;
    for (const auto &t : j) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number() || !t[1].is_number_integer()) {
            throw std::invalid_argument(what + " must be a list of [coeff, degree] pairs");
        }
        p.terms.emplace_back(t[0].get<double>(), t[1].get<int>());
    }
    return p;
}

}  // namespace

std::vector<ProtocolSpec> parse_menu_json(const std::string &text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw std::invalid_argument(std::string("menu is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw std::invalid_argument("menu must be a JSON list");
    }
    std::vector<ProtocolSpec> menu;
    for (const auto &e : doc) {
        if (!e.is_object()) {
            throw std::invalid_argument("menu entries must be objects");
        }
        if (e.contains("family") && !e.contains("error_poly")) {
            auto family = e.at("family").get<std::string>();
            std::vector<int> ks;
            if (e.contains("k")) {
                ks = e.at("k").is_array() ? e.at("k").get<std::vector<int>>() : std::vector<int>{e.at("k").get<int>()};
            } else {
                for (int k = 2; k <= 100; k += 2) {
                    ks.push_back(k);
                }
            }
            if (family == "bravyi_haah_t") {
                for (int k : ks) menu.push_back(bravyi_haah_t(k));
            } else if (family == "triorthogonal") {
                for (int k : ks) menu.push_back(triorthogonal_top_level(k));
            } else if (family == "fifteen_to_one") {
                menu.push_back(fifteen_to_one());
            } else if (family == "jones") {
                menu.push_back(jones_toffoli());
            } else {
                throw std::invalid_argument("unknown built-in family '" + family + "'");
            }
            continue;
        }
        ProtocolSpec p;
        try {
            p.name = e.at("name").get<std::string>();
            p.family = e.value("family", p.name);
            p.k = e.value("k", 0);
            p.input_family = e.value("input_family", std::string());
            p.inputs_per_output = e.at("inputs_per_output").get<double>();
            p.error_poly = parse_poly(e.at("error_poly"), "error_poly");
            p.success_poly = e.contains("success_poly") ? parse_poly(e.at("success_poly"), "success_poly")
                                                        : Polynomial::monomial(1, 0);
            auto kind = e.at("kind").get<std::string>();
            auto arrow = kind.find("->");
            if (arrow == std::string::npos) {
                throw std::invalid_argument("kind must look like 'T->Toffoli'");
            }
            p.input_kind = parse_kind(kind.substr(0, arrow));
            p.output_kind = parse_kind(kind.substr(arrow + 2));
        } catch (const nlohmann::json::exception &ex) {
            throw std::invalid_argument(std::string("malformed menu entry: ") + ex.what());
        }
        p.validate();
        menu.push_back(std::move(p));
    }
    return menu;
}

}  // namespace triortho
