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

#include "cost_oracle.h"
#include "doctest.h"
#include "triortho/cost.h"

using namespace triortho;
using namespace cost_oracle;

TEST_CASE("protocol constructors") {
    auto t100 = triorthogonal_top_level(100);
    CHECK(t100.inputs_per_output == doctest::Approx(3.08));
    // 7 * 301 = 2107.
    CHECK(t100.error_poly(0.07) == doctest::Approx(2107 * 0.01 * 0.01));
    auto t2 = triorthogonal_top_level(2);
    CHECK(t2.error_poly(0.03) == doctest::Approx(0.03 * 0.03));
    CHECK(t2.inputs_per_output == doctest::Approx(7.0));
    CHECK(t100.error_poly(0) == 0);
    CHECK(t100.success_poly(0) == 1);
    CHECK(t100.input_family == "jones");
    CHECK_THROWS_AS(triorthogonal_top_level(3), std::invalid_argument);
    CHECK_THROWS_AS(triorthogonal_top_level(0), std::invalid_argument);
    CHECK_THROWS_AS(triorthogonal_top_level(102), std::invalid_argument);
    CHECK(jones_toffoli().error_poly(0.01) == doctest::Approx(28e-4));
    CHECK(jones_toffoli().inputs_per_output == 8);
    CHECK(fifteen_to_one().error_poly(0.01) == doctest::Approx(35e-6));
    CHECK(bravyi_haah_t(14).error_poly(0.01) == doctest::Approx(43e-4));
    for (const auto &p : default_menu()) CHECK_NOTHROW(p.validate());
    ProtocolSpec broken = jones_toffoli();
    broken.error_poly = Polynomial::one_minus(1);
    CHECK_THROWS(broken.validate());
}

TEST_CASE("headline costs at target 1e-13 and physical error 1e-2") {
    CostQuery q;
    q.menu = default_t_menu();
    auto jones = optimize_stack(q);
    CHECK(std::abs(jones.expected_t_count / 540.16 - 1) < 0.15);
    CHECK(jones.achieved_error <= 1e-13);
    CHECK(jones.stack.back().protocol.family == "jones");

    q.menu = default_menu();
    q.top_family = "triorthogonal";
    auto tri = optimize_stack(q);
    CHECK(std::abs(tri.expected_t_count / 428.7 - 1) < 0.15);
    CHECK(tri.top_k() == 100);
    CHECK(tri.stack[tri.stack.size() - 2].protocol.family == "jones");
    CHECK(std::abs(tri.expected_t_count / jones.expected_t_count - 428.7 / 540.16) < 0.08);
}

TEST_CASE("boundary: target at the physical error needs only Jones") {
    CostQuery q;
    q.menu = default_t_menu();
    q.target_error = 0.0099;
    auto r = optimize_stack(q);
    REQUIRE(r.stack.size() == 1);
    CHECK(r.t_distillation_depth() == 0);
    CHECK(r.expected_t_count == doctest::Approx(8 / (1 - 8 * 0.01)));
    for (auto &p : q.menu) p.success_poly = Polynomial::monomial(1, 0);
    CHECK(optimize_stack(q).expected_t_count == 8);
}

TEST_CASE("infeasible targets throw") {
    CostQuery q;
    q.menu = {jones_toffoli()};
    q.target_error = 1e-6;
    CHECK_THROWS_AS(optimize_stack(q), InfeasibleTarget);
    q.menu = {};
    CHECK_THROWS_AS(optimize_stack(q), std::invalid_argument);
    q.menu = default_menu();
    q.target_error = 0.5;
    q.physical_t_error = 2;
    CHECK_THROWS_AS(optimize_stack(q), std::invalid_argument);
}

TEST_CASE("optimizer equals brute force on 50 random menus") {
    auto r = compare_random_menus(0xB0B, 50);
    CHECK(r.menus == 50);
    CHECK(r.mismatches == 0);
    CHECK(r.feasible >= 10);
}

TEST_CASE("optimizer equals brute force on the default menu with family constraints") {
    std::vector<ProtocolSpec> menu{fifteen_to_one(), bravyi_haah_t(8), jones_toffoli(), triorthogonal_top_level(20),
                                   triorthogonal_top_level(60)};
    for (double target : {1e-6, 1e-9, 1e-12, 1e-15}) {
        CostQuery q;
        q.menu = menu;
        q.target_error = target;
        auto expect = brute_force(menu, 1e-2, target, 4);
        REQUIRE(expect);
        CHECK(optimize_stack(q).expected_t_count == doctest::Approx(*expect).epsilon(1e-12));
        q.top_family = "triorthogonal";
        auto tri = brute_force(menu, 1e-2, target, 4, std::string("triorthogonal"));
        REQUIRE(tri);
        CHECK(optimize_stack(q).expected_t_count == doctest::Approx(*tri).epsilon(1e-12));
    }
}

TEST_CASE("dominance, soundness and success accounting") {
    std::mt19937_64 rng(31337);
    for (int t = 0; t < 60; t++) {
        auto menu = random_menu(rng, 2);
        CostQuery q;
        q.menu = menu;
        q.max_depth = 3;
        q.target_error = std::pow(10.0, -4.0 - static_cast<double>(rng() % 8));
        auto base = optimize_or_none(q);
        if (!base) continue;

        auto r = optimize_stack(q);
        std::vector<ProtocolSpec> chosen;
        for (const auto &l : r.stack) chosen.push_back(l.protocol);
        auto again = evaluate_stack(chosen, q.physical_t_error);
        REQUIRE(again);
        CHECK(again->achieved_error == r.achieved_error);
        CHECK(again->expected_t_count == r.expected_t_count);
        CHECK(r.achieved_error <= q.target_error);
        CHECK(r.expected_t_count >= 1);

        auto bigger = q;
        bigger.menu.push_back(random_protocol(rng, 9));
        auto more = optimize_or_none(bigger);
        REQUIRE(more);
        CHECK(*more <= *base);

        auto lossless = q;
        for (auto &p : lossless.menu) p.success_poly = Polynomial::monomial(1, 0);
        auto free_success = optimize_or_none(lossless);
        REQUIRE(free_success);
        CHECK(*free_success <= *base);
    }
}

TEST_CASE("evaluate_stack rejects stacks that do not chain") {
    CHECK_FALSE(evaluate_stack({triorthogonal_top_level(10)}, 1e-2));
    CHECK_FALSE(evaluate_stack({fifteen_to_one(), triorthogonal_top_level(10)}, 1e-2));
    CHECK(evaluate_stack({jones_toffoli(), triorthogonal_top_level(10)}, 1e-2));
    CHECK_FALSE(evaluate_stack({jones_toffoli(), triorthogonal_top_level(10), triorthogonal_top_level(10)}, 1e-2));
}

TEST_CASE("cost curve") {
    CostQuery q;
    q.menu = default_menu();
    auto grid = default_target_grid();
    CHECK(grid.size() == 15);
    CHECK(grid.front() == doctest::Approx(1e-6));
    CHECK(grid.back() == doctest::Approx(1e-20));
    auto rows = cost_curve(q, grid, 4);
    REQUIRE(rows.size() == grid.size());
    for (size_t i = 0; i < rows.size(); i++) {
        REQUIRE(rows[i].jones);
        REQUIRE(rows[i].triortho);
        CHECK_FALSE(rows[i].jones_double);
        // Single-point optimization gives the same number.
        CostQuery single = q;
        single.target_error = grid[i];
        single.menu = default_t_menu();
        CHECK(*rows[i].jones == optimize_stack(single).expected_t_count);
        if (i) {
            // Tighter target, never cheaper.
            CHECK(*rows[i].jones >= *rows[i - 1].jones);
            CHECK(*rows[i].triortho >= *rows[i - 1].triortho);
        }
        if (grid[i] <= 1.0001e-13) CHECK(*rows[i].triortho <= *rows[i].jones);
    }
    auto csv = cost_curve_csv(rows);
    CHECK(csv.rfind("target_error,jones,jones_double,triortho_k_opt,k_star\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 16);
    CHECK(csv.find(",,") != std::string::npos);
    CHECK(cost_curve(q, grid, 1)[7].triortho == rows[7].triortho);
}

TEST_CASE("cost curve with a user-supplied double-detecting protocol") {
    CostQuery q;
    q.menu = default_menu();
    ProtocolSpec dbl{"jones-double", "jones_double", 0, 16.0, Polynomial::monomial(400, 3),
                     Polynomial::one_minus(16), StateKind::T, StateKind::Toffoli, ""};
    q.menu.push_back(dbl);
    auto rows = cost_curve(q, {1e-8, 1e-12}, 1);
    CHECK(rows[0].jones_double);
    CHECK(rows[1].jones_double);
}

TEST_CASE("menu JSON") {
    auto menu = parse_menu_json(R"([
        {"family": "fifteen_to_one"},
        {"family": "bravyi_haah_t", "k": [2, 4]},
        {"name": "custom", "inputs_per_output": 8, "error_poly": [[28, 2]],
         "success_poly": [[1, 0], [-8, 1]], "kind": "T->CCZ"},
        {"family": "triorthogonal", "k": 100}
    ])");
    REQUIRE(menu.size() == 5);
    CHECK(menu[0].name == "15-to-1");
    CHECK(menu[2].k == 4);
    CHECK(menu[3].name == "custom");
    CHECK(menu[3].output_kind == StateKind::Toffoli);
    CHECK(menu[3].error_poly(0.01) == doctest::Approx(28e-4));
    CHECK(menu[4].k == 100);
    CHECK_THROWS_AS(parse_menu_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(parse_menu_json("[{\"family\": \"nope\"}]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_menu_json(R"([{"name": "x", "inputs_per_output": 1, "error_poly": [[1, 0]], "kind": "T->T"}])"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_menu_json(R"([{"name": "x", "inputs_per_output": 1, "error_poly": [[1, 2]], "kind": "T"}])"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_menu_json("not json"), std::invalid_argument);
}
