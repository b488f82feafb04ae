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

#include <random>

#include "doctest.h"
#include "oracles.h"
#include "triortho/codes.h"

using namespace triortho;

TEST_CASE("built-in 15-qubit matrix is exactly level 3") {
    auto tm = builtin_15_1_3();
    const auto &g = tm.matrix();
    CHECK(g.rows() == 5);
    CHECK(g.cols() == 15);
    CHECK(check_orthogonality(g, 3).pass);
    auto v4 = check_orthogonality(g, 4);
    CHECK_FALSE(v4.pass);
    // The four even rows multiply to a single column.
    CHECK(v4.violation == std::vector<size_t>{0, 1, 2, 3});
    CHECK(orthogonality_level(g, 5) == 3);
    auto bad = oracle::orthogonality_violations(oracle::to_mat(g), 4);
    REQUIRE_FALSE(bad.empty());
    CHECK(bad.front() == v4.violation);
}

TEST_CASE("orthogonality checker matches the subset oracle") {
    std::mt19937_64 rng(99);
    std::bernoulli_distribution bit(0.5);
    int failing = 0;
    for (int t = 0; t < 300; t++) {
        size_t rows = 2 + rng() % 4, cols = 1 + rng() % 9;
        BitMatrix m(cols);
        for (size_t i = 0; i < rows; i++) {
            BitVector v(cols);
            for (size_t j = 0; j < cols; j++) v.set(j, bit(rng));
            m.append_row(v);
        }
        for (size_t level : {2, 3}) {
            auto v = check_orthogonality(m, level);
            auto bad = oracle::orthogonality_violations(oracle::to_mat(m), level);
            CHECK(v.pass == bad.empty());
            if (!bad.empty()) {
                failing++;
                CHECK(v.violation == bad.front());
            }
        }
    }
    CHECK(failing > 50);
    CHECK_THROWS_AS(check_orthogonality(BitMatrix::identity(3), 1), std::invalid_argument);
}

TEST_CASE("verify names the violating tuple") {
    auto m = BitMatrix::from_strings({"1100", "1010", "1001"});
    CHECK(check_orthogonality(m, 2).violation == std::vector<size_t>{0, 1});
    try {
        TriorthogonalMatrix::verify(m);
        FAIL("expected a throw");
    } catch (const std::invalid_argument &e) {
        CHECK(std::string(e.what()).find("(0,1)") != std::string::npos);
    }
}

TEST_CASE("15-qubit code parameters") {
    auto code = build_code(builtin_15_1_3());
    CHECK(code.n == 15);
    CHECK(code.k == 1);
    CHECK(code.x_stabilizers.rows() == 4);
    CHECK(code.z_stabilizers.rows() == 10);
    CHECK(code.gauge_pairs.size() == 6);
    auto d = distances(code);
    CHECK(d.d_x == 7);
    CHECK(d.d_z == 3);
    CHECK(d.distance() == 3);
    fill_distances(code);
    CHECK(code.distance() == 3);
}

TEST_CASE("distances agree with brute force over all 2^15 vectors") {
    auto code = build_code(builtin_15_1_3());
    auto g = oracle::to_mat(code.generator);
    auto g0 = oracle::to_mat(code.x_stabilizers);
    int dx = oracle::min_weight_where(15, [&](const oracle::Row &v) {
        return oracle::in_span(g, v) && !oracle::in_span(g0, v);
    });
    auto orth_to = [](const oracle::Mat &m, const oracle::Row &v) {
        for (const auto &r : m)
            if (oracle::dot(r, v)) return false;
        return true;
    };
    int dz = oracle::min_weight_where(15, [&](const oracle::Row &v) { return orth_to(g0, v) && !orth_to(g, v); });
    auto d = distances(code);
    CHECK(static_cast<int>(d.d_x) == dx);
    CHECK(static_cast<int>(d.d_z) == dz);
}

TEST_CASE("code structure invariants") {
    auto code = build_code(builtin_15_1_3());
    for (const auto &x : code.x_stabilizers.row_vectors()) {
        CHECK(code.z_stabilizers.syndrome(x).is_zero());
    }
    for (size_t i = 0; i < code.k; i++) {
        CHECK(code.z_stabilizers.syndrome(code.logical_x[i]).is_zero());
        CHECK(code.x_stabilizers.syndrome(code.logical_z[i]).is_zero());
        for (size_t j = 0; j < code.k; j++) {
            CHECK(code.logical_x[i].dot(code.logical_z[j]) == (i == j));
        }
    }
    auto perp = orthogonal_complement(code.generator);
    for (size_t i = 0; i < code.gauge_pairs.size(); i++) {
        const auto &gi = code.gauge_pairs[i];
        CHECK(span_contains(perp, gi.x_part));
        CHECK(span_contains(perp, gi.z_part));
        CHECK_FALSE(span_contains(code.g0_basis, gi.z_part));
        for (size_t j = 0; j < code.gauge_pairs.size(); j++) {
            CHECK(gi.x_part.dot(code.gauge_pairs[j].z_part) == (i == j));
        }
        CHECK_FALSE(gi.x_part.dot(code.logical_z[0]));
    }
    // Either half of the gauge pairs, together with G0, spans the complement of G.
    BitMatrix all = code.g0_basis;
    for (const auto &gp : code.gauge_pairs) all.append_row(gp.x_part);
    CHECK(same_row_space(all, perp));
    BitMatrix zs = code.g0_basis;
    for (const auto &gp : code.gauge_pairs) zs.append_row(gp.z_part);
    CHECK(same_row_space(zs, perp));
}

TEST_CASE("build_code rejects degenerate matrices") {
    auto even_only = TriorthogonalMatrix::verify(BitMatrix::from_strings({"1111", "1100"}));
    CHECK_THROWS_AS(build_code(even_only), std::invalid_argument);
}

TEST_CASE("searched matrices satisfy the postcondition") {
    for (uint64_t seed = 1; seed <= 5; seed++) {
        SearchOptions opt{10, 1, 3, 1000, seed, false};
        auto r = search_triorthogonal(opt);
        REQUIRE(r.matrix);
        const auto &m = r.matrix->matrix();
        CHECK(oracle::orthogonality_violations(oracle::to_mat(m), 3).empty());
        CHECK(oracle::rank(oracle::to_mat(m)) == 4);
        CHECK(r.matrix->odd_rows().size() == 1);
        CHECK(r.matrix->even_rows().size() == 3);
        // Same seed, same matrix.
        CHECK(search_triorthogonal(opt).matrix->matrix() == m);
    }
}

TEST_CASE("covering search yields distance-2 codes") {
    SearchOptions opt{16, 2, 4, 20000, 1, true};
    auto r = search_triorthogonal(opt);
    REQUIRE(r.matrix);
    auto code = build_code(*r.matrix);
    fill_distances(code);
    CHECK(*code.d_z >= 2);
    CHECK(*code.distance() >= 2);
    auto text = format_search_result(*r.matrix, opt, r.trials_used);
    CHECK(text.find("seed=1") != std::string::npos);
    CHECK(parse_matrix(text) == r.matrix->matrix());
}

TEST_CASE("search argument checks") {
    CHECK_THROWS_AS(search_triorthogonal({40, 1, 3, 10, 0, false}), std::invalid_argument);
    CHECK_THROWS_AS(search_triorthogonal({10, 0, 3, 10, 0, false}), std::invalid_argument);
    CHECK_THROWS_AS(search_triorthogonal({4, 2, 3, 10, 0, false}), std::invalid_argument);
}

TEST_CASE("distance search respects the enumeration guard") {
    BitMatrix big = BitMatrix::identity(30);
    CHECK_THROWS_AS(min_weight_outside(big, BitMatrix(30)), EnumerationGuardError);
}
