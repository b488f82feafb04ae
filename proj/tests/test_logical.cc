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
#include <set>

#include "doctest.h"
#include "json.hpp"
#include "oracles.h"
#include "triortho/logical.h"

using namespace triortho;

namespace {

const SteaneProcedure &procedure() {
    static const SteaneProcedure p(build_code(builtin_15_1_3()));
    return p;
}

SparseState one_qubit(Amplitude a0, Amplitude a1) {
    return SparseState::from_terms(1, {{BitVector::from_string("0"), a0}, {BitVector::from_string("1"), a1}});
}

std::vector<SparseState> hadamard_inputs() {
    const double r = 1 / std::sqrt(2.0);
    return {one_qubit(1, 0), one_qubit(0, 1), one_qubit(r, r), one_qubit(r, -r), one_qubit(0.6, Amplitude(0, 0.8))};
}

bool gauge_restored(const SparseState &s, const TriorthogonalCode &code) {
    for (const auto &gp : code.gauge_pairs) {
        if (std::abs(s.z_expectation(gp.z_part) - 1) > 1e-10) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("fault text round trip") {
    for (const auto &f : enumerate_fault_sites(15, true)) {
        CHECK(parse_fault_spec(f.str()) == f);
    }
    CHECK(parse_fault_spec("X@cnot_data[3]").str() == "X@cnot_data[3]");
    CHECK_THROWS_AS(parse_fault_spec("Y@cnot_data[3]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fault_spec("X@nowhere[3]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fault_spec("X@cnot_data[]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fault_spec("X@cnot_data[3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fault_spec("FLIP@cnot_data[3]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fault_spec("X@measurement[3]"), std::invalid_argument);
}

TEST_CASE("fault site enumeration") {
    auto x_only = enumerate_fault_sites(15, false);
    CHECK(x_only.size() == 6 * 15 + 15);
    auto with_z = enumerate_fault_sites(15, true);
    CHECK(with_z.size() == 12 * 15 + 15);
    std::set<std::string> names;
    for (const auto &f : with_z) names.insert(f.str());
    CHECK(names.size() == with_z.size());
}

TEST_CASE("syndrome table for the 15-qubit checks") {
    const auto &code = procedure().code();
    SyndromeTable t(code.g0_basis, 1);
    CHECK(t.size() == 16);
    CHECK(t.lookup(BitVector(4)) == BitVector(15));
    for (size_t q = 0; q < 15; q++) {
        auto e = BitVector::unit(15, q);
        auto found = t.lookup(code.g0_basis.syndrome(e));
        REQUIRE(found);
        CHECK(*found == e);
    }
    // Two disjoint checks: syndrome 11 needs weight 2, above the table limit.
    SyndromeTable small(BitMatrix::from_strings({"1100", "0011"}), 1);
    CHECK_FALSE(small.lookup(BitVector::from_string("11")).has_value());
    CHECK(small.lookup(BitVector::from_string("10")) == BitVector::from_string("1000"));
}

TEST_CASE("steane report JSON has exactly the five fields") {
    SteaneReport r;
    r.raw_outcomes = BitVector::from_string("101");
    r.x_syndrome = BitVector::from_string("01");
    r.gauge_parities = BitVector::from_string("1");
    r.applied_correction = BitVector::from_string("000");
    auto text = r.to_json();
    CHECK(text.find('\n') == std::string::npos);
    auto j = nlohmann::json::parse(text);
    CHECK(j.size() == 5);
    CHECK(j["raw_outcomes"] == "101");
    CHECK(j["x_syndrome"] == "01");
    CHECK(j["gauge_parities"] == "1");
    CHECK(j["applied_correction"] == "000");
    CHECK(j["decode_success"] == true);
}

TEST_CASE("ideal image is the encoded Hadamard of the logical state") {
    const auto &code = procedure().code();
    const double r = 1 / std::sqrt(2.0);
    auto zero = encode(code, one_qubit(1, 0));
    CHECK(states_equal_up_to_global_phase(procedure().ideal_hadamard_image(zero), encode(code, one_qubit(r, r)), 1e-12));
    auto one = encode(code, one_qubit(0, 1));
    CHECK(states_equal_up_to_global_phase(procedure().ideal_hadamard_image(one), encode(code, one_qubit(r, -r)), 1e-12));
}

TEST_CASE("logical Hadamard matches the ideal image for every input and several seeds") {
    const auto &code = procedure().code();
    for (const auto &in : hadamard_inputs()) {
        auto data = encode(code, in);
        auto ideal = procedure().ideal_hadamard_image(data);
        for (uint64_t seed = 0; seed < 5; seed++) {
            auto rnd = Randomness::seeded(seed);
            auto out = procedure().logical_hadamard(data, {}, rnd);
            CHECK(out.report.decode_success);
            CHECK(out.report.x_syndrome.is_zero());
            CHECK(states_equal_up_to_global_phase(out.state, ideal, 1e-10));
            CHECK(gauge_restored(out.state, code));
        }
    }
}

TEST_CASE("transversal H alone leaves the gauge scrambled") {
    const auto &code = procedure().code();
    auto data = encode(code, one_qubit(1, 0));
    for (size_t q = 0; q < code.n; q++) data.apply(Gate::H, {q});
    CHECK_FALSE(gauge_restored(data, code));
}

TEST_CASE("single data X faults are corrected") {
    const auto &code = procedure().code();
    auto data = encode(code, one_qubit(0.6, Amplitude(0, 0.8)));
    auto ideal = procedure().ideal_hadamard_image(data);
    for (size_t q = 0; q < code.n; q++) {
        auto rnd = Randomness::seeded(q);
        auto out = procedure().logical_hadamard(data, {{FaultLocation::DataAfterH, FaultPauli::X, q}}, rnd);
        CHECK(out.report.applied_correction.weight() == 1);
        CHECK(out.report.applied_correction.get(q));
        CHECK(states_equal_up_to_global_phase(out.state, ideal, 1e-10));
    }
}

TEST_CASE("steane X correction on a code state is the identity") {
    const auto &code = procedure().code();
    auto data = encode(code, one_qubit(0.6, Amplitude(0, 0.8)));
    auto rnd = Randomness::seeded(11);
    auto out = procedure().steane_x_correct(data, {}, rnd);
    CHECK(states_equal_up_to_global_phase(out.state, data, 1e-10));
    auto rnd2 = Randomness::seeded(11);
    auto free_fn = steane_x_correct(data, code, {}, rnd2);
    CHECK(free_fn.report.raw_outcomes == out.report.raw_outcomes);
}

TEST_CASE("ideal Z correction removes a single Z") {
    const auto &code = procedure().code();
    auto data = encode(code, one_qubit(0.6, Amplitude(0, 0.8)));
    auto hit = data;
    hit.apply(Gate::Z, {4});
    auto z = procedure().ideal_z_correct(hit);
    CHECK(z == BitVector::unit(15, 4));
    CHECK(states_equal_up_to_global_phase(hit, data, 1e-12));
    CHECK(procedure().reduced_weight(code.g0_basis.row(0) ^ BitVector::unit(15, 2)) == 1);
}

TEST_CASE("weight-1 sweep over X faults and flips has no counterexamples") {
    auto rep = fault_tolerance_sweep(procedure().code(), {});
    CHECK(rep.fault_sets_checked == enumerate_fault_sites(15, false).size() + 1);
    CHECK(rep.counterexamples.empty());
}

TEST_CASE("a sweep flags a deliberately weak code") {
    // Distance-1 code: a single X fault on an unprotected qubit flips the logical.
    auto r = search_triorthogonal({8, 1, 3, 100, 1, false});
    REQUIRE(r.matrix);
    auto code = build_code(*r.matrix);
    fill_distances(code);
    REQUIRE(*code.distance() == 1);
    auto rep = fault_tolerance_sweep(code, {1, false, {1}, 0});
    CHECK_FALSE(rep.counterexamples.empty());
}

TEST_CASE("Toffoli resource state") {
    auto t = toffoli_resource_state();
    CHECK(t.support_size() == 4);
    for (const char *s : {"000", "100", "010", "111"}) {
        CHECK(std::abs(t.amplitude(BitVector::from_string(s)) - Amplitude(0.5)) < 1e-15);
    }
}

TEST_CASE("CCZ by teleportation through a Toffoli state, all outcome branches") {
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> g;
    for (int t = 0; t < 20; t++) {
        oracle::Dense d(3);
        std::vector<std::pair<BitVector, Amplitude>> terms;
        for (size_t i = 0; i < 8; i++) {
            d.a[i] = {g(rng), g(rng)};
        }
        double norm = std::sqrt(d.norm2());
        for (size_t i = 0; i < 8; i++) {
            d.a[i] /= norm;
            terms.push_back({BitVector::from_word(i, 3), d.a[i]});
        }
        auto input = SparseState::from_terms(3, terms);
        d.ccz(0, 1, 2);
        for (int m = 0; m < 8; m++) {
            auto forced = Randomness::forced({bool(m & 1), bool(m & 2), bool(m & 4)});
            auto out = ccz_via_toffoli_state(input, toffoli_resource_state(), forced);
            double diff = 0;
            // Global phase is fixed by the first nonzero amplitude.
            Amplitude ratio = 0;
            for (size_t i = 0; i < 8; i++) {
                auto a = out.amplitude(BitVector::from_word(i, 3));
                if (ratio == Amplitude(0) && std::abs(d.a[i]) > 1e-6) ratio = a / d.a[i];
            }
            for (size_t i = 0; i < 8; i++) {
                diff = std::max(diff, std::abs(out.amplitude(BitVector::from_word(i, 3)) - ratio * d.a[i]));
            }
            CHECK(diff < 1e-12);
        }
    }
    auto rnd = Randomness::seeded(1);
    CHECK_THROWS_WITH_AS(ccz_via_toffoli_state(SparseState(3), SparseState(3), rnd),
                         doctest::Contains("malformed resource"), std::invalid_argument);
}
