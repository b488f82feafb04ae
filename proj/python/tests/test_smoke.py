# Copyright 2026 The Triortho Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import random

import pytest

import triortho


@pytest.fixture(scope="module")
def code15():
    return triortho.build_code(triortho.TriorthogonalMatrix.builtin_15_1_3())


def test_builtin_parameters(code15):
    m = triortho.TriorthogonalMatrix.builtin_15_1_3()
    assert len(m.rows) == 5 and m.cols == 15
    assert triortho.check_orthogonality(m.rows, 3) == (True, [])
    assert triortho.check_orthogonality(m.rows, 4) == (False, [0, 1, 2, 3])
    assert (code15.n, code15.k) == (15, 1)
    assert len(code15.x_stabilizers) == 4
    assert len(code15.z_stabilizers) == 10
    assert len(code15.gauge_pairs) == 6
    assert (code15.d_x, code15.d_z, code15.distance) == (7, 3, 3)


def test_bad_matrix_is_rejected():
    with pytest.raises(ValueError, match=r"\(0,1\)"):
        triortho.TriorthogonalMatrix(["1100", "1010", "1001"])


def test_rank_against_python_elimination():
    rng = random.Random(5)

    def py_rank(rows):
        vals = [int(r[::-1], 2) for r in rows]
        rank = 0
        for bit in range(len(rows[0])):
            pivot = next((i for i in range(rank, len(vals)) if vals[i] >> bit & 1), None)
            if pivot is None:
                continue
            vals[rank], vals[pivot] = vals[pivot], vals[rank]
            for i in range(len(vals)):
                if i != rank and vals[i] >> bit & 1:
                    vals[i] ^= vals[rank]
            rank += 1
        return rank

    for _ in range(50):
        rows = ["".join(rng.choice("01") for _ in range(12)) for _ in range(rng.randint(1, 8))]
        assert triortho.rank(rows) == py_rank(rows)


def test_ccz_phases(code15):
    results = triortho.verify_ccz(code15)
    assert len(results) == 8
    for r in results:
        a, b, c = (lab[0] for lab in r["labels"])
        assert r["uniform"]
        assert r["phase"] == (-1 if a and b and c else 1)
        assert r["terms"] == 4096


@pytest.mark.parametrize(
    "alpha,beta",
    [(1, 0), (0, 1), (2**-0.5, 2**-0.5), (2**-0.5, -(2**-0.5)), (0.6, 0.8j)],
)
def test_logical_hadamard(code15, alpha, beta):
    for seed in range(3):
        out = triortho.logical_hadamard(code15, alpha, beta, seed)
        assert out["matches_ideal"] and out["gauge_restored"]
        assert out["x_syndrome"] == "0000"


def test_single_fault_is_corrected(code15):
    out = triortho.logical_hadamard(code15, 0.6, 0.8j, 1, ["X@data_after_h[3]"])
    assert out["matches_ideal"]
    assert out["applied_correction"] == "000100000000000"


def test_distillation_distance_two():
    m = triortho.search(16, 2, 4, budget=20000, seed=1, cover=True)
    assert m is not None
    for site, cls in itertools.product(range(m.cols), range(1, 8)):
        assert not triortho.propagate(m, [(site, cls)])["accepted"]
    rep = triortho.enumerate_order2(m, 0.01)
    assert rep["order1_total"] == 0
    assert rep["identical_class_pairs"] == 7 * rep["harmful_site_pairs"]
    one = triortho.monte_carlo(m, 0.02, 20000, seed=9, threads=1)
    four = triortho.monte_carlo(m, 0.02, 20000, seed=9, threads=4)
    assert one == four
    assert one["acceptance_rate"] >= 1 - m.cols * 0.02


def test_sparse_matches_classical():
    m = triortho.search(10, 1, 3, seed=1)
    code = triortho.build_code(m, distances=False)
    rng = random.Random(3)
    for _ in range(10):
        faults = [(rng.randrange(10), rng.randint(1, 7)) for _ in range(rng.randint(0, 3))]
        accepted, labels = triortho.simulate_distillation_sparse(code, faults)
        classical = triortho.propagate(m, faults)
        assert accepted == classical["accepted"]


def test_cost_headline():
    jones = triortho.optimize_stack(menu="t")
    tri = triortho.optimize_stack(top_family="triorthogonal")
    assert abs(jones["expected_t_count"] / 540.16 - 1) < 0.15
    assert abs(tri["expected_t_count"] / 428.7 - 1) < 0.15
    assert tri["top_k"] == 100
    assert tri["achieved_error"] <= 1e-13
    with pytest.raises(triortho.InfeasibleTarget):
        triortho.optimize_stack(target_error=1e-40, max_depth=1)


def test_cost_curve_csv():
    csv = triortho.cost_curve_csv([1e-8, 1e-12])
    lines = csv.strip().split("\n")
    assert lines[0] == "target_error,jones,jones_double,triortho_k_opt,k_star"
    assert len(lines) == 3
