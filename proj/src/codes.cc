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

#include "triortho/codes.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>

namespace triortho {

namespace {

bool find_violation(const BitMatrix &g, size_t level, const BitVector &product,
                    std::vector<size_t> &tuple) {
    size_t start = tuple.empty() ? 0 : tuple.back() + 1;
    for (size_t i = start; i < g.rows(); i++) {
        BitVector next = tuple.empty() ? g.row(i) : product & g.row(i);
        tuple.push_back(i);
        if (tuple.size() >= 2 && next.parity()) {
            return true;
        }
        if (tuple.size() < level && find_violation(g, level, next, tuple)) {
            return true;
        }
        tuple.pop_back();
    }
    return false;
}

std::string tuple_str(const std::vector<size_t> &t) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); i++) {
        s += (i ? "," : "") + std::to_string(t[i]);
    }
    return s + ")";
}

}  // namespace

OrthogonalityVerdict check_orthogonality(const BitMatrix &g, size_t level) {
    if (level < 2) {
        throw std::invalid_argument("orthogonality level must be at least 2");
    }
    OrthogonalityVerdict verdict;
    std::vector<size_t> tuple;
    if (find_violation(g, level, BitVector(g.cols()), tuple)) {
        verdict.pass = false;
        verdict.violation = tuple;
    }
    return verdict;
}

size_t orthogonality_level(const BitMatrix &g, size_t max_level) {
    for (size_t h = 2; h <= max_level; h++) {
        if (h > g.rows()) {
            return max_level;
        }
        if (!check_orthogonality(g, h).pass) {
            return h - 1;
        }
    }
    return max_level;
}

TriorthogonalMatrix::TriorthogonalMatrix(BitMatrix g, size_t level) : g_(std::move(g)), level_(level) {
    for (size_t i = 0; i < g_.rows(); i++) {
        (g_.row(i).parity() ? odd_rows_ : even_rows_).push_back(i);
    }
}

TriorthogonalMatrix TriorthogonalMatrix::verify(BitMatrix g, size_t level) {
    auto verdict = check_orthogonality(g, level);
    if (!verdict.pass) {
        throw std::invalid_argument("matrix fails level-" + std::to_string(level) +
                                    " orthogonality at rows " + tuple_str(verdict.violation));
    }
    return TriorthogonalMatrix(std::move(g), level);
}

std::optional<size_t> TriorthogonalCode::distance() const {
    if (!d_x || !d_z) {
        return std::nullopt;
    }
    return std::min(*d_x, *d_z);
}

BitVector TriorthogonalCode::logical_shift(const std::vector<bool> &label) const {
    if (label.size() != k) {
        throw std::invalid_argument("logical label has " + std::to_string(label.size()) +
                                    " bits but the code has k=" + std::to_string(k));
    }
    BitVector shift(n);
    for (size_t j = 0; j < k; j++) {
        if (label[j]) {
            shift ^= logical_x[j];
        }
    }
    return shift;
}

namespace {

/// Inverts a square GF(2) matrix; throws if singular.
BitMatrix invert(const BitMatrix &m) {
    size_t g = m.rows();
    BitMatrix augmented(2 * g);
    for (size_t i = 0; i < g; i++) {
        BitVector row(2 * g);
        for (size_t j = 0; j < g; j++) {
            row.set(j, m.get(i, j));
        }
        row.set(g + i, true);
        augmented.append_row(std::move(row));
    }
    RrefResult r = rref(augmented);
    if (r.rank < g || (g > 0 && r.pivots[g - 1] != g - 1)) {
        throw std::logic_error("gauge Gram matrix is singular");
    }
    BitMatrix inverse(g, g);
    for (size_t i = 0; i < g; i++) {
        for (size_t j = 0; j < g; j++) {
            inverse.row(i).set(j, r.matrix.get(i, g + j));
        }
    }
    return inverse;
}

}  // namespace

TriorthogonalCode build_code(const TriorthogonalMatrix &tm) {
    if (tm.level() < 2) {
        throw std::invalid_argument("build_code needs a matrix verified to at least level 2");
    }
    const BitMatrix &g = tm.matrix();
    TriorthogonalCode code;
    code.n = g.cols();
    code.k = tm.odd_rows().size();
    code.level = tm.level();
    if (code.k == 0) {
        throw std::invalid_argument("matrix has no odd-weight rows, so the code has no logical qubits");
    }
    code.generator = g;
    code.x_stabilizers = tm.even_matrix();
    code.g0_basis = row_basis(code.x_stabilizers);
    if (g.rank() != code.g0_basis.rows() + code.k) {
        throw std::invalid_argument(
            "odd-weight rows are linearly dependent modulo the even-row span (duplicate logicals)");
    }
    for (auto i : tm.odd_rows()) {
        code.logical_x.push_back(g.row(i));
        code.logical_z.push_back(g.row(i));
    }
    code.z_stabilizers = orthogonal_complement(g);

    // Gauge z parts: canonical representatives of (G-perp) / G0.
    RowReducer g0(code.g0_basis);
    BitMatrix reps(code.n);
    for (const auto &z : code.z_stabilizers.row_vectors()) {
        BitVector r = g0.reduce(z);
        if (!r.is_zero()) {
            reps.append_row(std::move(r));
        }
    }
    BitMatrix z_parts = row_basis(reps);
    size_t num_gauge = z_parts.rows();

    // Dual basis under the dot product: x_i . z_j = delta_ij.
    BitMatrix gram(num_gauge, num_gauge);
    for (size_t i = 0; i < num_gauge; i++) {
        for (size_t j = 0; j < num_gauge; j++) {
            gram.row(i).set(j, z_parts.row(i).dot(z_parts.row(j)));
        }
    }
    BitMatrix gram_inv = invert(gram);
    for (size_t i = 0; i < num_gauge; i++) {
        BitVector x(code.n);
        for (size_t j = 0; j < num_gauge; j++) {
            if (gram_inv.get(i, j)) {
                x ^= z_parts.row(j);
            }
        }
        code.gauge_pairs.push_back({std::move(x), z_parts.row(i)});
    }
    return code;
}

size_t min_weight_outside(const BitMatrix &space, const BitMatrix &excluded) {
    BitMatrix basis = row_basis(space);
    if (basis.rows() > kEnumerationGuardBits) {
        throw EnumerationGuardError("distance search over a space of dimension " +
                                    std::to_string(basis.rows()) + " exceeds the enumeration guard");
    }
    // v lies in span(excluded) iff it is orthogonal to the complement of it.
    BitMatrix checks = orthogonal_complement(excluded);
    std::vector<BitVector> basis_syndromes;
    for (const auto &b : basis.row_vectors()) {
        basis_syndromes.push_back(checks.syndrome(b));
    }
    BitVector current(space.cols());
    BitVector syndrome(checks.rows());
    size_t best = 0;
    uint64_t count = uint64_t{1} << basis.rows();
    for (uint64_t i = 1; i < count; i++) {
        size_t bit = std::countr_zero(i);
        current ^= basis.row(bit);
        syndrome ^= basis_syndromes[bit];
        if (!syndrome.is_zero()) {
            size_t w = current.weight();
            if (best == 0 || w < best) {
                best = w;
            }
        }
    }
    return best;
}

Distances distances(const TriorthogonalCode &code) {
    Distances d;
    d.d_x = min_weight_outside(code.generator, code.g0_basis);
    d.d_z = min_weight_outside(orthogonal_complement(code.g0_basis), code.z_stabilizers);
    return d;
}

void fill_distances(TriorthogonalCode &code) {
    Distances d = distances(code);
    code.d_x = d.d_x;
    code.d_z = d.d_z;
}

TriorthogonalMatrix builtin_15_1_3() {
    return TriorthogonalMatrix::verify(BitMatrix::from_strings({
        "000000011111111",
        "000111100001111",
        "011001100110011",
        "101010101010101",
        "111111111111111",
    }));
}

namespace {

struct AffineSolution {
    BitVector particular;
    BitMatrix kernel;
};

/// Solves C v = rhs over GF(2); nullopt when inconsistent.
std::optional<AffineSolution> solve_affine(const std::vector<BitVector> &constraints,
                                           const std::vector<bool> &rhs, size_t n) {
    BitMatrix augmented(n + 1);
    BitMatrix plain(n);
    for (size_t i = 0; i < constraints.size(); i++) {
        BitVector row(n + 1);
        for (auto b : constraints[i].support()) {
            row.set(b, true);
        }
        row.set(n, rhs[i]);
        augmented.append_row(std::move(row));
        plain.append_row(constraints[i]);
    }
    RrefResult r = rref(augmented);
    AffineSolution solution{BitVector(n), orthogonal_complement(plain)};
    for (size_t i = 0; i < r.rank; i++) {
        if (r.pivots[i] == n) {
            return std::nullopt;
        }
        if (r.matrix.get(i, n)) {
            solution.particular.set(r.pivots[i], true);
        }
    }
    return solution;
}

std::optional<BitMatrix> search_trial(const SearchOptions &opt, std::mt19937_64 &rng) {
    size_t n = opt.n;
    BitMatrix rows(n);
    BitMatrix accepted(n);
    size_t total = opt.m_even + opt.k;
    for (size_t r = 0; r < total; r++) {
        bool odd = r >= opt.m_even;
        std::vector<BitVector> constraints;
        std::vector<bool> rhs;
        for (size_t i = 0; i < rows.rows(); i++) {
            constraints.push_back(rows.row(i));
            rhs.push_back(false);
            for (size_t j = i + 1; j < rows.rows(); j++) {
                constraints.push_back(rows.row(i) & rows.row(j));
                rhs.push_back(false);
            }
        }
        constraints.push_back(BitVector::ones(n));
        rhs.push_back(odd);
        auto solution = solve_affine(constraints, rhs, n);
        if (!solution) {
            return std::nullopt;
        }
        BitVector v = solution->particular;
        for (const auto &kv : solution->kernel.row_vectors()) {
            if (rng() & 1) {
                v ^= kv;
            }
        }
        if (v.is_zero() || span_contains(rows, v)) {
            return std::nullopt;
        }
        rows.append_row(std::move(v));
    }
    if (opt.require_full_cover) {
        BitVector cover(n);
        for (size_t i = 0; i < opt.m_even; i++) {
            for (auto b : rows.row(i).support()) {
                cover.set(b, true);
            }
        }
        if (cover.weight() != n) {
            return std::nullopt;
        }
    }
    return rows;
}

}  // namespace

SearchResult search_triorthogonal(const SearchOptions &options) {
    if (options.n == 0 || options.n > 32) {
        throw std::invalid_argument("search supports 1 <= n <= 32 columns");
    }
    if (options.k == 0) {
        throw std::invalid_argument("search needs at least one odd row");
    }
    if (options.k + options.m_even > options.n) {
        throw std::invalid_argument("a full-rank matrix cannot have more rows than columns");
    }
    std::mt19937_64 rng(options.seed);
    SearchResult result;
    for (uint64_t trial = 0; trial < options.budget; trial++) {
        result.trials_used = trial + 1;
        auto candidate = search_trial(options, rng);
        if (!candidate) {
            continue;
        }
        // Postcondition re-checked independently of the constrained sampler.
        if (!check_orthogonality(*candidate, 3).pass || candidate->rank() != candidate->rows()) {
            throw std::logic_error("search produced a matrix that fails its own postcondition");
        }
        result.matrix = TriorthogonalMatrix::verify(std::move(*candidate), 3);
        return result;
    }
    return result;
}

std::string format_search_result(const TriorthogonalMatrix &m, const SearchOptions &options,
                                 uint64_t trials_used) {
    return format_matrix(m.matrix(), {
                                         "triorthogonal matrix found by randomized search",
                                         "n=" + std::to_string(options.n) + " k=" + std::to_string(options.k) +
                                             " m_even=" + std::to_string(options.m_even),
                                         "seed=" + std::to_string(options.seed) +
                                             " budget=" + std::to_string(options.budget) +
                                             " trials_used=" + std::to_string(trials_used),
                                     });
}

}  // namespace triortho
