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

#ifndef TRIORTHO_CODES_H
#define TRIORTHO_CODES_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triortho/gf2.h"

namespace triortho {

/// Result of an orthogonality check. `violation` holds the lexicographically
/// first tuple of distinct row indices whose pointwise product has odd weight.
struct OrthogonalityVerdict {
    bool pass = true;
    std::vector<size_t> violation;
};

/// Checks that every j-tuple of distinct rows, 2 <= j <= level, has an
/// even-weight pointwise product. Tuples are visited in lexicographic order
/// with prefixes first, so (0,1) precedes (0,1,2) precedes (0,2).
OrthogonalityVerdict check_orthogonality(const BitMatrix &g, size_t level);

/// Highest level in [2, max_level] that `g` satisfies, or 1 if it fails even
/// pairwise. Levels above the row count are vacuous and are capped there.
size_t orthogonality_level(const BitMatrix &g, size_t max_level);

/// A binary matrix verified to be orthogonal up to `level()` (>= 3 means
/// triorthogonal). Rows are split by weight parity; odd rows carry logicals.
class TriorthogonalMatrix {
   public:
    /// Throws std::invalid_argument naming the violating tuple on failure.
    static TriorthogonalMatrix verify(BitMatrix g, size_t level = 3);

    const BitMatrix &matrix() const { return g_; }
    size_t cols() const { return g_.cols(); }
    const std::vector<size_t> &even_rows() const { return even_rows_; }
    const std::vector<size_t> &odd_rows() const { return odd_rows_; }
    size_t level() const { return level_; }
    BitMatrix even_matrix() const { return g_.select_rows(even_rows_); }
    BitMatrix odd_matrix() const { return g_.select_rows(odd_rows_); }

   private:
    TriorthogonalMatrix(BitMatrix g, size_t level);

    BitMatrix g_;
    std::vector<size_t> even_rows_;
    std::vector<size_t> odd_rows_;
    size_t level_;
};

struct GaugePair {
    BitVector x_part;
    BitVector z_part;
};

/// CSS stabilizer code built from a triorthogonal matrix G.
///
/// X stabilizers come from the even rows (their span is G0), Z stabilizers
/// from a basis of the orthogonal complement of G, and logical X and Z of
/// logical qubit j are both supported on odd row j. The quotient of the
/// complement by G0 is split into gauge pairs whose z parts are the gauge
/// "logical Z" operators pinned to +1 in the code space.
struct TriorthogonalCode {
    size_t n = 0;
    size_t k = 0;
    size_t level = 3;
    BitMatrix generator;
    BitMatrix x_stabilizers;
    BitMatrix z_stabilizers;
    std::vector<BitVector> logical_x;
    std::vector<BitVector> logical_z;
    std::vector<GaugePair> gauge_pairs;
    BitMatrix g0_basis;
    std::optional<size_t> d_x;
    std::optional<size_t> d_z;

    std::optional<size_t> distance() const;
    /// Logical X shift for a k-bit label: sum of logical_x[j] over set bits.
    BitVector logical_shift(const std::vector<bool> &label) const;
};

TriorthogonalCode build_code(const TriorthogonalMatrix &g);

struct Distances {
    size_t d_x = 0;
    size_t d_z = 0;
    size_t distance() const { return d_x < d_z ? d_x : d_z; }
};

/// Minimum weight of a vector in span(space) that is not in span(excluded),
/// found by enumerating span(space). Returns 0 when space is inside excluded.
size_t min_weight_outside(const BitMatrix &space, const BitMatrix &excluded);

/// Exhaustive d_x (min weight of rowspace(G) outside G0) and d_z (min weight
/// of the complement of G0 outside the complement of G).
Distances distances(const TriorthogonalCode &code);
/// Computes the distances and stores them on the code.
void fill_distances(TriorthogonalCode &code);

/// The 5x15 matrix whose even rows are the X stabilizers of the 15-qubit
/// Hamming code and whose odd row is the transversal logical X.
TriorthogonalMatrix builtin_15_1_3();

struct SearchOptions {
    size_t n = 0;
    size_t k = 1;
    size_t m_even = 0;
    uint64_t budget = 1000;
    uint64_t seed = 0;
    /// Require every column to be covered by an even row (so d_z >= 2).
    bool require_full_cover = false;
};

struct SearchResult {
    std::optional<TriorthogonalMatrix> matrix;
    uint64_t trials_used = 0;
};

/// Seeded randomized search for a full-rank triorthogonal matrix with k odd
/// and m_even even rows. Each trial builds rows one at a time, sampling each
/// uniformly from the affine space of vectors that keep all pair and triple
/// overlaps with earlier rows even.
SearchResult search_triorthogonal(const SearchOptions &options);

std::string format_search_result(const TriorthogonalMatrix &m, const SearchOptions &options,
                                 uint64_t trials_used);

}  // namespace triortho

#endif
