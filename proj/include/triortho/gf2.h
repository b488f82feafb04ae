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

#ifndef TRIORTHO_GF2_H
#define TRIORTHO_GF2_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace triortho {

/// Largest span dimension any enumeration routine will walk (2^25 elements).
inline constexpr size_t kEnumerationGuardBits = 25;

/// Thrown when a requested enumeration exceeds kEnumerationGuardBits.
struct EnumerationGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Fixed-length vector over GF(2), bit-packed into 64-bit words.
///
/// Bit i is qubit i. Padding bits past `size()` are always zero, so word-wise
/// popcount and equality are exact.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits);

    /// Parses a string of '0'/'1' characters; bit i is the i-th character.
    static BitVector from_string(std::string_view bits);
    static BitVector from_word(uint64_t word, size_t num_bits);
    static BitVector ones(size_t num_bits);
    static BitVector unit(size_t num_bits, size_t index);

    size_t size() const { return num_bits_; }
    bool get(size_t index) const;
    void set(size_t index, bool value);
    void flip(size_t index);

    size_t weight() const;
    bool parity() const { return weight() & 1; }
    bool is_zero() const;
    /// Parity of the overlap with `other`.
    bool dot(const BitVector &other) const;
    /// Index of the lowest set bit, or size() if zero.
    size_t first_one() const;
    std::vector<size_t> support() const;

    BitVector &operator^=(const BitVector &other);
    BitVector &operator&=(const BitVector &other);
    BitVector operator^(const BitVector &other) const;
    BitVector operator&(const BitVector &other) const;
    bool operator==(const BitVector &other) const = default;
    /// Lexicographic order on the bit string (bit 0 most significant).
    bool operator<(const BitVector &other) const;

    /// Low 64 bits packed as an integer; requires size() <= 64.
    uint64_t to_word() const;
    std::string str() const;
    size_t hash() const;

    const std::vector<uint64_t> &words() const { return words_; }

   private:
    void check_same_size(const BitVector &other) const;

    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

std::ostream &operator<<(std::ostream &out, const BitVector &v);

size_t weight(const BitVector &v);
/// Entry-wise (AND) product of two equal-length vectors.
BitVector pointwise_product(const BitVector &u, const BitVector &v);

struct BitVectorHash {
    size_t operator()(const BitVector &v) const { return v.hash(); }
};

/// Dense GF(2) matrix; every row is a BitVector of length `cols()`.
class BitMatrix {
   public:
    BitMatrix() = default;
    explicit BitMatrix(size_t num_cols) : num_cols_(num_cols) {}
    BitMatrix(size_t num_rows, size_t num_cols);
    BitMatrix(std::vector<BitVector> rows, size_t num_cols);

    /// Rows given as '0'/'1' strings; all must have equal length.
    static BitMatrix from_strings(const std::vector<std::string> &rows);
    static BitMatrix identity(size_t n);

    size_t rows() const { return rows_.size(); }
    size_t cols() const { return num_cols_; }
    const BitVector &row(size_t i) const { return rows_.at(i); }
    BitVector &row(size_t i) { return rows_.at(i); }
    const std::vector<BitVector> &row_vectors() const { return rows_; }
    void append_row(BitVector row);
    bool get(size_t r, size_t c) const { return rows_[r].get(c); }

    /// Rows selected by index, in the given order.
    BitMatrix select_rows(const std::vector<size_t> &indices) const;
    /// Matrix with the same columns reordered: new column j = old column perm[j].
    BitMatrix permute_columns(const std::vector<size_t> &perm) const;
    /// Parities of v against every row, as a vector of length rows().
    BitVector syndrome(const BitVector &v) const;
    size_t rank() const;

    bool operator==(const BitMatrix &other) const = default;
    std::string str() const;

   private:
    size_t num_cols_ = 0;
    std::vector<BitVector> rows_;
};

struct RrefResult {
    /// Reduced row-echelon form; the first `rank` rows are nonzero, the rest zero.
    BitMatrix matrix;
    size_t rank = 0;
    std::vector<size_t> pivots;

    /// Just the nonzero rows (a canonical basis of the row space).
    BitMatrix basis() const;
};

RrefResult rref(const BitMatrix &m);
/// Canonical (RREF) basis of the row space.
BitMatrix row_basis(const BitMatrix &m);
/// Canonical basis of {v : v . r = 0 for every row r}.
BitMatrix orthogonal_complement(const BitMatrix &m);
bool span_contains(const BitMatrix &m, const BitVector &v);
/// True iff the two matrices have the same row space.
bool same_row_space(const BitMatrix &a, const BitMatrix &b);
/// Rows of `a` followed by rows of `b`.
BitMatrix stack(const BitMatrix &a, const BitMatrix &b);

/// Reduces vectors against a fixed RREF basis; the workhorse for repeated
/// membership tests and coset representatives.
class RowReducer {
   public:
    explicit RowReducer(const BitMatrix &m);
    size_t rank() const { return basis_.size(); }
    const std::vector<BitVector> &basis() const { return basis_; }
    const std::vector<size_t> &pivots() const { return pivots_; }
    /// Canonical representative of v modulo the row space.
    BitVector reduce(BitVector v) const;
    bool contains(const BitVector &v) const { return reduce(v).is_zero(); }
    /// Coefficients c with v = sum c_i basis_i, or empty if v is not in the span.
    std::vector<bool> coordinates(const BitVector &v, bool *in_span) const;

   private:
    size_t num_cols_;
    std::vector<BitVector> basis_;
    std::vector<size_t> pivots_;
};

/// Calls `visit` once for every element of shift + rowspace(m), in Gray-code
/// order starting from `shift` itself.
void for_each_in_span(const BitMatrix &m, const BitVector &shift,
                      const std::function<void(const BitVector &)> &visit);
std::vector<BitVector> enumerate_span(const BitMatrix &m, const BitVector &shift);

/// Parses the matrix text format: one row of '0'/'1' per line, '#' comments.
BitMatrix parse_matrix(std::string_view text);
BitMatrix read_matrix_file(const std::string &path);
/// Serializes in the matrix text format, each header line prefixed with "# ".
std::string format_matrix(const BitMatrix &m, const std::vector<std::string> &header = {});

}  // namespace triortho

#endif
