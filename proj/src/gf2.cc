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

#include "triortho/gf2.h"

#include <bit>
#include <fstream>
#include <ostream>
#include <sstream>

namespace triortho {

namespace {

size_t word_count(size_t num_bits) { return (num_bits + 63) / 64; }

}  // namespace

BitVector::BitVector(size_t num_bits) : num_bits_(num_bits), words_(word_count(num_bits), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector result(bits.size());
    for (size_t i = 0; i < bits.size(); i++) {
        if (bits[i] == '1') {
            result.set(i, true);
        } else if (bits[i] != '0') {
            throw std::invalid_argument("bit string contains a character other than '0'/'1': '" +
                                        std::string(bits) + "'");
        }
    }
    return result;
}

BitVector BitVector::from_word(uint64_t word, size_t num_bits) {
    if (num_bits > 64) {
        throw std::invalid_argument("from_word supports at most 64 bits");
    }
    BitVector result(num_bits);
    if (num_bits > 0) {
        result.words_[0] = num_bits == 64 ? word : word & ((uint64_t{1} << num_bits) - 1);
    }
    return result;
}

BitVector BitVector::ones(size_t num_bits) {
    BitVector result(num_bits);
    for (auto &w : result.words_) {
        w = ~uint64_t{0};
    }
    if (num_bits % 64 != 0) {
        result.words_.back() &= (uint64_t{1} << (num_bits % 64)) - 1;
    }
    return result;
}

BitVector BitVector::unit(size_t num_bits, size_t index) {
    BitVector result(num_bits);
    result.set(index, true);
    return result;
}

bool BitVector::get(size_t index) const {
    if (index >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(index) + " out of range for length " +
                                std::to_string(num_bits_));
    }
    return (words_[index >> 6] >> (index & 63)) & 1;
}

void BitVector::set(size_t index, bool value) {
    if (index >= num_bits_) {
        throw std::out_of_range("bit index " + std::to_string(index) + " out of range for length " +
                                std::to_string(num_bits_));
    }
    uint64_t mask = uint64_t{1} << (index & 63);
    if (value) {
        words_[index >> 6] |= mask;
    } else {
        words_[index >> 6] &= ~mask;
    }
}

void BitVector::flip(size_t index) { set(index, !get(index)); }

size_t BitVector::weight() const {
    size_t total = 0;
    for (auto w : words_) {
        total += std::popcount(w);
    }
    return total;
}

bool BitVector::is_zero() const {
    for (auto w : words_) {
        if (w) {
            return false;
        }
    }
    return true;
}

bool BitVector::dot(const BitVector &other) const {
    check_same_size(other);
    uint64_t acc = 0;
    for (size_t i = 0; i < words_.size(); i++) {
        acc ^= words_[i] & other.words_[i];
    }
    return std::popcount(acc) & 1;
}

size_t BitVector::first_one() const {
    for (size_t i = 0; i < words_.size(); i++) {
        if (words_[i]) {
            return i * 64 + std::countr_zero(words_[i]);
        }
    }
    return num_bits_;
}

std::vector<size_t> BitVector::support() const {
    std::vector<size_t> result;
    for (size_t i = 0; i < words_.size(); i++) {
        uint64_t w = words_[i];
        while (w) {
            result.push_back(i * 64 + std::countr_zero(w));
            w &= w - 1;
        }
    }
    return result;
}

void BitVector::check_same_size(const BitVector &other) const {
    if (num_bits_ != other.num_bits_) {
        throw std::invalid_argument("bit vector length mismatch: " + std::to_string(num_bits_) +
                                    " vs " + std::to_string(other.num_bits_));
    }
}

BitVector &BitVector::operator^=(const BitVector &other) {
    check_same_size(other);
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] ^= other.words_[i];
    }
    return *this;
}

BitVector &BitVector::operator&=(const BitVector &other) {
    check_same_size(other);
    for (size_t i = 0; i < words_.size(); i++) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

BitVector BitVector::operator^(const BitVector &other) const {
    BitVector result = *this;
    result ^= other;
    return result;
}

BitVector BitVector::operator&(const BitVector &other) const {
    BitVector result = *this;
    result &= other;
    return result;
}

bool BitVector::operator<(const BitVector &other) const {
    if (num_bits_ != other.num_bits_) {
        return num_bits_ < other.num_bits_;
    }
    for (size_t i = 0; i < words_.size(); i++) {
        uint64_t diff = words_[i] ^ other.words_[i];
        if (diff) {
            // The lowest differing bit comes first in the string.
            return !((words_[i] >> std::countr_zero(diff)) & 1);
        }
    }
    return false;
}

uint64_t BitVector::to_word() const {
    if (num_bits_ > 64) {
        throw std::invalid_argument("to_word requires at most 64 bits");
    }
    return words_.empty() ? 0 : words_[0];
}

std::string BitVector::str() const {
    std::string result(num_bits_, '0');
    for (size_t i = 0; i < num_bits_; i++) {
        if (get(i)) {
            result[i] = '1';
        }
    }
    return result;
}

size_t BitVector::hash() const {
    uint64_t h = 0x9E3779B97F4A7C15ull ^ num_bits_;
    for (auto w : words_) {
        h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
}

std::ostream &operator<<(std::ostream &out, const BitVector &v) { return out << v.str(); }

size_t weight(const BitVector &v) { return v.weight(); }

BitVector pointwise_product(const BitVector &u, const BitVector &v) { return u & v; }

BitMatrix::BitMatrix(size_t num_rows, size_t num_cols)
    : num_cols_(num_cols), rows_(num_rows, BitVector(num_cols)) {}

BitMatrix::BitMatrix(std::vector<BitVector> rows, size_t num_cols) : num_cols_(num_cols) {
    for (auto &r : rows) {
        append_row(std::move(r));
    }
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string> &rows) {
    if (rows.empty()) {
        return BitMatrix(0);
    }
    BitMatrix result(rows[0].size());
    for (const auto &r : rows) {
        result.append_row(BitVector::from_string(r));
    }
    return result;
}

BitMatrix BitMatrix::identity(size_t n) {
    BitMatrix result(n);
    for (size_t i = 0; i < n; i++) {
        result.append_row(BitVector::unit(n, i));
    }
    return result;
}

void BitMatrix::append_row(BitVector row) {
    if (row.size() != num_cols_) {
        throw std::invalid_argument("row length " + std::to_string(row.size()) +
                                    " does not match column count " + std::to_string(num_cols_));
    }
    rows_.push_back(std::move(row));
}

BitMatrix BitMatrix::select_rows(const std::vector<size_t> &indices) const {
    BitMatrix result(num_cols_);
    for (auto i : indices) {
        result.append_row(rows_.at(i));
    }
    return result;
}

BitMatrix BitMatrix::permute_columns(const std::vector<size_t> &perm) const {
    if (perm.size() != num_cols_) {
        throw std::invalid_argument("column permutation has the wrong length");
    }
    BitMatrix result(num_cols_);
    for (const auto &r : rows_) {
        BitVector out(num_cols_);
        for (size_t j = 0; j < num_cols_; j++) {
            out.set(j, r.get(perm[j]));
        }
        result.append_row(std::move(out));
    }
    return result;
}

BitVector BitMatrix::syndrome(const BitVector &v) const {
    BitVector result(rows_.size());
    for (size_t i = 0; i < rows_.size(); i++) {
        if (rows_[i].dot(v)) {
            result.set(i, true);
        }
    }
    return result;
}

size_t BitMatrix::rank() const { return rref(*this).rank; }

std::string BitMatrix::str() const {
    std::string result;
    for (const auto &r : rows_) {
        result += r.str();
        result += '\n';
    }
    return result;
}

BitMatrix RrefResult::basis() const {
    BitMatrix result(matrix.cols());
    for (size_t i = 0; i < rank; i++) {
        result.append_row(matrix.row(i));
    }
    return result;
}

RrefResult rref(const BitMatrix &m) {
    RrefResult result{m, 0, {}};
    BitMatrix &a = result.matrix;
    size_t pivot_row = 0;
    for (size_t col = 0; col < a.cols() && pivot_row < a.rows(); col++) {
        size_t found = pivot_row;
        while (found < a.rows() && !a.get(found, col)) {
            found++;
        }
        if (found == a.rows()) {
            continue;
        }
        std::swap(a.row(found), a.row(pivot_row));
        for (size_t r = 0; r < a.rows(); r++) {
            if (r != pivot_row && a.get(r, col)) {
                a.row(r) ^= a.row(pivot_row);
            }
        }
        result.pivots.push_back(col);
        pivot_row++;
    }
    result.rank = pivot_row;
    return result;
}

BitMatrix row_basis(const BitMatrix &m) { return rref(m).basis(); }

BitMatrix orthogonal_complement(const BitMatrix &m) {
    RrefResult r = rref(m);
    size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto p : r.pivots) {
        is_pivot[p] = true;
    }
    BitMatrix kernel(n);
    for (size_t free_col = 0; free_col < n; free_col++) {
        if (is_pivot[free_col]) {
            continue;
        }
        BitVector v = BitVector::unit(n, free_col);
        for (size_t i = 0; i < r.rank; i++) {
            if (r.matrix.get(i, free_col)) {
                v.set(r.pivots[i], true);
            }
        }
        kernel.append_row(std::move(v));
    }
    return row_basis(kernel);
}

RowReducer::RowReducer(const BitMatrix &m) : num_cols_(m.cols()) {
    RrefResult r = rref(m);
    for (size_t i = 0; i < r.rank; i++) {
        basis_.push_back(r.matrix.row(i));
    }
    pivots_ = r.pivots;
}

BitVector RowReducer::reduce(BitVector v) const {
    if (v.size() != num_cols_) {
        throw std::invalid_argument("vector length " + std::to_string(v.size()) +
                                    " does not match column count " + std::to_string(num_cols_));
    }
    for (size_t i = 0; i < basis_.size(); i++) {
        if (v.get(pivots_[i])) {
            v ^= basis_[i];
        }
    }
    return v;
}

std::vector<bool> RowReducer::coordinates(const BitVector &v, bool *in_span) const {
    std::vector<bool> coeffs(basis_.size(), false);
    BitVector rest = v;
    for (size_t i = 0; i < basis_.size(); i++) {
        if (rest.get(pivots_[i])) {
            rest ^= basis_[i];
            coeffs[i] = true;
        }
    }
    *in_span = rest.is_zero();
    return coeffs;
}

bool span_contains(const BitMatrix &m, const BitVector &v) { return RowReducer(m).contains(v); }

bool same_row_space(const BitMatrix &a, const BitMatrix &b) {
    if (a.cols() != b.cols()) {
        return false;
    }
    return row_basis(a) == row_basis(b);
}

BitMatrix stack(const BitMatrix &a, const BitMatrix &b) {
    BitMatrix result = a;
    for (const auto &r : b.row_vectors()) {
        result.append_row(r);
    }
    return result;
}

void for_each_in_span(const BitMatrix &m, const BitVector &shift,
                      const std::function<void(const BitVector &)> &visit) {
    if (shift.size() != m.cols()) {
        throw std::invalid_argument("coset shift length does not match column count");
    }
    BitMatrix basis = row_basis(m);
    if (basis.rows() > kEnumerationGuardBits) {
        throw EnumerationGuardError("span of dimension " + std::to_string(basis.rows()) +
                                    " exceeds the enumeration guard of 2^" +
                                    std::to_string(kEnumerationGuardBits));
    }
    BitVector current = shift;
    visit(current);
    uint64_t count = uint64_t{1} << basis.rows();
    for (uint64_t i = 1; i < count; i++) {
        current ^= basis.row(std::countr_zero(i));
        visit(current);
    }
}

std::vector<BitVector> enumerate_span(const BitMatrix &m, const BitVector &shift) {
    std::vector<BitVector> result;
    for_each_in_span(m, shift, [&](const BitVector &v) { result.push_back(v); });
    return result;
}

BitMatrix parse_matrix(std::string_view text) {
    std::vector<std::string> rows;
    size_t line_number = 0;
    size_t start = 0;
    while (start <= text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        line_number++;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
            line.remove_suffix(1);
        }
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) {
            line.remove_prefix(1);
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!rows.empty() && line.size() != rows[0].size()) {
            throw std::invalid_argument("matrix line " + std::to_string(line_number) + " has " +
                                        std::to_string(line.size()) + " columns, expected " +
                                        std::to_string(rows[0].size()));
        }
        rows.emplace_back(line);
    }
    return BitMatrix::from_strings(rows);
}

BitMatrix read_matrix_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open matrix file '" + path + "'");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_matrix(buffer.str());
}

std::string format_matrix(const BitMatrix &m, const std::vector<std::string> &header) {
    std::string result;
    for (const auto &line : header) {
        result += "# " + line + "\n";
    }
    result += m.str();
    return result;
}

}  // namespace triortho
