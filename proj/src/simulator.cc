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

#include "triortho/simulator.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace triortho {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

uint64_t bit_of(size_t q) { return uint64_t{1} << q; }

}  // namespace

const char *gate_name(Gate g) {
    switch (g) {
        case Gate::X:
            return "X";
        case Gate::Z:
            return "Z";
        case Gate::H:
            return "H";
        case Gate::CNOT:
            return "CNOT";
        case Gate::CZ:
            return "CZ";
        case Gate::CCZ:
            return "CCZ";
    }
    return "?";
}

size_t gate_arity(Gate g) {
    switch (g) {
        case Gate::CNOT:
        case Gate::CZ:
            return 2;
        case Gate::CCZ:
            return 3;
        default:
            return 1;
    }
}

Randomness Randomness::seeded(uint64_t seed) {
    Randomness r;
    r.rng_.seed(seed);
    return r;
}

Randomness Randomness::forced(std::vector<bool> outcomes) {
    Randomness r;
    r.forced_ = true;
    r.outcomes_ = std::move(outcomes);
    return r;
}

double Randomness::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

bool Randomness::next_outcome(double probability_of_one) {
    if (!forced_) {
        return uniform() < probability_of_one;
    }
    if (cursor_ >= outcomes_.size()) {
        throw std::invalid_argument("ran out of forced measurement outcomes");
    }
    bool outcome = outcomes_[cursor_++];
    double p = outcome ? probability_of_one : 1 - probability_of_one;
    if (p < 1e-12) {
        throw std::invalid_argument("forced measurement outcome " + std::to_string(outcome) +
                                    " has probability zero");
    }
    return outcome;
}

SparseState::SparseState(size_t qubit_count) : qubit_count_(qubit_count) {
    if (qubit_count > kMaxSimulatedQubits) {
        throw std::invalid_argument("sparse simulator supports at most 64 qubits, got " +
                                    std::to_string(qubit_count));
    }
    amps_[0] = 1.0;
}

SparseState SparseState::basis(const BitVector &bits) {
    SparseState s(bits.size());
    s.amps_.clear();
    s.amps_[bits.to_word()] = 1.0;
    return s;
}

SparseState SparseState::uniform(size_t qubit_count, const std::vector<BitVector> &support) {
    SparseState s(qubit_count);
    s.amps_.clear();
    double a = 1.0 / std::sqrt(static_cast<double>(support.size()));
    for (const auto &b : support) {
        if (b.size() != qubit_count) {
            throw std::invalid_argument("support string length does not match qubit count");
        }
        if (!s.amps_.emplace(b.to_word(), a).second) {
            throw std::invalid_argument("uniform superposition support contains a duplicate");
        }
    }
    return s;
}

SparseState SparseState::from_terms(size_t qubit_count,
                                    const std::vector<std::pair<BitVector, Amplitude>> &terms) {
    SparseState s(qubit_count);
    s.amps_.clear();
    for (const auto &[b, a] : terms) {
        if (b.size() != qubit_count) {
            throw std::invalid_argument("term length does not match qubit count");
        }
        s.amps_[b.to_word()] += a;
    }
    s.prune();
    return s;
}

Amplitude SparseState::amplitude(const BitVector &bits) const {
    if (bits.size() != qubit_count_) {
        throw std::invalid_argument("basis string length does not match qubit count");
    }
    auto it = amps_.find(bits.to_word());
    return it == amps_.end() ? Amplitude{0} : it->second;
}

std::vector<std::pair<BitVector, Amplitude>> SparseState::terms() const {
    std::vector<std::pair<BitVector, Amplitude>> result;
    result.reserve(amps_.size());
    for (const auto &[k, a] : amps_) {
        result.emplace_back(BitVector::from_word(k, qubit_count_), a);
    }
    std::sort(result.begin(), result.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    return result;
}

std::vector<BitVector> SparseState::support() const {
    std::vector<BitVector> result;
    for (const auto &[b, a] : terms()) {
        result.push_back(b);
    }
    return result;
}

double SparseState::norm_squared() const {
    double total = 0;
    for (const auto &[k, a] : amps_) {
        total += std::norm(a);
    }
    return total;
}

void SparseState::normalize() {
    double n = std::sqrt(norm_squared());
    if (n == 0) {
        throw std::invalid_argument("cannot normalize the zero vector");
    }
    for (auto &[k, a] : amps_) {
        a /= n;
    }
}

void SparseState::prune() {
    std::erase_if(amps_, [](const auto &kv) { return std::abs(kv.second) < kAmplitudeCutoff; });
}

void SparseState::check_qubit(size_t q) const {
    if (q >= qubit_count_) {
        throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                                std::to_string(qubit_count_) + " qubits");
    }
}

void SparseState::apply(Gate gate, const std::vector<size_t> &qubits) {
    if (qubits.size() != gate_arity(gate)) {
        throw std::invalid_argument(std::string(gate_name(gate)) + " takes " +
                                    std::to_string(gate_arity(gate)) + " qubit(s)");
    }
    for (size_t i = 0; i < qubits.size(); i++) {
        check_qubit(qubits[i]);
        for (size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("gate operands must be distinct qubits");
            }
        }
    }
    uint64_t mask = 0;
    for (auto q : qubits) {
        mask |= bit_of(q);
    }
    switch (gate) {
        case Gate::Z:
        case Gate::CZ:
        case Gate::CCZ:
            for (auto &[k, a] : amps_) {
                if ((k & mask) == mask) {
                    a = -a;
                }
            }
            return;
        case Gate::X: {
            std::unordered_map<uint64_t, Amplitude> next;
            next.reserve(amps_.size());
            for (const auto &[k, a] : amps_) {
                next.emplace(k ^ mask, a);
            }
            amps_.swap(next);
            return;
        }
        case Gate::CNOT: {
            uint64_t control = bit_of(qubits[0]);
            uint64_t target = bit_of(qubits[1]);
            std::unordered_map<uint64_t, Amplitude> next;
            next.reserve(amps_.size());
            for (const auto &[k, a] : amps_) {
                next.emplace((k & control) ? k ^ target : k, a);
            }
            amps_.swap(next);
            return;
        }
        case Gate::H: {
            std::unordered_map<uint64_t, Amplitude> next;
            next.reserve(2 * amps_.size());
            for (const auto &[k, a] : amps_) {
                Amplitude s = a * kInvSqrt2;
                next[k & ~mask] += s;
                next[k | mask] += (k & mask) ? -s : s;
            }
            amps_.swap(next);
            prune();
            return;
        }
    }
}

double SparseState::probability_of_one(size_t qubit) const {
    check_qubit(qubit);
    double p = 0;
    for (const auto &[k, a] : amps_) {
        if (k & bit_of(qubit)) {
            p += std::norm(a);
        }
    }
    return p / norm_squared();
}

void SparseState::project(size_t qubit, bool outcome) {
    check_qubit(qubit);
    uint64_t b = bit_of(qubit);
    std::erase_if(amps_, [&](const auto &kv) { return static_cast<bool>(kv.first & b) != outcome; });
    normalize();
}

double SparseState::x_expectation(const BitVector &mask) const {
    if (mask.size() != qubit_count_) {
        throw std::invalid_argument("Pauli mask length does not match qubit count");
    }
    uint64_t m = mask.to_word();
    Amplitude total = 0;
    for (const auto &[k, a] : amps_) {
        auto it = amps_.find(k ^ m);
        if (it != amps_.end()) {
            total += std::conj(a) * it->second;
        }
    }
    return total.real() / norm_squared();
}

double SparseState::z_expectation(const BitVector &mask) const {
    if (mask.size() != qubit_count_) {
        throw std::invalid_argument("Pauli mask length does not match qubit count");
    }
    uint64_t m = mask.to_word();
    double total = 0;
    for (const auto &[k, a] : amps_) {
        total += (std::popcount(k & m) & 1) ? -std::norm(a) : std::norm(a);
    }
    return total / norm_squared();
}

SparseState SparseState::tensor(const SparseState &other) const {
    SparseState s(qubit_count_ + other.qubit_count_);
    s.amps_.clear();
    s.amps_.reserve(amps_.size() * other.amps_.size());
    for (const auto &[k1, a1] : amps_) {
        for (const auto &[k2, a2] : other.amps_) {
            s.amps_.emplace(k1 | (k2 << qubit_count_), a1 * a2);
        }
    }
    return s;
}

SparseState SparseState::take_prefix(size_t keep) const {
    std::vector<size_t> qubits(keep);
    for (size_t i = 0; i < keep; i++) {
        qubits[i] = i;
    }
    return take_qubits(qubits);
}

SparseState SparseState::take_qubits(const std::vector<size_t> &keep) const {
    uint64_t keep_mask = 0;
    for (auto q : keep) {
        check_qubit(q);
        keep_mask |= bit_of(q);
    }
    SparseState s(keep.size());
    s.amps_.clear();
    bool first = true;
    uint64_t dropped_value = 0;
    for (const auto &[k, a] : amps_) {
        uint64_t dropped = k & ~keep_mask;
        if (first) {
            dropped_value = dropped;
            first = false;
        } else if (dropped != dropped_value) {
            throw std::invalid_argument("dropped qubits are entangled or not in a basis state");
        }
        uint64_t packed = 0;
        for (size_t i = 0; i < keep.size(); i++) {
            if (k & bit_of(keep[i])) {
                packed |= bit_of(i);
            }
        }
        s.amps_[packed] += a;
    }
    s.prune();
    return s;
}

SparseState &SparseState::scale(Amplitude factor) {
    for (auto &[k, a] : amps_) {
        a *= factor;
    }
    prune();
    return *this;
}

SparseState &SparseState::add_scaled(const SparseState &other, Amplitude factor) {
    if (other.qubit_count_ != qubit_count_) {
        throw std::invalid_argument("cannot add states with different qubit counts");
    }
    for (const auto &[k, a] : other.amps_) {
        amps_[k] += factor * a;
    }
    prune();
    return *this;
}

std::string SparseState::dump_csv() const {
    std::string out;
    char buf[96];
    for (const auto &[b, a] : terms()) {
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g\n", a.real(), a.imag());
        out += b.str();
        out += buf;
    }
    return out;
}

SparseState apply_gate(SparseState state, Gate gate, const std::vector<size_t> &qubits) {
    state.apply(gate, qubits);
    return state;
}

MeasurementResult measure_z(SparseState state, size_t qubit, Randomness &randomness) {
    bool outcome = randomness.next_outcome(state.probability_of_one(qubit));
    state.project(qubit, outcome);
    return {outcome, std::move(state)};
}

bool states_equal_up_to_global_phase(const SparseState &s1, const SparseState &s2, double tol) {
    if (s1.qubit_count() != s2.qubit_count()) {
        throw std::invalid_argument("cannot compare states with different qubit counts");
    }
    const auto &a = s1.raw();
    const auto &b = s2.raw();
    // Align phases on the largest amplitude of s1.
    uint64_t anchor = 0;
    double best = -1;
    for (const auto &[k, v] : a) {
        if (std::abs(v) > best + 1e-15 || (std::abs(v) > best - 1e-15 && k < anchor)) {
            best = std::abs(v);
            anchor = k;
        }
    }
    Amplitude phase = 1;
    if (best > 0) {
        auto it = b.find(anchor);
        if (it == b.end()) {
            return best <= tol;
        }
        phase = it->second / a.at(anchor);
        if (std::abs(phase) < 1e-300) {
            return false;
        }
        phase /= std::abs(phase);
    }
    for (const auto &[k, v] : a) {
        auto it = b.find(k);
        Amplitude other = it == b.end() ? Amplitude{0} : it->second;
        if (std::abs(other - phase * v) > tol) {
            return false;
        }
    }
    for (const auto &[k, v] : b) {
        if (!a.count(k) && std::abs(v) > tol) {
            return false;
        }
    }
    return true;
}

SparseState prepare_logical(const TriorthogonalCode &code, const LogicalBasisLabel &label) {
    BitVector shift = code.logical_shift(label.bits);
    if (!label.gauge_bits.empty()) {
        if (label.gauge_bits.size() != code.gauge_pairs.size()) {
            throw std::invalid_argument("gauge label length does not match the gauge pair count");
        }
        for (size_t i = 0; i < code.gauge_pairs.size(); i++) {
            if (label.gauge_bits[i]) {
                shift ^= code.gauge_pairs[i].x_part;
            }
        }
    }
    return SparseState::uniform(code.n, enumerate_span(code.g0_basis, shift));
}

SparseState prepare_logical(const TriorthogonalCode &code, const std::vector<bool> &bits) {
    return prepare_logical(code, LogicalBasisLabel{bits, {}});
}

SparseState encode(const TriorthogonalCode &code, const SparseState &logical) {
    if (logical.qubit_count() % code.k != 0) {
        throw std::invalid_argument("logical qubit count is not a multiple of k");
    }
    size_t blocks = logical.qubit_count() / code.k;
    if (blocks * code.n > kMaxSimulatedQubits) {
        throw std::invalid_argument("encoded state would exceed the simulator qubit limit");
    }
    std::vector<BitVector> g0 = enumerate_span(code.g0_basis, BitVector(code.n));
    std::vector<uint64_t> g0_words;
    for (const auto &g : g0) {
        g0_words.push_back(g.to_word());
    }
    double block_norm = 1.0 / std::sqrt(static_cast<double>(g0.size()));
    std::vector<std::pair<BitVector, Amplitude>> terms;
    size_t total_qubits = blocks * code.n;
    for (const auto &[label, amp] : logical.terms()) {
        // Expand the tensor product of the per-block cosets.
        std::vector<uint64_t> partial{0};
        Amplitude a = amp;
        for (size_t b = 0; b < blocks; b++) {
            std::vector<bool> bits(code.k);
            for (size_t j = 0; j < code.k; j++) {
                bits[j] = label.get(b * code.k + j);
            }
            uint64_t shift = code.logical_shift(bits).to_word();
            std::vector<uint64_t> next;
            next.reserve(partial.size() * g0_words.size());
            for (auto p : partial) {
                for (auto g : g0_words) {
                    next.push_back(p | ((shift ^ g) << (b * code.n)));
                }
            }
            partial.swap(next);
            a *= block_norm;
        }
        for (auto p : partial) {
            terms.emplace_back(BitVector::from_word(p, total_qubits), a);
        }
    }
    return SparseState::from_terms(total_qubits, terms);
}

SparseState decode(const TriorthogonalCode &code, const SparseState &encoded) {
    if (encoded.qubit_count() % code.n != 0) {
        throw std::invalid_argument("encoded qubit count is not a multiple of n");
    }
    size_t blocks = encoded.qubit_count() / code.n;
    RowReducer g0(code.g0_basis);
    std::unordered_map<uint64_t, Amplitude> acc;
    uint64_t block_mask = code.n == 64 ? ~uint64_t{0} : (uint64_t{1} << code.n) - 1;
    for (const auto &[k, a] : encoded.raw()) {
        uint64_t label = 0;
        for (size_t b = 0; b < blocks; b++) {
            BitVector v = BitVector::from_word((k >> (b * code.n)) & block_mask, code.n);
            std::vector<bool> bits(code.k);
            for (size_t j = 0; j < code.k; j++) {
                bits[j] = code.logical_x[j].dot(v);
                if (bits[j]) {
                    label |= bit_of(b * code.k + j);
                }
            }
            if (!g0.contains(v ^ code.logical_shift(bits))) {
                throw std::invalid_argument("basis string " + v.str() + " is not in any code coset");
            }
        }
        acc[label] += a;
    }
    std::vector<std::pair<BitVector, Amplitude>> terms;
    for (const auto &[label, a] : acc) {
        terms.emplace_back(BitVector::from_word(label, blocks * code.k), a);
    }
    SparseState s = SparseState::from_terms(blocks * code.k, terms);
    s.normalize();
    return s;
}

namespace {

struct CosetWalker {
    std::vector<std::vector<std::vector<uint64_t>>> cosets;
    size_t words = 0;
    PhaseCheckVerdict *verdict = nullptr;
    bool have_phase = false;

    void walk(size_t block, const std::vector<uint64_t> &product) {
        if (block == cosets.size()) {
            uint64_t acc = 0;
            for (auto w : product) {
                acc ^= w;
            }
            int phase = (std::popcount(acc) & 1) ? -1 : 1;
            verdict->terms++;
            if (!have_phase) {
                verdict->phase = phase;
                have_phase = true;
            } else if (phase != verdict->phase) {
                verdict->uniform = false;
            }
            return;
        }
        std::vector<uint64_t> next(words);
        for (const auto &element : cosets[block]) {
            for (size_t w = 0; w < words; w++) {
                next[w] = block == 0 ? element[w] : product[w] & element[w];
            }
            walk(block + 1, next);
        }
    }
};

}  // namespace

PhaseCheckVerdict transversal_multi_cz_phase_check(const TriorthogonalCode &code,
                                                   const std::vector<std::vector<bool>> &labels) {
    size_t h = labels.size();
    if (h < 2) {
        throw std::invalid_argument("multi-controlled-Z check needs at least two blocks");
    }
    if (code.level < h) {
        throw std::invalid_argument("code matrix is verified only to level " +
                                    std::to_string(code.level) + ", below h=" + std::to_string(h));
    }
    if (h * code.g0_basis.rows() > kEnumerationGuardBits) {
        throw EnumerationGuardError("coset product of " + std::to_string(h) + " blocks with dim(G0)=" +
                                    std::to_string(code.g0_basis.rows()) +
                                    " exceeds the enumeration guard");
    }
    PhaseCheckVerdict verdict;
    size_t exponent = 0;
    for (size_t j = 0; j < code.k; j++) {
        bool all = true;
        for (const auto &label : labels) {
            if (label.size() != code.k) {
                throw std::invalid_argument("label length does not match k");
            }
            all = all && label[j];
        }
        exponent += all;
    }
    verdict.expected = (exponent & 1) ? -1 : 1;

    CosetWalker walker;
    walker.words = code.generator.row_vectors().empty() ? 1 : (code.n + 63) / 64;
    walker.verdict = &verdict;
    for (const auto &label : labels) {
        std::vector<std::vector<uint64_t>> coset;
        for_each_in_span(code.g0_basis, code.logical_shift(label),
                         [&](const BitVector &v) { coset.push_back(v.words()); });
        walker.cosets.push_back(std::move(coset));
    }
    walker.walk(0, std::vector<uint64_t>(walker.words, 0));
    return verdict;
}

PhaseCheckVerdict transversal_ccz_phase_check(const TriorthogonalCode &code, const std::vector<bool> &a,
                                              const std::vector<bool> &b, const std::vector<bool> &c) {
    if (code.level < 3) {
        throw std::invalid_argument("transversal CCZ needs a triorthogonal (level >= 3) matrix");
    }
    return transversal_multi_cz_phase_check(code, {a, b, c});
}

}  // namespace triortho
