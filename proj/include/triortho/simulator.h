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

#ifndef TRIORTHO_SIMULATOR_H
#define TRIORTHO_SIMULATOR_H

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "triortho/codes.h"
#include "triortho/gf2.h"

namespace triortho {

using Amplitude = std::complex<double>;

/// Amplitudes below this magnitude are dropped from a SparseState.
inline constexpr double kAmplitudeCutoff = 1e-14;
/// Basis strings are packed into one machine word.
inline constexpr size_t kMaxSimulatedQubits = 64;

enum class Gate { X, Z, H, CNOT, CZ, CCZ };

const char *gate_name(Gate g);
/// Number of qubit operands the gate takes.
size_t gate_arity(Gate g);

/// Source of measurement outcomes: an explicit seeded generator, or a fixed
/// list of outcomes to force (in the order measurements happen).
class Randomness {
   public:
    static Randomness seeded(uint64_t seed);
    static Randomness forced(std::vector<bool> outcomes);

    /// Returns the next outcome given the probability of outcome 1.
    /// Throws std::invalid_argument when forcing an outcome of probability 0.
    bool next_outcome(double probability_of_one);
    /// Uniform double in [0, 1) from the seeded generator.
    double uniform();
    bool is_forced() const { return forced_; }
    size_t forced_remaining() const { return outcomes_.size() - cursor_; }

   private:
    bool forced_ = false;
    std::mt19937_64 rng_;
    std::vector<bool> outcomes_;
    size_t cursor_ = 0;
};

/// Quantum state stored as a map from basis strings to amplitudes. Only
/// nonzero amplitudes (|a| >= kAmplitudeCutoff) are stored.
class SparseState {
   public:
    /// The all-zero basis state |0...0>.
    explicit SparseState(size_t qubit_count);
    static SparseState basis(const BitVector &bits);
    /// Uniform superposition over the given distinct basis strings.
    static SparseState uniform(size_t qubit_count, const std::vector<BitVector> &support);
    static SparseState from_terms(size_t qubit_count,
                                  const std::vector<std::pair<BitVector, Amplitude>> &terms);

    size_t qubit_count() const { return qubit_count_; }
    size_t support_size() const { return amps_.size(); }
    Amplitude amplitude(const BitVector &bits) const;
    /// All stored terms, sorted lexicographically by basis string.
    std::vector<std::pair<BitVector, Amplitude>> terms() const;
    std::vector<BitVector> support() const;
    double norm_squared() const;
    void normalize();

    void apply(Gate gate, const std::vector<size_t> &qubits);
    /// Probability that measuring `qubit` in the Z basis gives 1.
    double probability_of_one(size_t qubit) const;
    /// Projects onto `qubit` = outcome and renormalizes.
    void project(size_t qubit, bool outcome);
    /// Expectation of the Pauli X product on the given qubit mask.
    double x_expectation(const BitVector &mask) const;
    /// Expectation of the Pauli Z product on the given qubit mask.
    double z_expectation(const BitVector &mask) const;

    /// This state's qubits first, then the other's.
    SparseState tensor(const SparseState &other) const;
    /// Keeps qubits [0, keep). The dropped qubits must be in a single basis state.
    SparseState take_prefix(size_t keep) const;
    /// Keeps the listed qubits (in order). The rest must be in a single basis state.
    SparseState take_qubits(const std::vector<size_t> &keep) const;

    SparseState &scale(Amplitude factor);
    SparseState &add_scaled(const SparseState &other, Amplitude factor);

    /// One "bitstring,re,im" line per term, sorted by basis string.
    std::string dump_csv() const;

    const std::unordered_map<uint64_t, Amplitude> &raw() const { return amps_; }

   private:
    void prune();
    void check_qubit(size_t q) const;

    size_t qubit_count_;
    std::unordered_map<uint64_t, Amplitude> amps_;
};

SparseState apply_gate(SparseState state, Gate gate, const std::vector<size_t> &qubits);

struct MeasurementResult {
    bool outcome;
    SparseState state;
};

MeasurementResult measure_z(SparseState state, size_t qubit, Randomness &randomness);

/// True iff s2 = e^{i theta} s1 to within `tol` in max-norm over amplitudes.
bool states_equal_up_to_global_phase(const SparseState &s1, const SparseState &s2,
                                     double tol = 1e-12);

/// Logical basis label for one code block: one bit per logical qubit and one
/// per gauge pair (gauge bits default to zero).
struct LogicalBasisLabel {
    std::vector<bool> bits;
    std::vector<bool> gauge_bits;
};

/// Uniform superposition over (logical shift + gauge shift) + G0.
SparseState prepare_logical(const TriorthogonalCode &code, const LogicalBasisLabel &label);
SparseState prepare_logical(const TriorthogonalCode &code, const std::vector<bool> &bits);

/// Maps a k-qubit logical state to the encoded state (gauge fixed to zero).
SparseState encode(const TriorthogonalCode &code, const SparseState &logical);

/// Inverse of `encode` for a state supported inside code cosets: each basis
/// string is mapped to its logical label. Throws if some basis string is not
/// of the form (logical shift) + G0.
SparseState decode(const TriorthogonalCode &code, const SparseState &encoded);

struct PhaseCheckVerdict {
    /// Sign carried by every enumerated term, when `uniform`.
    int phase = 1;
    bool uniform = true;
    /// (-1)^{sum_j prod_b label_b[j]}.
    int expected = 1;
    uint64_t terms = 0;

    bool ok() const { return uniform && phase == expected; }
};

/// Enumerates every tuple (g_1, ..., g_h) with g_b in the coset of block b's
/// label and checks that (-1)^{|g_1 . g_2 ... g_h|} is the same for all of
/// them and equals the expected multi-controlled-Z phase. Works on bit
/// strings and parities only.
PhaseCheckVerdict transversal_multi_cz_phase_check(const TriorthogonalCode &code,
                                                   const std::vector<std::vector<bool>> &labels);
PhaseCheckVerdict transversal_ccz_phase_check(const TriorthogonalCode &code, const std::vector<bool> &a,
                                              const std::vector<bool> &b, const std::vector<bool> &c);

}  // namespace triortho

#endif
