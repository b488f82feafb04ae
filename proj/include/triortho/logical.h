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

#ifndef TRIORTHO_LOGICAL_H
#define TRIORTHO_LOGICAL_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "triortho/codes.h"
#include "triortho/gf2.h"
#include "triortho/simulator.h"

namespace triortho {

/// Where a fault is injected in the Steane-style correction circuit.
enum class FaultLocation {
    DataBeforeH,
    DataAfterH,
    AncillaPrep,
    CnotData,
    CnotAncilla,
    CnotBoth,
    Measurement,
};

enum class FaultPauli { X, Z, MeasurementFlip };

struct FaultSpec {
    FaultLocation location;
    FaultPauli pauli;
    size_t qubit;

    std::string str() const;
    bool operator==(const FaultSpec &) const = default;
};

const char *location_name(FaultLocation location);

/// Inverse of FaultSpec::str(): "X@cnot_data[3]", "Z@data_after_h[0]",
/// "FLIP@measurement[7]". Throws std::invalid_argument.
FaultSpec parse_fault_spec(const std::string &text);

struct SteaneReport {
    BitVector raw_outcomes;
    BitVector x_syndrome;
    BitVector gauge_parities;
    BitVector applied_correction;
    bool decode_success = true;

    /// One-line JSON object with exactly the five fields above.
    std::string to_json() const;
};

/// Raised by the strict entry points when the X syndrome has no entry in the
/// lookup table (the error has weight above (d-1)/2).
struct DecodeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syndrome -> minimum-weight error table for the checks given by the rows of
/// G0. Errors are enumerated by increasing weight up to (d-1)/2, lexicographic
/// within a weight, and the first pattern seen for a syndrome is kept.
class SyndromeTable {
   public:
    SyndromeTable(const BitMatrix &checks, size_t max_weight);
    std::optional<BitVector> lookup(const BitVector &syndrome) const;
    size_t size() const { return table_.size(); }
    size_t max_weight() const { return max_weight_; }

   private:
    size_t n_;
    size_t max_weight_;
    std::unordered_map<uint64_t, BitVector> table_;
};

struct HadamardOutput {
    SparseState state;
    SteaneReport report;
};

/// Logical Hadamard and Steane X correction for one code, with the decoder
/// table and the ancilla |+> state built once.
class SteaneProcedure {
   public:
    explicit SteaneProcedure(TriorthogonalCode code);

    const TriorthogonalCode &code() const { return code_; }
    const SyndromeTable &table() const { return table_; }
    const SparseState &ancilla() const { return ancilla_; }

    /// Transversal H, then a Steane X-correction round that also restores the
    /// gauge qubits to |0...0>.
    HadamardOutput logical_hadamard(const SparseState &data, const std::vector<FaultSpec> &faults,
                                    Randomness &randomness, bool strict = true) const;
    HadamardOutput steane_x_correct(const SparseState &data, const std::vector<FaultSpec> &faults,
                                    Randomness &randomness, bool strict = true) const;

    /// The ideal output of the logical Hadamard for a code-space input.
    SparseState ideal_hadamard_image(const SparseState &data) const;
    /// Corrects Z errors by reading the X-stabilizer eigenvalues of the state
    /// directly. Used only to evaluate residual errors. Returns the applied Z.
    BitVector ideal_z_correct(SparseState &state) const;
    /// Minimum weight of the coset pattern + G0.
    size_t reduced_weight(const BitVector &pattern) const;

   private:
    HadamardOutput run(const SparseState &data, const std::vector<FaultSpec> &faults,
                       Randomness &randomness, bool strict, bool with_hadamard) const;

    TriorthogonalCode code_;
    SyndromeTable table_;
    SparseState ancilla_;
    std::vector<BitVector> g0_elements_;
};

HadamardOutput logical_hadamard(const SparseState &data, const TriorthogonalCode &code,
                                const std::vector<FaultSpec> &faults, Randomness &randomness);
HadamardOutput steane_x_correct(const SparseState &data, const TriorthogonalCode &code,
                                const std::vector<FaultSpec> &faults, Randomness &randomness);

struct SweepOptions {
    size_t weight_limit = 1;
    bool include_z_faults = false;
    std::vector<uint64_t> seeds{0x5EED};
    /// Stop once this many counterexamples are collected (0 = never).
    size_t max_counterexamples = 0;
};

struct Counterexample {
    std::vector<FaultSpec> faults;
    uint64_t seed;
    std::string reason;
};

struct SweepReport {
    size_t fault_sets_checked = 0;
    size_t runs = 0;
    std::vector<Counterexample> counterexamples;
};

/// Every single-fault site of the circuit: X on data before/after H, X on
/// the ancilla, X after each CNOT (data, ancilla, both) and measurement
/// flips; plus the matching Z faults when requested.
std::vector<FaultSpec> enumerate_fault_sites(size_t n, bool include_z_faults);

/// Injects every fault set of size <= weight_limit into the logical Hadamard
/// acting on (3/5)|0> + (4i/5)|1>. A fault set is a counterexample when the
/// residual X or Z error exceeds the number of faults, or when ideal
/// correction of the residual does not recover the ideal output (a logical
/// error or an unrestored gauge).
SweepReport fault_tolerance_sweep(const TriorthogonalCode &code, const SweepOptions &options);

/// Toffoli |+,+,0> with the third qubit as target.
SparseState toffoli_resource_state();

/// Enacts CCZ on three input qubits by teleporting them into a Toffoli state
/// and applying measurement-conditioned Clifford corrections.
SparseState ccz_via_toffoli_state(const SparseState &inputs, const SparseState &toffoli_state,
                                  Randomness &randomness);

}  // namespace triortho

#endif
