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
"""Triorthogonal codes, transversal CCZ, logical Hadamard and Toffoli distillation."""

from ._triortho import (
    EnumerationGuardError,
    InfeasibleTarget,
    TriorthogonalCode,
    TriorthogonalMatrix,
    build_code,
    check_orthogonality,
    cost_curve_csv,
    enumerate_order2,
    fault_tolerance_sweep,
    logical_hadamard,
    monte_carlo,
    optimize_stack,
    propagate,
    rank,
    search,
    simulate_distillation_sparse,
    verify_ccz,
)

__all__ = [
    "EnumerationGuardError",
    "InfeasibleTarget",
    "TriorthogonalCode",
    "TriorthogonalMatrix",
    "build_code",
    "check_orthogonality",
    "cost_curve_csv",
    "enumerate_order2",
    "fault_tolerance_sweep",
    "logical_hadamard",
    "monte_carlo",
    "optimize_stack",
    "propagate",
    "rank",
    "search",
    "simulate_distillation_sparse",
    "verify_ccz",
]
