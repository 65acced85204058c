# Copyright 2026 The saoovqe Authors
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

"""State-averaged orbital-optimized VQE."""

from saoovqe._core import (
    ActiveSpaceSpec,
    BasisTag,
    FrozenCoreHamiltonian,
    GateCount,
    IntegralSet,
    InvariantError,
    NumericalError,
    ParseError,
    ReferenceResult,
    RunResult,
    build_frozen_core,
    casci_energies,
    cli,
    cone_energies,
    count_gates,
    molecular_like_integrals,
    n_parameters,
    read_aoint,
    read_fcidump,
    run,
    sa_casscf,
    synthetic_fixture,
    transform_to_mo,
)

__all__ = [
    "ActiveSpaceSpec",
    "BasisTag",
    "FrozenCoreHamiltonian",
    "GateCount",
    "IntegralSet",
    "InvariantError",
    "NumericalError",
    "ParseError",
    "ReferenceResult",
    "RunResult",
    "build_frozen_core",
    "casci_energies",
    "cli",
    "cone_energies",
    "count_gates",
    "molecular_like_integrals",
    "n_parameters",
    "read_aoint",
    "read_fcidump",
    "run",
    "sa_casscf",
    "synthetic_fixture",
    "transform_to_mo",
]
