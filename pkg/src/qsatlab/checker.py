"""Quantum satisfiability decisions over sets of clause projectors.

The decision itself is a common-null-space question: the instance is
satisfiable iff some vector is annihilated by every (scale-normalized)
matrix.  Unsatisfiable instances are reported with honest gap bounds
[lambda_min/m, lambda_min] on min over unit w of max over i of <w|P_i|w>;
computing that min-max exactly is out of reach in general, and at desk scale
the sandwich is tight enough to check the promise because the instances have
integer lambda_min.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .errors import (
    DimensionMismatchError,
    EmptyInstanceError,
    NotDiagonalError,
)
from .linalg import DEFAULT_TOL, StateVector
from .qassign import QuantumAssignment


def default_epsilon(n_qubits: int) -> float:
    """Promise gap 1/(8 n^3): comfortably 1/poly(n) and far above tol."""
    n = max(1, n_qubits)
    return 1.0 / (8.0 * n ** 3)


@dataclass(frozen=True)
class PromiseConfig:
    epsilon: float
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.tol >= self.epsilon:
            raise ValueError(
                f"tol {self.tol} must stay below the promise gap epsilon {self.epsilon}"
            )

    @classmethod
    def for_qubits(cls, n: int, tol: float = DEFAULT_TOL) -> "PromiseConfig":
        return cls(epsilon=default_epsilon(n), tol=tol)


@dataclass(frozen=True)
class QSatVerdict:
    satisfiable: bool
    witness: StateVector | None
    lambda_min: float
    gap_lower: float
    gap_upper: float
    promise_met: bool


def _validate_instance(assignments: Sequence[QuantumAssignment]) -> int:
    if not assignments:
        raise EmptyInstanceError("cannot decide an empty set of quantum assignments")
    dim = assignments[0].dim
    for q in assignments:
        if q.dim != dim:
            raise DimensionMismatchError(
                f"assignments of dims {dim} and {q.dim} in one instance"
            )
    return dim


def _verdict(satisfiable: bool, witness, lambda_min: float, m: int, epsilon: float) -> QSatVerdict:
    gap_lower = lambda_min / m
    gap_upper = lambda_min
    return QSatVerdict(
        satisfiable=satisfiable,
        witness=witness,
        lambda_min=lambda_min,
        gap_lower=gap_lower,
        gap_upper=gap_upper,
        promise_met=satisfiable or gap_lower >= epsilon,
    )


def qsat_decide(
    assignments: Sequence[QuantumAssignment], cfg: PromiseConfig
) -> QSatVerdict:
    """Decide satisfiability of an instance via the common null space.

    Scales are divided out first, so the verdict is invariant under nonzero
    rescaling of individual assignments.  The witness, when present, is the
    first basis vector of the common kernel; lambda_min is the smallest
    eigenvalue of the sum of normalized matrices.
    """
    _validate_instance(assignments)
    normalized = [q.normalized_matrix() for q in assignments]

    basis = linalg.common_nullspace(normalized, tol=cfg.tol)
    satisfiable = bool(basis)
    witness = basis[0] if satisfiable else None

    total = normalized[0]
    for mat in normalized[1:]:
        total = total + mat
    lambda_min = linalg.min_eigen_psd(total, tol=cfg.tol)

    return _verdict(satisfiable, witness, lambda_min, len(assignments), cfg.epsilon)


def diagonal_oracle(
    assignments: Sequence[QuantumAssignment],
    epsilon: float | None = None,
    tol: float = DEFAULT_TOL,
) -> QSatVerdict:
    """Brute-force oracle for all-diagonal instances.

    Scans basis indices directly: satisfiable iff some index is zero on every
    normalized diagonal.  Deliberately shares no code with the elimination
    path so the two can cross-check each other.
    """
    dim = _validate_instance(assignments)
    diags = []
    for q in assignments:
        mat = q.normalized_matrix()
        if not mat.is_diagonal():
            raise NotDiagonalError(
                f"assignment for clause {q.clause_index} is not diagonal"
            )
        diags.append(mat.diagonal())

    n_qubits = max(1, dim.bit_length() - 1)
    if epsilon is None:
        epsilon = default_epsilon(n_qubits)

    witness_index = None
    lambda_min = None
    for j in range(dim):
        column = [d[j] for d in diags]
        if witness_index is None and all(not bool(e) for e in column):
            witness_index = j
        total = sum(_real(e) for e in column)
        if lambda_min is None or total < lambda_min:
            lambda_min = total

    satisfiable = witness_index is not None
    witness = None
    if satisfiable:
        bits = [(witness_index >> (dim.bit_length() - 2 - t)) & 1 for t in range(dim.bit_length() - 1)]
        witness = linalg.basis_vector(bits) if bits else StateVector([1])
    return _verdict(satisfiable, witness, float(lambda_min), len(assignments), epsilon)


def _real(e) -> float:
    value = complex(e)
    return value.real


def verdict_to_json(
    verdict: QSatVerdict,
    epsilon: float,
    mode: str | None = None,
    evaluation: str | None = None,
) -> dict:
    """The external verdict schema used by the CLI."""
    return {
        "satisfiable": verdict.satisfiable,
        "witness": linalg.vector_to_json(verdict.witness) if verdict.witness else None,
        "lambda_min": verdict.lambda_min,
        "gap_lower": verdict.gap_lower,
        "gap_upper": verdict.gap_upper,
        "epsilon": epsilon,
        "promise_met": verdict.promise_met,
        "mode": mode,
        "evaluation": evaluation,
    }
