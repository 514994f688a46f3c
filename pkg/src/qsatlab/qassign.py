"""Clause projector matrices built from a formula and a satisfying evaluation.

Two embeddings are provided.  The *literal* embedding follows the defining
formula verbatim: the clause projector occupies the leading k tensor slots
regardless of which variables the clause actually mentions.  That
misalignment is deliberate and must not be repaired here; it is exactly the
phenomenon the experiments probe.  The *aligned* embedding is the corrected
contrast variant: it places the projector on the qubit positions of the
clause's own variables, built by direct diagonal index arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import linalg
from .errors import (
    DimensionMismatchError,
    PartialEvaluationError,
    SourceUnsatisfiedError,
    ZeroScaleError,
)
from .exact import GR_ONE, GR_ZERO, GaussianRational
from .formula import Evaluation, Formula, evaluate
from .linalg import DenseMatrix, StateVector


class EmbeddingMode(str, Enum):
    LITERAL = "literal"
    ALIGNED = "aligned"


@dataclass(frozen=True)
class QuantumAssignment:
    """One clause projector (scaled by a) together with how it was built."""

    clause_index: int
    mode: EmbeddingMode
    scale: GaussianRational | complex
    clause_vars: tuple[int, ...]
    matrix: DenseMatrix

    @property
    def dim(self) -> int:
        return self.matrix.dim

    def normalized_matrix(self) -> DenseMatrix:
        """The underlying projector with the scale divided back out."""
        if isinstance(self.scale, GaussianRational):
            return self.matrix.scaled(GR_ONE / self.scale)
        return self.matrix.scaled(1.0 / self.scale)


def _clause_bits(f: Formula, i: int, v: Evaluation) -> tuple[tuple[int, ...], tuple[int, ...]]:
    clause = f.clause(i)
    clause_vars = clause.variables
    return clause_vars, tuple(v.value(x) for x in clause_vars)


def quantum_assignment(
    f: Formula,
    i: int,
    v: Evaluation,
    mode: EmbeddingMode = EmbeddingMode.LITERAL,
    a=None,
) -> QuantumAssignment:
    """Build the matrix attached to clause i for a satisfying evaluation v.

    literal mode computes a*(I_2^k - |v(x_i1)..v(x_ik)><..|) (x) I_2^(n-k)
    with the clause variables taken in order of first occurrence.  aligned
    mode produces the diagonal matrix whose entry vanishes exactly on basis
    states that agree with v on the clause's variables (at their true qubit
    positions).
    """
    scale = GR_ONE if a is None else linalg.as_scalar(a)
    if not bool(scale):
        raise ZeroScaleError("quantum assignment scale must be nonzero")
    if evaluate(f, v) != 1:
        raise SourceUnsatisfiedError(
            f"evaluation {v} does not satisfy {f}; a quantum assignment needs a satisfying source"
        )
    mode = EmbeddingMode(mode)
    clause_vars, bits = _clause_bits(f, i, v)
    k, n = f.k, f.n

    if mode is EmbeddingMode.LITERAL:
        projector = linalg.subtract(
            linalg.identity(2 ** k), linalg.outer(linalg.basis_vector(bits))
        )
        matrix = linalg.kron(projector, linalg.identity(2 ** (n - k)))
    else:
        positions = [n - x for x in clause_vars]  # x_t occupies bit n-t
        diag = []
        for j in range(2 ** n):
            hit = all(((j >> p) & 1) == b for p, b in zip(positions, bits))
            diag.append(GR_ZERO if hit else GR_ONE)
        matrix = DenseMatrix.from_diagonal(diag)

    matrix = matrix.scaled(scale)
    return QuantumAssignment(
        clause_index=i,
        mode=mode,
        scale=scale,
        clause_vars=clause_vars,
        matrix=matrix,
    )


def natural_conversion(f: Formula, v: Evaluation) -> StateVector:
    """The basis vector |v(x_1)..v(x_n)> for a total evaluation."""
    if v.n != f.n:
        raise PartialEvaluationError(
            f"evaluation covers {v.n} variables, formula declares {f.n}"
        )
    return linalg.basis_vector(v.bits)


def residual(q: QuantumAssignment, w: StateVector):
    """<w| matrix |w>; zero means w is annihilated by this assignment."""
    if q.dim != w.dim:
        raise DimensionMismatchError(f"assignment dim {q.dim} vs vector dim {w.dim}")
    return linalg.inner(w, q.matrix.matvec(w))
