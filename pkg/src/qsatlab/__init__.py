"""qsatlab: a verification lab for the logical formulation of quantum
satisfiability over CNF formulas."""

from .checker import PromiseConfig, QSatVerdict, diagonal_oracle, qsat_decide
from .errors import QsatLabError
from .exact import GaussianRational
from .formula import (
    Clause,
    Evaluation,
    Formula,
    Literal,
    dimension,
    evaluate,
    parse_dimacs,
    satisfying_evaluations,
    to_dimacs,
)
from .linalg import (
    DenseMatrix,
    StateVector,
    basis_vector,
    common_nullspace,
    inner,
    kron,
    min_eigen_psd,
    outer,
)
from .qassign import (
    EmbeddingMode,
    QuantumAssignment,
    natural_conversion,
    quantum_assignment,
    residual,
)

__all__ = [
    "Clause",
    "DenseMatrix",
    "EmbeddingMode",
    "Evaluation",
    "Formula",
    "GaussianRational",
    "Literal",
    "PromiseConfig",
    "QSatVerdict",
    "QsatLabError",
    "QuantumAssignment",
    "StateVector",
    "basis_vector",
    "common_nullspace",
    "diagonal_oracle",
    "dimension",
    "evaluate",
    "inner",
    "kron",
    "min_eigen_psd",
    "natural_conversion",
    "outer",
    "parse_dimacs",
    "qsat_decide",
    "quantum_assignment",
    "residual",
    "satisfying_evaluations",
    "to_dimacs",
]

__version__ = "0.1.0"
