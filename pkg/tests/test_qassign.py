"""Quantum assignment construction, the natural conversion and residuals."""
from itertools import product

import numpy as np
import pytest

from qsatlab.checker import PromiseConfig, qsat_decide
from qsatlab.errors import (
    DimensionMismatchError,
    PartialEvaluationError,
    SourceUnsatisfiedError,
    ZeroScaleError,
)
from qsatlab.exact import GaussianRational
from qsatlab.formula import Evaluation, parse_dimacs, satisfying_evaluations
from qsatlab.linalg import basis_vector, common_nullspace
from qsatlab.qassign import (
    EmbeddingMode,
    natural_conversion,
    quantum_assignment,
    residual,
)

from conftest import (
    max_mutual_projection_residual,
    oracle_aligned_diag,
    oracle_literal_diag,
    oracle_natural_index,
)

V101 = Evaluation((1, 0, 1))


def _diag_ints(matrix):
    return [int(e.re) for e in matrix.diagonal()]


# ---------------------------------------------------------------------------
# quantum_assignment
# ---------------------------------------------------------------------------

def test_literal_assignments_match_paper(ex1):
    q1 = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL)
    q2 = quantum_assignment(ex1, 2, V101, EmbeddingMode.LITERAL)
    assert _diag_ints(q1.matrix) == [1, 1, 1, 1, 0, 0, 1, 1]
    assert _diag_ints(q2.matrix) == [1, 1, 1, 1, 1, 1, 0, 0]
    assert q1.clause_vars == (1, 2)
    assert q2.clause_vars == (1, 3)
    assert q1.matrix.diagonal_hint and q1.matrix.exact


def test_aligned_assignment_derived_diagonal(ex1):
    q2 = quantum_assignment(ex1, 2, V101, EmbeddingMode.ALIGNED)
    # Zeros exactly at basis states with x=1, z=1: indices 5 and 7.
    assert _diag_ints(q2.matrix) == [1, 1, 1, 1, 1, 0, 1, 0]
    assert _diag_ints(q2.matrix) == oracle_aligned_diag([-1, 3], (1, 0, 1), 3)


def test_assignments_match_index_oracles(ex1):
    for i, signed in ((1, [1, -2]), (2, [-1, 3])):
        for v in satisfying_evaluations(ex1):
            lit = quantum_assignment(ex1, i, v, EmbeddingMode.LITERAL)
            alg = quantum_assignment(ex1, i, v, EmbeddingMode.ALIGNED)
            assert _diag_ints(lit.matrix) == oracle_literal_diag(signed, v.bits, 3)
            assert _diag_ints(alg.matrix) == oracle_aligned_diag(signed, v.bits, 3)


def test_assignment_requires_satisfying_evaluation(ex1):
    with pytest.raises(SourceUnsatisfiedError):
        quantum_assignment(ex1, 1, Evaluation((1, 1, 0)), EmbeddingMode.LITERAL)


def test_assignment_rejects_zero_scale(ex1):
    with pytest.raises(ZeroScaleError):
        quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL, a=0)


def test_assignment_scale_applied(ex1):
    q = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL, a=GaussianRational(3))
    assert _diag_ints(q.matrix) == [3, 3, 3, 3, 0, 0, 3, 3]
    assert q.scale == 3
    qc = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL, a=2j)
    assert not qc.matrix.exact
    assert np.allclose(qc.matrix.diagonal(), [2j, 2j, 2j, 2j, 0, 0, 2j, 2j])


def test_assignment_zero_count_and_trace_invariants():
    # Every constructed matrix has exactly 2^(n-k) zero diagonal entries and
    # trace a * (2^n - 2^(n-k)).
    for dimacs, n, k in [
        ("p cnf 3 2\n1 -2 0\n-1 3 0\n", 3, 2),
        ("p cnf 2 2\n1 0\n2 0\n", 2, 1),
        ("p cnf 4 2\n2 4 0\n1 3 0\n", 4, 2),
    ]:
        f = parse_dimacs(dimacs)
        for v in satisfying_evaluations(f):
            for i in range(1, f.m + 1):
                for mode in EmbeddingMode:
                    q = quantum_assignment(f, i, v, mode, a=GaussianRational(2))
                    diag = q.matrix.diagonal()
                    zeros = sum(1 for e in diag if not bool(e))
                    assert zeros == 2 ** (n - k)
                    assert q.matrix.trace() == 2 * (2 ** n - 2 ** (n - k))


def test_literal_equals_aligned_for_leading_clause():
    # Clause over x1..xk in clause order: the two embeddings coincide.
    f = parse_dimacs("p cnf 3 2\n1 2 0\n2 3 0\n")
    for v in satisfying_evaluations(f):
        lit = quantum_assignment(f, 1, v, EmbeddingMode.LITERAL)
        alg = quantum_assignment(f, 1, v, EmbeddingMode.ALIGNED)
        assert lit.matrix == alg.matrix


def test_scale_invariance_of_kernel(ex1):
    base = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL)
    for a in (GaussianRational(5), GaussianRational(1, 2), 0.25 + 0j):
        scaled = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL, a=a)
        k_base = common_nullspace([base.normalized_matrix()])
        k_scaled = common_nullspace([scaled.normalized_matrix()])
        assert max_mutual_projection_residual(k_base, k_scaled) < 1e-9


# ---------------------------------------------------------------------------
# natural_conversion
# ---------------------------------------------------------------------------

def test_natural_conversion_examples(ex1):
    w = natural_conversion(ex1, V101)
    assert [i for i, e in enumerate(w.entries) if bool(e)] == [5]
    f2 = parse_dimacs("p cnf 2 0\n")
    assert list(natural_conversion(f2, Evaluation((0, 0))).to_numpy()) == [1, 0, 0, 0]
    f1 = parse_dimacs("p cnf 1 1\n1 0\n")
    assert list(natural_conversion(f1, Evaluation((1,))).to_numpy()) == [0, 1]


def test_natural_conversion_requires_total(ex1):
    with pytest.raises(PartialEvaluationError):
        natural_conversion(ex1, Evaluation((1, 0)))


# ---------------------------------------------------------------------------
# residual
# ---------------------------------------------------------------------------

def test_residual_examples(ex1):
    q1 = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL)
    q2 = quantum_assignment(ex1, 2, V101, EmbeddingMode.LITERAL)
    w = natural_conversion(ex1, V101)
    assert residual(q1, w) == 0
    assert residual(q2, w) == 1
    for kernel_vec in common_nullspace([q1.matrix]):
        assert residual(q1, kernel_vec) == 0


def test_residual_dimension_mismatch(ex1):
    q1 = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL)
    with pytest.raises(DimensionMismatchError):
        residual(q1, basis_vector((1, 0)))


def test_residual_is_norm_squared_of_projection(ex1):
    # With scale 1 the matrix is a projector: residual = ||M w||^2 >= 0 and
    # residual == 0 iff M w == 0.
    from qsatlab.linalg import StateVector

    q1 = quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL)
    rng = np.random.default_rng(11)
    for _ in range(25):
        w = StateVector(rng.normal(size=8) + 1j * rng.normal(size=8))
        r = residual(q1, w)
        mw = q1.matrix.matvec(w).to_numpy()
        assert abs(complex(r).imag) < 1e-12
        assert complex(r).real >= -1e-12
        assert np.isclose(complex(r).real, float(np.linalg.norm(mw) ** 2))
        assert (abs(complex(r)) < 1e-12) == bool(np.allclose(mw, 0.0))


def test_aligned_soundness_exhaustive_small():
    # For every satisfiable 2-CNF over n=3 with m<=2 clauses and every
    # satisfying evaluation, the aligned residuals at the natural conversion
    # vanish exactly.  (The acceptance suite runs the full m<=3 version.)
    from qsatlab.experiments import SweepConfig, generate_formulas

    for m in (1, 2):
        for f in generate_formulas(SweepConfig(k=2, n=3, m=m)):
            for v in satisfying_evaluations(f):
                w = natural_conversion(f, v)
                for i in range(1, f.m + 1):
                    q = quantum_assignment(f, i, v, EmbeddingMode.ALIGNED)
                    assert residual(q, w) == 0


def test_literal_verdict_scale_invariant(ex1):
    cfg = PromiseConfig.for_qubits(3)
    sats = satisfying_evaluations(ex1)
    for v in sats:
        plain = qsat_decide(
            [quantum_assignment(ex1, i, v, EmbeddingMode.LITERAL) for i in (1, 2)], cfg
        )
        rescaled = qsat_decide(
            [
                quantum_assignment(
                    ex1, i, v, EmbeddingMode.LITERAL, a=GaussianRational(i + 1)
                )
                for i in (1, 2)
            ],
            cfg,
        )
        assert plain.satisfiable == rescaled.satisfiable
