"""QSAT decisions, the diagonal oracle and their agreement."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qsatlab.checker import (
    PromiseConfig,
    default_epsilon,
    diagonal_oracle,
    qsat_decide,
    verdict_to_json,
)
from qsatlab.errors import (
    DimensionMismatchError,
    EmptyInstanceError,
    NotDiagonalError,
)
from qsatlab.exact import GaussianRational
from qsatlab.formula import Evaluation, parse_dimacs, satisfying_evaluations
from qsatlab.linalg import DenseMatrix, zero_matrix
from qsatlab.qassign import (
    EmbeddingMode,
    QuantumAssignment,
    quantum_assignment,
    residual,
)

V101 = Evaluation((1, 0, 1))


def _example1_assignments(ex1, mode=EmbeddingMode.LITERAL, v=V101):
    return [quantum_assignment(ex1, i, v, mode) for i in (1, 2)]


def _synthetic(matrix, index=1) -> QuantumAssignment:
    return QuantumAssignment(
        clause_index=index,
        mode=EmbeddingMode.ALIGNED,
        scale=GaussianRational(1),
        clause_vars=(),
        matrix=matrix,
    )


CFG3 = PromiseConfig.for_qubits(3)


# ---------------------------------------------------------------------------
# PromiseConfig
# ---------------------------------------------------------------------------

def test_promise_config_validation():
    with pytest.raises(ValueError):
        PromiseConfig(epsilon=0.0)
    with pytest.raises(ValueError):
        PromiseConfig(epsilon=1e-3, tol=-1.0)
    with pytest.raises(ValueError):
        PromiseConfig(epsilon=1e-10, tol=1e-9)
    assert default_epsilon(3) == 1.0 / (8 * 27)


# ---------------------------------------------------------------------------
# qsat_decide
# ---------------------------------------------------------------------------

def test_decide_example1_literal_unsatisfiable(ex1):
    verdict = qsat_decide(_example1_assignments(ex1), CFG3)
    assert not verdict.satisfiable
    assert verdict.witness is None
    assert verdict.lambda_min == 1.0
    assert verdict.gap_lower == 0.5
    assert verdict.gap_upper == 1.0
    assert verdict.promise_met  # 0.5 >= 1/216


def test_decide_example1_aligned_satisfiable(ex1):
    verdict = qsat_decide(_example1_assignments(ex1, EmbeddingMode.ALIGNED), CFG3)
    assert verdict.satisfiable
    w = verdict.witness
    assert [i for i, e in enumerate(w.entries) if bool(e)] == [5]  # |101>
    for q in _example1_assignments(ex1, EmbeddingMode.ALIGNED):
        assert residual(q, w) == 0


def test_decide_single_assignment_always_satisfiable(ex1):
    for v in satisfying_evaluations(ex1):
        for mode in EmbeddingMode:
            q = quantum_assignment(ex1, 1, v, mode)
            assert qsat_decide([q], CFG3).satisfiable


def test_decide_validates_input(ex1):
    with pytest.raises(EmptyInstanceError):
        qsat_decide([], CFG3)
    f2 = parse_dimacs("p cnf 2 1\n1 0\n")
    q_small = quantum_assignment(f2, 1, Evaluation((1, 0)), EmbeddingMode.LITERAL)
    q_big = _example1_assignments(ex1)[0]
    with pytest.raises(DimensionMismatchError):
        qsat_decide([q_small, q_big], CFG3)


def test_decide_scale_invariance(ex1):
    base = qsat_decide(_example1_assignments(ex1), CFG3)
    scaled = [
        quantum_assignment(ex1, 1, V101, EmbeddingMode.LITERAL, a=GaussianRational(7)),
        quantum_assignment(ex1, 2, V101, EmbeddingMode.LITERAL, a=0.5 + 0.5j),
    ]
    verdict = qsat_decide(scaled, CFG3)
    assert verdict.satisfiable == base.satisfiable
    assert abs(verdict.lambda_min - base.lambda_min) < 1e-9


def test_decide_exact_witness_residuals_zero(ex1):
    verdict = qsat_decide(_example1_assignments(ex1, EmbeddingMode.ALIGNED), CFG3)
    for q in _example1_assignments(ex1, EmbeddingMode.ALIGNED):
        assert residual(q, verdict.witness) == 0  # exact path: exactly zero


# ---------------------------------------------------------------------------
# diagonal_oracle
# ---------------------------------------------------------------------------

def test_oracle_example1(ex1):
    lit = diagonal_oracle(_example1_assignments(ex1))
    assert not lit.satisfiable and lit.lambda_min == 1.0
    alg = diagonal_oracle(_example1_assignments(ex1, EmbeddingMode.ALIGNED))
    assert alg.satisfiable
    assert [i for i, e in enumerate(alg.witness.entries) if bool(e)] == [5]


def test_oracle_all_zero_matrices():
    verdict = diagonal_oracle([_synthetic(zero_matrix(4))])
    assert verdict.satisfiable
    assert [i for i, e in enumerate(verdict.witness.entries) if bool(e)] == [0]
    assert verdict.lambda_min == 0.0


def test_oracle_rejects_non_diagonal():
    dense = DenseMatrix.from_rows([[1, 1], [1, 1]])
    with pytest.raises(NotDiagonalError):
        diagonal_oracle([_synthetic(dense)])


def test_oracle_accepts_full_storage_diagonal():
    full = DenseMatrix.from_rows([[1, 0], [0, 0]])
    verdict = diagonal_oracle([_synthetic(full)])
    assert verdict.satisfiable


# ---------------------------------------------------------------------------
# Agreement and monotonicity properties
# ---------------------------------------------------------------------------

diag_entries = st.lists(st.sampled_from([0, 1, 2]), min_size=4, max_size=4)


@settings(max_examples=60)
@given(st.lists(diag_entries, min_size=1, max_size=4))
def test_decide_agrees_with_oracle_on_diagonals(diags):
    assignments = [
        _synthetic(DenseMatrix.from_diagonal(d), index=i + 1)
        for i, d in enumerate(diags)
    ]
    cfg = PromiseConfig.for_qubits(2)
    decided = qsat_decide(assignments, cfg)
    oracled = diagonal_oracle(assignments, epsilon=cfg.epsilon)
    assert decided.satisfiable == oracled.satisfiable
    assert abs(decided.lambda_min - oracled.lambda_min) < 1e-9
    assert decided.promise_met == oracled.promise_met


@settings(max_examples=40)
@given(st.lists(diag_entries, min_size=2, max_size=4))
def test_adding_assignment_never_recovers_satisfiability(diags):
    assignments = [
        _synthetic(DenseMatrix.from_diagonal(d), index=i + 1)
        for i, d in enumerate(diags)
    ]
    cfg = PromiseConfig.for_qubits(2)
    previous = True
    for upto in range(1, len(assignments) + 1):
        now = qsat_decide(assignments[:upto], cfg).satisfiable
        assert not (now and not previous)  # unsat never flips back to sat
        previous = now


def test_verdict_json_schema(ex1):
    verdict = qsat_decide(_example1_assignments(ex1), CFG3)
    blob = verdict_to_json(verdict, epsilon=CFG3.epsilon, mode="literal", evaluation="101")
    assert set(blob) == {
        "satisfiable",
        "witness",
        "lambda_min",
        "gap_lower",
        "gap_upper",
        "epsilon",
        "promise_met",
        "mode",
        "evaluation",
    }
    assert blob["satisfiable"] is False and blob["witness"] is None
    sat = qsat_decide(_example1_assignments(ex1, EmbeddingMode.ALIGNED), CFG3)
    blob = verdict_to_json(sat, epsilon=CFG3.epsilon)
    assert blob["witness"] == [[0, 0]] * 5 + [[1, 0]] + [[0, 0]] * 2
