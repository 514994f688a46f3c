"""Shared fixtures and independent oracles.

The oracle helpers work on DIMACS-style signed-integer clauses and raw index
arithmetic, deliberately sharing no code with the package, so they provide a
second route for every derived expectation.
"""
from itertools import product

import numpy as np
import pytest

from qsatlab.formula import parse_dimacs

EX1_DIMACS = "p cnf 3 2\n1 -2 0\n-1 3 0\n"


@pytest.fixture
def ex1():
    return parse_dimacs(EX1_DIMACS)


# ---------------------------------------------------------------------------
# Truth-table oracles over signed-int clauses
# ---------------------------------------------------------------------------

def oracle_satisfies(signed_clauses, bits) -> bool:
    def lit_val(lit):
        v = bits[abs(lit) - 1]
        return v if lit > 0 else 1 - v

    return all(any(lit_val(l) for l in cl) for cl in signed_clauses)


def oracle_satisfying_bitstrings(signed_clauses, n):
    out = []
    for bits in product((0, 1), repeat=n):
        if oracle_satisfies(signed_clauses, bits):
            out.append("".join(map(str, bits)))
    return out


# ---------------------------------------------------------------------------
# Projector diagonal oracles by index arithmetic
# ---------------------------------------------------------------------------

def oracle_literal_diag(signed_clause, bits, n):
    """Diagonal of the leading-slot clause projector: zero where the leading
    k bits of the index equal the clause-ordered evaluation bits."""
    k = len(signed_clause)
    clause_bits = tuple(bits[abs(l) - 1] for l in signed_clause)
    diag = []
    for j in range(2 ** n):
        lead = tuple((j >> (n - 1 - t)) & 1 for t in range(k))
        diag.append(0 if lead == clause_bits else 1)
    return diag


def oracle_aligned_diag(signed_clause, bits, n):
    """Diagonal of the aligned projector: zero where the index bits at the
    clause variables' own positions equal the evaluation bits."""
    clause_vars = [abs(l) for l in signed_clause]
    clause_bits = tuple(bits[v - 1] for v in clause_vars)
    diag = []
    for j in range(2 ** n):
        got = tuple((j >> (n - v)) & 1 for v in clause_vars)
        diag.append(0 if got == clause_bits else 1)
    return diag


def oracle_natural_index(bits) -> int:
    idx = 0
    for b in bits:
        idx = idx * 2 + b
    return idx


# ---------------------------------------------------------------------------
# Subspace comparison
# ---------------------------------------------------------------------------

def max_mutual_projection_residual(basis_a, basis_b) -> float:
    """Largest distance of any (normalized) vector of one basis from the span
    of the other; 0 means the two bases span the same subspace."""
    cols_a = [v.to_numpy() for v in basis_a]
    cols_b = [v.to_numpy() for v in basis_b]
    if len(cols_a) != len(cols_b):
        return float("inf")
    if not cols_a:
        return 0.0
    A = np.array(cols_a, dtype=complex).T
    B = np.array(cols_b, dtype=complex).T
    A = A / np.linalg.norm(A, axis=0)
    B = B / np.linalg.norm(B, axis=0)
    Qa, _ = np.linalg.qr(A)
    Qb, _ = np.linalg.qr(B)
    res_b = np.linalg.norm(B - Qa @ (Qa.conj().T @ B), axis=0)
    res_a = np.linalg.norm(A - Qb @ (Qb.conj().T @ A), axis=0)
    return float(max(res_a.max(), res_b.max()))


def spans_equal(basis_a, basis_b, tol=1e-9) -> bool:
    return max_mutual_projection_residual(basis_a, basis_b) < tol
