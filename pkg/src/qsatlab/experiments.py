"""Golden reproduction, proposition falsification and sweep harness.

The proposition verifier is a falsifier, not an assertion: it enumerates
every satisfying evaluation (optionally every literal ordering of the second
clause) and reports per-instance verdicts, surfacing counterexamples instead
of assuming the claimed universality.
"""
from __future__ import annotations

import csv
import io
import json
import os
import random
import tempfile
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from typing import Sequence

from . import linalg
from .checker import PromiseConfig, QSatVerdict, qsat_decide
from .errors import (
    BoundsExceededError,
    EqualVarSetsError,
    GoldenMismatchError,
    UnsatisfiableFormulaError,
)
from .formula import (
    Clause,
    Evaluation,
    Formula,
    Literal,
    evaluate,
    parse_dimacs,
    satisfying_evaluations,
    to_dimacs,
)
from .linalg import DenseMatrix, StateVector
from .qassign import EmbeddingMode, natural_conversion, quantum_assignment, residual

EXAMPLE1_DIMACS = "p cnf 3 2\n1 -2 0\n-1 3 0\n"
EXAMPLE1_EVAL = Evaluation((1, 0, 1))

# Frozen golden values: the two 4x4 outer products, the two 8x8 projector
# diagonals, the converted vector and its residuals, all integer-exact.
GOLDEN_OUTER_XY = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0]]
GOLDEN_OUTER_XZ = [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
GOLDEN_PROJ_1_DIAG = (1, 1, 1, 1, 0, 0, 1, 1)
GOLDEN_PROJ_2_DIAG = (1, 1, 1, 1, 1, 1, 0, 0)
GOLDEN_VECTOR_INDEX = 5
GOLDEN_RESIDUALS = (0, 1)


def example1_formula() -> Formula:
    return parse_dimacs(EXAMPLE1_DIMACS)


@dataclass(frozen=True)
class Example1Report:
    formula: Formula
    outer_xy: DenseMatrix
    outer_xz: DenseMatrix
    projector_1: DenseMatrix
    projector_2: DenseMatrix
    vector: StateVector
    residuals: tuple
    checks: dict[str, bool]

    @property
    def matched(self) -> bool:
        return all(self.checks.values())


def _matches_grid(matrix: DenseMatrix, grid) -> bool:
    dim = len(grid)
    if matrix.dim != dim:
        return False
    return all(
        matrix.entry(i, j) == grid[i][j] for i in range(dim) for j in range(dim)
    )


def _matches_diag(matrix: DenseMatrix, diag) -> bool:
    if matrix.dim != len(diag):
        return False
    if not matrix.is_diagonal():
        return False
    return all(matrix.entry(j, j) == diag[j] for j in range(len(diag)))


def verify_example1() -> Example1Report:
    """Rebuild every displayed object of the worked two-clause example and
    compare entrywise against the frozen integer golden values.

    Raises GoldenMismatchError (report attached) if any entry differs.
    """
    f = example1_formula()
    v = EXAMPLE1_EVAL

    assign_1 = quantum_assignment(f, 1, v, EmbeddingMode.LITERAL)
    assign_2 = quantum_assignment(f, 2, v, EmbeddingMode.LITERAL)
    outer_xy = linalg.outer(linalg.basis_vector((v.value(1), v.value(2))))
    outer_xz = linalg.outer(linalg.basis_vector((v.value(1), v.value(3))))
    w = natural_conversion(f, v)
    residuals = (residual(assign_1, w), residual(assign_2, w))

    checks = {
        "outer_xy": _matches_grid(outer_xy, GOLDEN_OUTER_XY),
        "outer_xz": _matches_grid(outer_xz, GOLDEN_OUTER_XZ),
        "projector_1": _matches_diag(assign_1.matrix, GOLDEN_PROJ_1_DIAG),
        "projector_2": _matches_diag(assign_2.matrix, GOLDEN_PROJ_2_DIAG),
        "vector": all(
            w.entries[j] == (1 if j == GOLDEN_VECTOR_INDEX else 0) for j in range(w.dim)
        ),
        "residuals": (
            residuals[0] == GOLDEN_RESIDUALS[0] and residuals[1] == GOLDEN_RESIDUALS[1]
        ),
    }
    report = Example1Report(
        formula=f,
        outer_xy=outer_xy,
        outer_xz=outer_xz,
        projector_1=assign_1.matrix,
        projector_2=assign_2.matrix,
        vector=w,
        residuals=residuals,
        checks=checks,
    )
    if not report.matched:
        failed = sorted(name for name, ok in checks.items() if not ok)
        raise GoldenMismatchError(f"golden checks failed: {', '.join(failed)}", report)
    return report


# ---------------------------------------------------------------------------
# Proposition witness search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PropositionWitness:
    evaluation: Evaluation
    residual_p: object
    residual_q: object


@dataclass(frozen=True)
class PropositionReport:
    formula: Formula
    clause_pair: tuple[int, int]
    witnesses: tuple[PropositionWitness, ...]
    natural_successes: tuple[Evaluation, ...]
    proposition_holds: bool
    permutations_searched: bool
    # Residuals of every satisfying evaluation at the given literal ordering;
    # this is the evidence trail when the proposition fails (all rows zero).
    residual_table: tuple[PropositionWitness, ...] = ()

    def reverify(self) -> bool:
        """Recompute every witness from scratch; used as a report-time check."""
        f = self.formula
        p, q = self.clause_pair
        for wit in self.witnesses:
            if evaluate(f, wit.evaluation) != 1:
                return False
            rp, rq = _pair_residuals(f, p, q, wit.evaluation)
            if self.permutations_searched:
                ok = bool(rp) or any(
                    bool(_pair_residuals(_permute_clause(f, q, perm), p, q, wit.evaluation)[1])
                    for perm in permutations(range(f.k))
                )
            else:
                ok = bool(rp) or bool(rq)
            if not ok:
                return False
        return True


def _permute_clause(f: Formula, index: int, perm: Sequence[int]) -> Formula:
    clause = f.clause(index)
    new_literals = tuple(clause.literals[i] for i in perm)
    clauses = list(f.clauses)
    clauses[index - 1] = Clause(new_literals)
    return Formula(n=f.n, k=f.k, clauses=tuple(clauses))


def _pair_residuals(f: Formula, p: int, q: int, v: Evaluation):
    w = natural_conversion(f, v)
    rp = residual(quantum_assignment(f, p, v, EmbeddingMode.LITERAL), w)
    rq = residual(quantum_assignment(f, q, v, EmbeddingMode.LITERAL), w)
    return rp, rq


def _all_literal_residuals_zero(f: Formula, v: Evaluation) -> bool:
    w = natural_conversion(f, v)
    return all(
        not bool(residual(quantum_assignment(f, i, v, EmbeddingMode.LITERAL), w))
        for i in range(1, f.m + 1)
    )


def proposition_witness_search(
    f: Formula, p: int, q: int, permute_literals: bool = False
) -> PropositionReport:
    """Search satisfying evaluations whose natural conversion leaves a nonzero
    residual on clause p or clause q in the literal embedding.

    With permute_literals the search additionally ranges over every literal
    ordering of clause q (the ordering dependence the original argument
    exploits); an evaluation is a witness if any ordering yields a nonzero
    residual.  The identity ordering is tried first, so enabling the switch
    never loses a witness.
    """
    clause_p, clause_q = f.clause(p), f.clause(q)
    if clause_p.var_set() == clause_q.var_set():
        raise EqualVarSetsError(
            f"clauses {p} and {q} share the variable set {set(clause_p.var_set())}"
        )
    sats = satisfying_evaluations(f)
    if not sats:
        raise UnsatisfiableFormulaError(f"{f} has no satisfying evaluation")

    orderings = list(permutations(range(f.k))) if permute_literals else [tuple(range(f.k))]
    witnesses: list[PropositionWitness] = []
    natural_successes: list[Evaluation] = []
    table: list[PropositionWitness] = []
    for v in sats:
        if _all_literal_residuals_zero(f, v):
            natural_successes.append(v)
        table.append(PropositionWitness(v, *_pair_residuals(f, p, q, v)))
        for perm in orderings:
            variant = f if perm == tuple(range(f.k)) else _permute_clause(f, q, perm)
            rp, rq = _pair_residuals(variant, p, q, v)
            if bool(rp) or bool(rq):
                witnesses.append(PropositionWitness(v, rp, rq))
                break

    return PropositionReport(
        formula=f,
        clause_pair=(p, q),
        witnesses=tuple(witnesses),
        natural_successes=tuple(natural_successes),
        proposition_holds=bool(witnesses),
        permutations_searched=permute_literals,
        residual_table=tuple(table),
    )


def eligible_pairs(f: Formula) -> list[tuple[int, int]]:
    """Clause pairs (1-based, p < q) with distinct variable sets."""
    return [
        (p, q)
        for p, q in combinations(range(1, f.m + 1), 2)
        if f.clause(p).var_set() != f.clause(q).var_set()
    ]


def proposition_search_all_pairs(
    f: Formula, permute_literals: bool = False
) -> list[PropositionReport]:
    return [
        proposition_witness_search(f, p, q, permute_literals)
        for p, q in eligible_pairs(f)
    ]


# ---------------------------------------------------------------------------
# Instance generation
# ---------------------------------------------------------------------------

EXHAUSTIVE_LIMITS = (2, 4, 3)  # (max k, max n, max m) for exhaustive sweeps


@dataclass(frozen=True)
class SweepConfig:
    k: int
    n: int
    m: int
    mode: str = "exhaustive"
    seed: int = 0
    count: int = 0
    require_distinct_varsets: bool = False
    permute_literals: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"clause width k must be >= 1, got {self.k}")
        if self.k > self.n:
            raise ValueError(f"k={self.k} exceeds n={self.n}")
        if self.m < 0:
            raise ValueError(f"clause count m must be >= 0, got {self.m}")
        if self.mode not in ("exhaustive", "random"):
            raise ValueError(f"mode must be 'exhaustive' or 'random', got {self.mode!r}")
        if self.mode == "random" and self.count < 1:
            raise ValueError("random mode needs count >= 1")


def clause_universe(k: int, n: int) -> list[Clause]:
    """All canonical clauses: ascending variable combinations x sign patterns."""
    return [
        Clause(tuple(Literal(v, neg) for v, neg in zip(combo, signs)))
        for combo in combinations(range(1, n + 1), k)
        for signs in product((False, True), repeat=k)
    ]


def generate_formulas(
    cfg: SweepConfig, limits: tuple[int, int, int] = EXHAUSTIVE_LIMITS
) -> list[Formula]:
    """Concrete formula list for a sweep; deterministic for any fixed config.

    Exhaustive mode yields every formula made of m distinct canonical clauses
    (clauses listed in universe order, so no duplicates up to clause order);
    random mode draws `count` seeded samples of m distinct clauses.
    """
    universe = clause_universe(cfg.k, cfg.n)
    if cfg.m > len(universe):
        raise BoundsExceededError(
            f"m={cfg.m} exceeds the {len(universe)} distinct clauses of width {cfg.k} over n={cfg.n}"
        )
    if cfg.mode == "exhaustive":
        max_k, max_n, max_m = limits
        if cfg.k > max_k or cfg.n > max_n or cfg.m > max_m:
            raise BoundsExceededError(
                f"exhaustive sweep (k={cfg.k}, n={cfg.n}, m={cfg.m}) exceeds limits "
                f"k<={max_k}, n<={max_n}, m<={max_m}"
            )
        return [
            Formula(n=cfg.n, k=cfg.k, clauses=tuple(chosen))
            for chosen in combinations(universe, cfg.m)
        ]
    rng = random.Random(cfg.seed)
    out = []
    for _ in range(cfg.count):
        idxs = sorted(rng.sample(range(len(universe)), cfg.m))
        out.append(Formula(n=cfg.n, k=cfg.k, clauses=tuple(universe[i] for i in idxs)))
    return out


# ---------------------------------------------------------------------------
# Sweep
# ---------------------------------------------------------------------------

CSV_COLUMNS = [
    "formula_id",
    "dimacs",
    "k",
    "n",
    "m",
    "pair",
    "num_satisfying",
    "proposition_holds",
    "witness_eval",
    "residual_p",
    "residual_q",
    "literal_qsat",
    "aligned_qsat",
    "lambda_min_literal",
]


@dataclass(frozen=True)
class SweepRow:
    formula_id: int
    dimacs: str
    k: int
    n: int
    m: int
    pair: str
    num_satisfying: int
    proposition_holds: bool | None
    witness_eval: str
    residual_p: str
    residual_q: str
    literal_qsat: bool
    aligned_qsat: bool
    lambda_min_literal: float


@dataclass
class SweepReport:
    config: SweepConfig
    totals: dict = field(default_factory=dict)
    rows: list[SweepRow] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "config": {
                "k": self.config.k,
                "n": self.config.n,
                "m": self.config.m,
                "mode": self.config.mode,
                "seed": self.config.seed,
                "count": self.config.count,
                "require_distinct_varsets": self.config.require_distinct_varsets,
                "permute_literals": self.config.permute_literals,
            },
            "totals": dict(self.totals),
            "rows": [self._row_dict(r) for r in self.rows],
        }

    @staticmethod
    def _row_dict(r: SweepRow) -> dict:
        return {
            "formula_id": r.formula_id,
            "dimacs": r.dimacs,
            "k": r.k,
            "n": r.n,
            "m": r.m,
            "pair": r.pair,
            "num_satisfying": r.num_satisfying,
            "proposition_holds": r.proposition_holds,
            "witness_eval": r.witness_eval,
            "residual_p": r.residual_p,
            "residual_q": r.residual_q,
            "literal_qsat": r.literal_qsat,
            "aligned_qsat": r.aligned_qsat,
            "lambda_min_literal": r.lambda_min_literal,
        }

    def to_csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [
                    r.formula_id,
                    r.dimacs,
                    r.k,
                    r.n,
                    r.m,
                    r.pair,
                    r.num_satisfying,
                    _csv_bool(r.proposition_holds),
                    r.witness_eval,
                    r.residual_p,
                    r.residual_q,
                    _csv_bool(r.literal_qsat),
                    _csv_bool(r.aligned_qsat),
                    repr(r.lambda_min_literal),
                ]
            )
        return buf.getvalue()


def _csv_bool(value) -> str:
    if value is None:
        return ""
    return "true" if value else "false"


def dimacs_line(f: Formula) -> str:
    return to_dimacs(f).strip().replace("\n", " ; ")


def _format_residual(r) -> str:
    from .exact import GaussianRational

    if isinstance(r, GaussianRational):
        return str(r)
    z = complex(r)
    return repr(z.real) if z.imag == 0 else repr(z)


def sweep(cfg: SweepConfig, limits: tuple[int, int, int] = EXHAUSTIVE_LIMITS) -> SweepReport:
    """Run the full pipeline over every generated formula.

    For each satisfiable formula (having a distinct-varset clause pair when
    the config demands one): decide the literal and aligned instances for
    every satisfying evaluation, check aligned residuals at the natural
    conversion, and run the proposition search on every eligible clause pair.
    One row per (formula, pair); a formula without eligible pairs still gets
    a row with the pair fields blank so instance statistics stay visible.
    """
    formulas = generate_formulas(cfg, limits)
    report = SweepReport(config=cfg)
    totals = {
        "formulas_generated": len(formulas),
        "formulas_satisfiable": 0,
        "formulas_unsatisfiable": 0,
        "formulas_skipped_no_pair": 0,
        "instances": 0,
        "literal_qsat_instances": 0,
        "aligned_qsat_instances": 0,
        "aligned_natural_zero_instances": 0,
        "natural_success_instances": 0,
        "pairs_tested": 0,
        "proposition_holds": 0,
        "proposition_fails": 0,
    }

    for fid, f in enumerate(formulas):
        sats = satisfying_evaluations(f)
        if not sats:
            totals["formulas_unsatisfiable"] += 1
            continue
        pairs = eligible_pairs(f)
        if cfg.require_distinct_varsets and not pairs:
            totals["formulas_skipped_no_pair"] += 1
            continue
        totals["formulas_satisfiable"] += 1

        promise = PromiseConfig.for_qubits(f.n)
        literal_ok: dict[Evaluation, QSatVerdict] = {}
        aligned_ok: dict[Evaluation, bool] = {}
        for v in sats:
            totals["instances"] += 1
            if f.m == 0:
                continue
            lit = [
                quantum_assignment(f, i, v, EmbeddingMode.LITERAL)
                for i in range(1, f.m + 1)
            ]
            alg = [
                quantum_assignment(f, i, v, EmbeddingMode.ALIGNED)
                for i in range(1, f.m + 1)
            ]
            literal_ok[v] = qsat_decide(lit, promise)
            aligned_verdict = qsat_decide(alg, promise)
            aligned_ok[v] = aligned_verdict.satisfiable
            if literal_ok[v].satisfiable:
                totals["literal_qsat_instances"] += 1
            if aligned_verdict.satisfiable:
                totals["aligned_qsat_instances"] += 1
            w = natural_conversion(f, v)
            if all(not bool(residual(q, w)) for q in alg):
                totals["aligned_natural_zero_instances"] += 1
            if all(not bool(residual(q, w)) for q in lit):
                totals["natural_success_instances"] += 1

        if f.m == 0:
            literal_all = aligned_all = True
        else:
            literal_all = all(vd.satisfiable for vd in literal_ok.values())
            aligned_all = all(aligned_ok.values())

        base = dict(
            formula_id=fid,
            dimacs=dimacs_line(f),
            k=f.k,
            n=f.n,
            m=f.m,
            num_satisfying=len(sats),
            literal_qsat=literal_all,
            aligned_qsat=aligned_all,
        )

        if not pairs:
            rep_v = sats[0]
            lam = literal_ok[rep_v].lambda_min if f.m else 0.0
            report.rows.append(
                SweepRow(
                    pair="",
                    proposition_holds=None,
                    witness_eval="",
                    residual_p="",
                    residual_q="",
                    lambda_min_literal=lam,
                    **base,
                )
            )
            continue

        for p, q in pairs:
            prop = proposition_witness_search(f, p, q, cfg.permute_literals)
            if not prop.reverify():
                raise GoldenMismatchError(
                    f"witness re-verification failed for formula {fid} pair ({p},{q})"
                )
            totals["pairs_tested"] += 1
            if prop.proposition_holds:
                totals["proposition_holds"] += 1
                first = prop.witnesses[0]
                rep_v = first.evaluation
                witness_eval = first.evaluation.as_bitstring()
                residual_p = _format_residual(first.residual_p)
                residual_q = _format_residual(first.residual_q)
            else:
                totals["proposition_fails"] += 1
                rep_v = sats[0]
                witness_eval = ""
                # No witness: keep the evidence that every residual is zero.
                first = prop.residual_table[0]
                residual_p = _format_residual(first.residual_p)
                residual_q = _format_residual(first.residual_q)
            report.rows.append(
                SweepRow(
                    pair=f"{p},{q}",
                    proposition_holds=prop.proposition_holds,
                    witness_eval=witness_eval,
                    residual_p=residual_p,
                    residual_q=residual_q,
                    lambda_min_literal=literal_ok[rep_v].lambda_min,
                    **base,
                )
            )

    report.totals = totals
    return report


def write_report(report: SweepReport, out_dir: str) -> tuple[str, str]:
    """Write sweep.csv and sweep.json atomically; returns the two paths."""
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, "sweep.csv")
    json_path = os.path.join(out_dir, "sweep.json")
    _atomic_write(csv_path, report.to_csv_text())
    _atomic_write(json_path, json.dumps(report.to_json_dict(), indent=2) + "\n")
    return csv_path, json_path


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
