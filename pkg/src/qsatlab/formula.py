"""CNF formulas with uniform clause width, DIMACS I/O and brute-force SAT.

Variables are indexed 1..n and that index order fixes the qubit order used
by every downstream matrix construction: variable 1 is the leftmost (most
significant) bit of a basis label.  Clause width is strictly uniform and
variables may not repeat inside a clause; both restrictions are what make
the (k, n) projector constructions well defined.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .errors import (
    DimacsSyntaxError,
    DuplicateVariableError,
    IndexOutOfRangeError,
    MixedWidthError,
    PartialEvaluationError,
    TooManyVariablesError,
)

# Brute-force enumeration walks all 2^n evaluations; keep n desk-sized.
DEFAULT_BRUTE_FORCE_LIMIT = 20


def brute_force_limit() -> int:
    """Enumeration cap on n; the QSATLAB_MAX_N env var overrides the default."""
    value = os.environ.get("QSATLAB_MAX_N")
    if value is None:
        return DEFAULT_BRUTE_FORCE_LIMIT
    return int(value)


@dataclass(frozen=True)
class Literal:
    """A possibly negated variable occurrence."""

    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 1:
            raise IndexOutOfRangeError(f"variable index must be >= 1, got {self.variable}")

    @classmethod
    def from_dimacs(cls, code: int) -> "Literal":
        if code == 0:
            raise DimacsSyntaxError("literal code 0 is the clause terminator")
        return cls(abs(code), code < 0)

    def to_dimacs(self) -> int:
        return -self.variable if self.negated else self.variable

    def holds_under(self, bit: int) -> bool:
        return bit == (0 if self.negated else 1)

    def __str__(self):
        return f"{'~' if self.negated else ''}x{self.variable}"


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals; order is preserved as given in the source."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        seen = set()
        for lit in self.literals:
            if lit.variable in seen:
                raise DuplicateVariableError(
                    f"variable x{lit.variable} occurs twice in clause {self}"
                )
            seen.add(lit.variable)

    @property
    def width(self) -> int:
        return len(self.literals)

    @property
    def variables(self) -> tuple[int, ...]:
        """Clause variables in order of first occurrence (the tensor-slot order)."""
        return tuple(lit.variable for lit in self.literals)

    def var_set(self) -> frozenset[int]:
        return frozenset(lit.variable for lit in self.literals)

    def __str__(self):
        return "(" + " | ".join(str(lit) for lit in self.literals) + ")"


@dataclass(frozen=True)
class Formula:
    """CNF formula of dimension (k, n): m clauses, each exactly k literals wide."""

    n: int
    k: int
    clauses: tuple[Clause, ...]

    def __post_init__(self):
        if self.n < 0:
            raise IndexOutOfRangeError(f"variable count must be >= 0, got {self.n}")
        for clause in self.clauses:
            if clause.width != self.k:
                raise MixedWidthError(
                    f"clause {clause} has width {clause.width}, expected k={self.k}"
                )
            for lit in clause.literals:
                if lit.variable > self.n:
                    raise IndexOutOfRangeError(
                        f"variable x{lit.variable} exceeds declared n={self.n}"
                    )

    @property
    def m(self) -> int:
        return len(self.clauses)

    def clause(self, i: int) -> Clause:
        """1-based clause access, matching the paper-style numbering."""
        if not 1 <= i <= self.m:
            raise IndexOutOfRangeError(f"clause index {i} outside 1..{self.m}")
        return self.clauses[i - 1]

    def __str__(self):
        if not self.clauses:
            return "(empty)"
        return " & ".join(str(c) for c in self.clauses)


@dataclass(frozen=True)
class Evaluation:
    """Total assignment of {0,1} to variables 1..n; bits[i-1] is v(x_i)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"evaluation bits must be 0/1, got {self.bits}")

    @classmethod
    def from_bitstring(cls, text: str) -> "Evaluation":
        if not all(c in "01" for c in text):
            raise ValueError(f"bitstring must contain only 0/1, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.bits)

    def value(self, variable: int) -> int:
        """v(x_variable) for a 1-based variable index."""
        if not 1 <= variable <= self.n:
            raise PartialEvaluationError(
                f"evaluation over {self.n} variables has no value for x{variable}"
            )
        return self.bits[variable - 1]

    def as_bitstring(self) -> str:
        return "".join(str(b) for b in self.bits)

    def __str__(self):
        return self.as_bitstring()


# ---------------------------------------------------------------------------
# DIMACS
# ---------------------------------------------------------------------------

def parse_dimacs(text: str) -> Formula:
    """Parse a DIMACS CNF string into a Formula.

    The 'p cnf n m' header is required and its counts are validated against
    the body.  Clause width k is inferred from the first clause; mixed widths
    and repeated variables within a clause are rejected.  Clause and literal
    order are preserved exactly.
    """
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    current: list[Literal] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise DimacsSyntaxError(f"line {lineno}: duplicate problem header")
            parts = line.split()
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "cnf":
                raise DimacsSyntaxError(f"line {lineno}: expected 'p cnf <n> <m>', got {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsSyntaxError(f"line {lineno}: non-integer header counts in {line!r}")
            if header[0] < 0 or header[1] < 0:
                raise DimacsSyntaxError(f"line {lineno}: negative header counts in {line!r}")
            continue
        if header is None:
            raise DimacsSyntaxError(f"line {lineno}: clause data before 'p cnf' header")
        for token in line.split():
            try:
                code = int(token)
            except ValueError:
                raise DimacsSyntaxError(f"line {lineno}: bad literal token {token!r}")
            if code == 0:
                clauses.append(Clause(tuple(current)))
                current = []
            else:
                current.append(Literal.from_dimacs(code))

    if header is None:
        raise DimacsSyntaxError("missing 'p cnf <n> <m>' header")
    if current:
        raise DimacsSyntaxError("last clause is not terminated by 0")

    n, m = header
    if len(clauses) != m:
        raise DimacsSyntaxError(f"header declares {m} clauses but body has {len(clauses)}")
    k = clauses[0].width if clauses else 0
    return Formula(n=n, k=k, clauses=tuple(clauses))


def to_dimacs(f: Formula) -> str:
    """Serialize preserving clause and literal order (round-trips parse_dimacs)."""
    lines = [f"p cnf {f.n} {f.m}"]
    for clause in f.clauses:
        lines.append(" ".join(str(lit.to_dimacs()) for lit in clause.literals) + " 0")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Semantics
# ---------------------------------------------------------------------------

def dimension(f: Formula) -> tuple[int, int]:
    """The (k, n) dimension of the formula."""
    return (f.k, f.n)


def evaluate(f: Formula, v: Evaluation) -> int:
    """1 iff every clause contains a literal satisfied by v, else 0."""
    if v.n != f.n:
        raise PartialEvaluationError(
            f"evaluation covers {v.n} variables, formula declares {f.n}"
        )
    for clause in f.clauses:
        if not any(lit.holds_under(v.bits[lit.variable - 1]) for lit in clause.literals):
            return 0
    return 1


def all_evaluations(n: int) -> Iterator[Evaluation]:
    """All 2^n evaluations in ascending binary order of (v(x_1)..v(x_n))."""
    for bits in product((0, 1), repeat=n):
        yield Evaluation(bits)


def satisfying_evaluations(f: Formula, limit: int | None = None) -> list[Evaluation]:
    """All satisfying evaluations, ascending in the binary order of their bits."""
    if limit is None:
        limit = brute_force_limit()
    if f.n > limit:
        raise TooManyVariablesError(
            f"brute force over n={f.n} variables exceeds the limit of {limit}"
        )
    return [v for v in all_evaluations(f.n) if evaluate(f, v) == 1]
