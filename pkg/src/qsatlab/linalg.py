"""Dense complex vectors and matrices on 2^n-dimensional qubit spaces.

Two arithmetic paths live side by side:

* exact  -- entries are :class:`~qsatlab.exact.GaussianRational`; used
  whenever the inputs are Gaussian integers/rationals, which covers every
  paper-faithful construction (0/1 projectors up to a rational scale).
* floating -- entries are complex128; used for general complex scalars.

Both paths share conventions: the leftmost bit of a basis label is the most
significant, so bits (1,0,1) label the 0-based index 5.  Matrices are square
with power-of-two dimension and may be stored diagonal-only (the
``diagonal_hint`` fast path), which is what makes desk-scale tensor products
of clause projectors cheap.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DimensionCapError,
    DimensionMismatchError,
    NoConvergenceError,
    NotHermitianError,
    NotPSDError,
)
from .exact import GR_ONE, GR_ZERO, GaussianRational

MAX_DENSE_DIM = 2 ** 14
MAX_DIAGONAL_DIM = 2 ** 20

DEFAULT_TOL = 1e-9


def _is_power_of_two(d: int) -> bool:
    return d > 0 and (d & (d - 1)) == 0


def _is_exact_scalar(x) -> bool:
    return isinstance(x, (GaussianRational, Rational, int, np.integer))


def as_scalar(value):
    """Normalize a scalar: exact types become GaussianRational, the rest complex."""
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (Rational, np.integer)):
        return GaussianRational(Fraction(int(value)) if isinstance(value, np.integer) else value)
    return complex(value)


def _object_array(values: Sequence) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = GaussianRational.coerce(v)
    return out


def _pack_entries(values: Sequence) -> np.ndarray:
    """1-D entry array: object dtype if every entry is exact, else complex128."""
    values = list(values)
    if values and all(_is_exact_scalar(v) for v in values):
        return _object_array(values)
    return np.asarray([complex(v) for v in values], dtype=complex)


def _zero_like(exact: bool):
    return GR_ZERO if exact else 0j


class StateVector:
    """Column vector in the 2^n-dimensional computational space."""

    __slots__ = ("entries",)

    def __init__(self, entries):
        if isinstance(entries, np.ndarray) and entries.dtype in (object, np.complex128):
            data = entries
        else:
            data = _pack_entries(entries)
        if data.ndim != 1 or not _is_power_of_two(data.shape[0]):
            raise DimensionMismatchError(
                f"state vector length must be a power of two, got shape {data.shape}"
            )
        data.flags.writeable = False
        object.__setattr__(self, "entries", data)

    def __setattr__(self, name, value):
        raise AttributeError("StateVector is immutable")

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n_qubits(self) -> int:
        return self.dim.bit_length() - 1

    @property
    def exact(self) -> bool:
        return self.entries.dtype == object

    def to_numpy(self) -> np.ndarray:
        if self.exact:
            return np.array([complex(e) for e in self.entries], dtype=complex)
        return np.array(self.entries, dtype=complex)

    def to_float(self) -> "StateVector":
        return self if not self.exact else StateVector(self.to_numpy())

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self.entries, other.entries))

    def __hash__(self):
        return hash((self.dim, self.exact))

    def __repr__(self):
        return f"StateVector({list(self.entries)!r})"


class DenseMatrix:
    """Square complex matrix; diagonal matrices may store only their diagonal."""

    __slots__ = ("_data", "_diag")

    def __init__(self, data: np.ndarray, diagonal: bool):
        if diagonal:
            if data.ndim != 1:
                raise DimensionMismatchError("diagonal storage expects a 1-D array")
            if data.shape[0] > MAX_DIAGONAL_DIM:
                raise DimensionCapError(
                    f"diagonal dimension {data.shape[0]} exceeds cap {MAX_DIAGONAL_DIM}"
                )
        else:
            if data.ndim != 2 or data.shape[0] != data.shape[1]:
                raise DimensionMismatchError(f"matrix must be square, got shape {data.shape}")
            if data.shape[0] > MAX_DENSE_DIM:
                raise DimensionCapError(
                    f"dense dimension {data.shape[0]} exceeds cap {MAX_DENSE_DIM}"
                )
        if not _is_power_of_two(data.shape[0]):
            raise DimensionMismatchError(
                f"matrix dimension must be a power of two, got {data.shape[0]}"
            )
        data.flags.writeable = False
        object.__setattr__(self, "_data", data)
        object.__setattr__(self, "_diag", diagonal)

    def __setattr__(self, name, value):
        raise AttributeError("DenseMatrix is immutable")

    # -- constructors ---------------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence]) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        flat = [v for row in rows for v in row]
        packed = _pack_entries(flat)
        dim = len(rows)
        if any(len(r) != dim for r in rows):
            raise DimensionMismatchError("matrix rows must all have length == row count")
        return cls(packed.reshape(dim, dim), diagonal=False)

    @classmethod
    def from_diagonal(cls, diag: Sequence) -> "DenseMatrix":
        return cls(_pack_entries(diag), diagonal=True)

    # -- basic properties -----------------------------------------------------

    @property
    def dim(self) -> int:
        return self._data.shape[0]

    @property
    def diagonal_hint(self) -> bool:
        return self._diag

    @property
    def exact(self) -> bool:
        return self._data.dtype == object

    def diagonal(self) -> np.ndarray:
        return self._data if self._diag else np.diagonal(self._data)

    def entry(self, i: int, j: int):
        if self._diag:
            return self._data[i] if i == j else _zero_like(self.exact)
        return self._data[i, j]

    def rows(self) -> np.ndarray:
        """Full row-major (dim, dim) array, materializing diagonal storage."""
        if not self._diag:
            return self._data
        if self.exact:
            full = np.empty((self.dim, self.dim), dtype=object)
            full[:] = GR_ZERO
        else:
            full = np.zeros((self.dim, self.dim), dtype=complex)
        np.fill_diagonal(full, self._data)
        return full

    def to_numpy(self) -> np.ndarray:
        """Full complex128 copy (exact entries are converted to floats)."""
        full = self.rows()
        if self.exact:
            return np.array([[complex(e) for e in row] for row in full], dtype=complex)
        return np.array(full, dtype=complex)

    def to_float(self) -> "DenseMatrix":
        if not self.exact:
            return self
        if self._diag:
            return DenseMatrix(
                np.array([complex(e) for e in self._data], dtype=complex), diagonal=True
            )
        return DenseMatrix(self.to_numpy(), diagonal=False)

    def is_diagonal(self) -> bool:
        """True when off-diagonal entries are all exactly zero."""
        if self._diag:
            return True
        off = self._data[~np.eye(self.dim, dtype=bool)]
        return all(not bool(e) for e in off) if self.exact else bool(np.all(off == 0))

    def trace(self):
        d = self.diagonal()
        if self.exact:
            return sum(d, start=GR_ZERO)
        return complex(d.sum())

    # -- arithmetic -----------------------------------------------------------

    def matvec(self, v: StateVector) -> StateVector:
        if v.dim != self.dim:
            raise DimensionMismatchError(f"matrix dim {self.dim} vs vector dim {v.dim}")
        a, b = _common_path(self, v)
        if a._diag:
            return StateVector(a._data * b.entries)
        return StateVector(a._data.dot(b.entries))

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if other.dim != self.dim:
            raise DimensionMismatchError(f"cannot add dims {self.dim} and {other.dim}")
        a, b = _common_path(self, other)
        if a._diag and b._diag:
            return DenseMatrix(a._data + b._data, diagonal=True)
        return DenseMatrix(a.rows() + b.rows(), diagonal=False)

    def scaled(self, a) -> "DenseMatrix":
        a = as_scalar(a)
        if isinstance(a, GaussianRational) and self.exact:
            return DenseMatrix(self._data * a, diagonal=self._diag)
        base = self.to_float()
        return DenseMatrix(base._data * complex(a), diagonal=base._diag)

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        if self.dim != other.dim:
            return False
        return bool(np.array_equal(self.rows(), other.rows()))

    def __hash__(self):
        return hash((self.dim, self._diag))

    def __repr__(self):
        kind = "diagonal" if self._diag else "dense"
        return f"DenseMatrix(dim={self.dim}, {kind}, exact={self.exact})"


def _common_path(a, b):
    """Coerce a matrix/vector pair onto one arithmetic path (exact or float)."""
    if a.exact == b.exact:
        return a, b
    return a.to_float(), b.to_float()


# ---------------------------------------------------------------------------
# Constructors and elementary operations
# ---------------------------------------------------------------------------

def identity(dim: int, exact: bool = True) -> DenseMatrix:
    if exact:
        return DenseMatrix.from_diagonal([GR_ONE] * dim)
    return DenseMatrix(np.ones(dim, dtype=complex), diagonal=True)


def zero_matrix(dim: int, exact: bool = True) -> DenseMatrix:
    if exact:
        return DenseMatrix.from_diagonal([GR_ZERO] * dim)
    return DenseMatrix(np.zeros(dim, dtype=complex), diagonal=True)


def basis_index(bits: Sequence[int]) -> int:
    """Index of the basis label; leftmost bit is most significant."""
    idx = 0
    for b in bits:
        if b not in (0, 1):
            raise ValueError(f"basis bits must be 0/1, got {bits!r}")
        idx = (idx << 1) | b
    return idx


def basis_vector(bits: Sequence[int]) -> StateVector:
    """Standard basis vector |b_1 .. b_n> of dimension 2^n (exact entries)."""
    bits = list(bits)
    if not bits:
        raise ValueError("basis_vector needs at least one bit")
    dim = 2 ** len(bits)
    if dim > MAX_DIAGONAL_DIM:
        raise DimensionCapError(f"2^{len(bits)} exceeds the dimension cap")
    entries = [GR_ZERO] * dim
    entries[basis_index(bits)] = GR_ONE
    return StateVector(entries)


def inner(v: StateVector, w: StateVector):
    """<v|w> with conjugation applied to the left argument."""
    if v.dim != w.dim:
        raise DimensionMismatchError(f"inner product dims {v.dim} vs {w.dim}")
    a, b = _common_path(v, w)
    if a.exact:
        total = GR_ZERO
        for x, y in zip(a.entries, b.entries):
            total = total + x.conjugate() * y
        return total
    return complex(np.vdot(a.entries, b.entries))


def outer(v: StateVector) -> DenseMatrix:
    """|v><v|; stored diagonally when v has at most one nonzero entry."""
    nonzero = [i for i, e in enumerate(v.entries) if bool(e)]
    if len(nonzero) <= 1:
        if v.exact:
            diag = [GR_ZERO] * v.dim
            for i in nonzero:
                diag[i] = v.entries[i] * v.entries[i].conjugate()
            return DenseMatrix.from_diagonal(diag)
        diag = np.zeros(v.dim, dtype=complex)
        for i in nonzero:
            diag[i] = v.entries[i] * np.conj(v.entries[i])
        return DenseMatrix(diag, diagonal=True)
    if v.exact:
        conj = np.array([e.conjugate() for e in v.entries], dtype=object)
        return DenseMatrix(np.outer(v.entries, conj), diagonal=False)
    return DenseMatrix(np.outer(v.entries, np.conj(v.entries)), diagonal=False)


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    """Kronecker product; diagonal storage propagates when both are diagonal."""
    x, y = _common_path(a, b)
    if x.diagonal_hint and y.diagonal_hint:
        return DenseMatrix(np.kron(x.diagonal(), y.diagonal()), diagonal=True)
    return DenseMatrix(np.kron(x.rows(), y.rows()), diagonal=False)


def subtract(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    return a + b.scaled(GaussianRational(-1) if b.exact else -1.0)


# ---------------------------------------------------------------------------
# Hermitian / PSD validation
# ---------------------------------------------------------------------------

def _check_hermitian(m: DenseMatrix, tol: float) -> None:
    if m.diagonal_hint:
        d = m.diagonal()
        if m.exact:
            if any(not e.is_real() for e in d):
                raise NotHermitianError("diagonal has a non-real entry")
        elif np.any(np.abs(d.imag) > tol):
            raise NotHermitianError("diagonal has a non-real entry")
        return
    rows = m.rows()
    adj = np.conj(rows.T)
    if m.exact:
        if not np.array_equal(rows, adj):
            raise NotHermitianError("matrix differs from its conjugate transpose")
    elif not np.allclose(rows, adj, rtol=0.0, atol=max(tol, 10 * np.finfo(float).eps)):
        raise NotHermitianError("matrix differs from its conjugate transpose")


def _check_psd(m: DenseMatrix, tol: float) -> None:
    if m.diagonal_hint:
        d = m.diagonal()
        if m.exact:
            if any(e.re < 0 for e in d):
                raise NotPSDError("diagonal entry below zero")
        elif np.any(d.real < -tol):
            raise NotPSDError("diagonal entry below zero")
        return
    # Dense case: a numerical eigenvalue bound is an honest precondition check
    # even on the exact path (kernel computation itself stays exact).
    eigs = np.linalg.eigvalsh(m.to_numpy())
    scale = max(1.0, float(np.max(np.abs(eigs))) if eigs.size else 1.0)
    if eigs.size and eigs[0] < -tol * scale:
        raise NotPSDError(f"smallest eigenvalue {eigs[0]:.3e} is significantly negative")


# ---------------------------------------------------------------------------
# Common null space
# ---------------------------------------------------------------------------

def _nonzero_rows(m: DenseMatrix) -> list:
    rows = []
    if m.diagonal_hint:
        d = m.diagonal()
        exact = m.exact
        for j, e in enumerate(d):
            if bool(e):
                row = [_zero_like(exact)] * m.dim
                row[j] = e
                rows.append(row)
        return rows
    for row in m.rows():
        if any(bool(e) for e in row):
            rows.append(list(row))
    return rows


def _rref_exact(rows: list[list[GaussianRational]], ncols: int):
    """In-place reduced row echelon form over the Gaussian rationals."""
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if bool(rows[i][c])), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = GR_ONE / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and bool(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivot_cols


def _rref_float(mat: np.ndarray, tol: float):
    """Reduced row echelon form with partial pivoting and pivot threshold tol."""
    mat = mat.astype(complex).copy()
    nrows, ncols = mat.shape
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        pivot = r + int(np.argmax(np.abs(mat[r:, c])))
        if abs(mat[pivot, c]) <= tol:
            mat[r:, c] = 0.0
            continue
        mat[[r, pivot]] = mat[[pivot, r]]
        mat[r] = mat[r] / mat[r, c]
        for i in range(nrows):
            if i != r and mat[i, c] != 0:
                mat[i] = mat[i] - mat[i, c] * mat[r]
        pivot_cols.append(c)
        r += 1
    return mat[:r], pivot_cols


def _kernel_basis_from_rref(rref_rows, pivot_cols: list[int], ncols: int, exact: bool):
    """Special solutions: one kernel vector per free column."""
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [_zero_like(exact)] * ncols
        vec[fc] = GR_ONE if exact else 1.0 + 0j
        for r, pc in enumerate(pivot_cols):
            coeff = rref_rows[r][fc]
            if bool(coeff):
                vec[pc] = -coeff
        basis.append(vec)
    return basis


def _orthogonalize_exact(basis: list[list[GaussianRational]]) -> list[list[GaussianRational]]:
    """Exact Gram-Schmidt.  Output vectors are pairwise orthogonal and scaled
    to primitive Gaussian-integer form; unit norm is generally impossible in
    the field, so normalization is left to the floating consumer."""
    ortho: list[list[GaussianRational]] = []
    for vec in basis:
        cur = list(vec)
        for prev in ortho:
            num = GR_ZERO
            den = GR_ZERO
            for p, c in zip(prev, cur):
                num = num + p.conjugate() * c
                den = den + p.conjugate() * p
            if bool(num):
                f = num / den
                cur = [c - f * p for c, p in zip(cur, prev)]
        if any(bool(e) for e in cur):
            ortho.append(_primitive(cur))
    return ortho


def _primitive(vec: list[GaussianRational]) -> list[GaussianRational]:
    denoms = [f.denominator for e in vec for f in (e.re, e.im)]
    scale = Fraction(lcm(*denoms)) if denoms else Fraction(1)
    ints = [e * GaussianRational(scale) for e in vec]
    nums = [abs(int(f)) for e in ints for f in (e.re, e.im) if f != 0]
    if nums:
        g = 0
        for v in nums:
            g = gcd(g, v)
        if g > 1:
            ints = [e / GaussianRational(g) for e in ints]
    lead = next((e for e in ints if bool(e)), None)
    if lead is not None and (lead.re < 0 or (lead.re == 0 and lead.im < 0)):
        ints = [-e for e in ints]
    return ints


def _orthonormalize_float(basis: list[list[complex]], tol: float) -> list[np.ndarray]:
    ortho: list[np.ndarray] = []
    for vec in basis:
        cur = np.asarray(vec, dtype=complex)
        for prev in ortho:
            cur = cur - np.vdot(prev, cur) * prev
        norm = float(np.linalg.norm(cur))
        if norm > tol:
            ortho.append(cur / norm)
    return ortho


def common_nullspace(
    mats: Sequence[DenseMatrix], tol: float = DEFAULT_TOL
) -> list[StateVector]:
    """Orthogonal basis of the intersection of the kernels of Hermitian PSD
    matrices.

    When every matrix is exact the result is exact: Gaussian elimination over
    the Gaussian rationals, tol ignored, basis vectors in primitive integer
    form.  Otherwise elimination runs in floating point with pivot threshold
    tol and the basis is orthonormal.
    """
    mats = list(mats)
    if not mats:
        raise DimensionMismatchError("common_nullspace needs at least one matrix")
    dim = mats[0].dim
    for m in mats:
        if m.dim != dim:
            raise DimensionMismatchError(
                f"matrices of dims {dim} and {m.dim} in one null-space problem"
            )
        _check_hermitian(m, tol)
        _check_psd(m, tol)

    exact = all(m.exact for m in mats)
    stacked: list = []
    for m in mats:
        src = m if exact else m.to_float()
        stacked.extend(_nonzero_rows(src))

    if not stacked:
        eye = identity(dim, exact=exact)
        return [StateVector(eye.rows()[:, j].copy()) for j in range(dim)]

    if exact:
        rref_rows, pivot_cols = _rref_exact([list(r) for r in stacked], dim)
        kernel = _kernel_basis_from_rref(rref_rows, pivot_cols, dim, exact=True)
        return [StateVector(v) for v in _orthogonalize_exact(kernel)]

    rref_rows, pivot_cols = _rref_float(np.asarray(stacked, dtype=complex), tol)
    kernel = _kernel_basis_from_rref(rref_rows, pivot_cols, dim, exact=False)
    return [StateVector(v) for v in _orthonormalize_float(kernel, tol)]


# ---------------------------------------------------------------------------
# Smallest eigenvalue of a Hermitian PSD matrix
# ---------------------------------------------------------------------------

def min_eigen_psd(
    m: DenseMatrix, tol: float = DEFAULT_TOL, max_iters: int = 10_000
) -> float:
    """lambda_min of a Hermitian PSD matrix, within tol.

    Diagonal matrices short-circuit to the minimum diagonal entry.  Dense
    matrices run power iteration on c*I - M with c = trace(M) (an upper bound
    on lambda_max for PSD M), started from the normalized all-ones vector; a
    single fixed perturbation retry escapes starts that the iteration
    annihilates.  The start is deterministic by design, so results are
    reproducible.
    """
    _check_hermitian(m, tol)
    if m.diagonal_hint:
        d = m.diagonal()
        if m.dim == 0:
            raise DimensionMismatchError("empty matrix")
        if m.exact:
            return float(min(e.re for e in d))
        return float(np.min(d.real))

    full = m.to_numpy()
    dim = full.shape[0]
    if dim == 1:
        return float(full[0, 0].real)
    c = float(np.trace(full).real)
    if c <= tol:
        return 0.0  # PSD with (near-)zero trace is the (near-)zero matrix
    shifted = c * np.eye(dim) - full

    x = np.ones(dim, dtype=complex) / np.sqrt(dim)
    retried = False
    y = shifted @ x
    for _ in range(max_iters):
        norm_y = float(np.linalg.norm(y))
        if norm_y <= tol * max(1.0, c):
            if retried:
                raise NoConvergenceError("power iteration stagnated twice")
            # Fixed, deterministic perturbation: break symmetric starts.
            ramp = np.arange(1, dim + 1, dtype=float) / dim
            x = np.ones(dim, dtype=complex) + ramp
            x = x / np.linalg.norm(x)
            retried = True
            y = shifted @ x
            continue
        x = y / norm_y
        y = shifted @ x
        mu = float(np.vdot(x, y).real)
        if float(np.linalg.norm(y - mu * x)) <= tol:
            return max(0.0, c - mu)
    raise NoConvergenceError(f"power iteration did not converge in {max_iters} iterations")


# ---------------------------------------------------------------------------
# Dump formats
# ---------------------------------------------------------------------------

def scalar_to_pair(s) -> list:
    """[re, im] JSON pair; exact integers stay integers."""
    if isinstance(s, GaussianRational):
        re = int(s.re) if s.re.denominator == 1 else float(s.re)
        im = int(s.im) if s.im.denominator == 1 else float(s.im)
        return [re, im]
    z = complex(s)
    re = int(z.real) if z.real.is_integer() else z.real
    im = int(z.imag) if z.imag.is_integer() else z.imag
    return [re, im]


def _scalar_to_text(s) -> str:
    if isinstance(s, GaussianRational):
        return str(s)
    z = complex(s)
    if z.imag == 0:
        return str(int(z.real)) if z.real.is_integer() else f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}i"


def vector_to_json(v: StateVector) -> list:
    return [scalar_to_pair(e) for e in v.entries]


def matrix_to_json(m: DenseMatrix) -> dict:
    return {
        "dim": m.dim,
        "entries": [scalar_to_pair(e) for e in m.rows().ravel()],
    }


def matrix_to_grid(m: DenseMatrix) -> str:
    """Human-readable aligned grid of the full matrix."""
    cells = [[_scalar_to_text(e) for e in row] for row in m.rows()]
    width = max((len(c) for row in cells for c in row), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)
