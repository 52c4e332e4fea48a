"""Dense linear algebra over two interchangeable scalar backends.

Two kinds of scalars flow through this package: ordinary complex floats
and exact Gaussian rationals (real and imaginary parts are
arbitrary-precision ``Fraction`` values).  This module implements the
small-matrix toolkit (solve, determinant, rank / reduced row echelon
form) once over both, with a fixed deterministic pivoting rule:

* float backend: partial pivoting by largest modulus; a pivot counts as
  zero when its modulus is at most ``tol`` times the largest entry
  modulus of the input matrix (scale-relative, so the rule is invariant
  under rescaling the matrix);
* exact backend: first non-zero pivot; zero means exactly zero.

Backends never convert silently.  ``to_float`` converts exact values to
floats on request; the reverse direction is forbidden because it would
manufacture exactness that was never there.

All values are immutable after construction and all operations are pure
functions, so everything here is safe to share across threads.  The
code is sized for the small structure matrices this project works with
(n up to about 12); there is deliberately no BLAS, sparsity or large-n
ambition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence, Union

from .errors import BackendMismatch, BadParameters, DimensionMismatch, SingularMatrix

FLOAT = "float"
EXACT = "exact"

#: Default scale-relative pivot/zero threshold for the float backend.
DEFAULT_TOL = 1e-8

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _fraction(value) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, str, Fraction)):
        raise BackendMismatch(
            f"exact scalars are built from int/str/Fraction, not {type(value).__name__}"
        )
    return Fraction(value)


@dataclass(frozen=True)
class GaussianRational:
    """Exact complex scalar with rational real and imaginary parts."""

    re: Fraction
    im: Fraction

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        o = _as_gaussian(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_gaussian(other)
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return _as_gaussian(other) - self

    def __mul__(self, other):
        o = _as_gaussian(other)
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _as_gaussian(other)
        d = o.norm_sq()
        if not d:
            raise ZeroDivisionError("division by exact zero")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        return _as_gaussian(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        sign = "+" if self.im >= 0 else ""
        return f"{self.re}{sign}{self.im}i"


def _as_gaussian(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(_fraction(value), _ZERO)


def gq(re=0, im=0) -> GaussianRational:
    """Build an exact scalar from int/str/Fraction parts, e.g. ``gq("1/2", -3)``."""
    return GaussianRational(_fraction(re), _fraction(im))


Scalar = Union[complex, GaussianRational]

GQ_ZERO = GaussianRational(_ZERO, _ZERO)
GQ_ONE = GaussianRational(_ONE, _ZERO)


def zero_scalar(backend: str) -> Scalar:
    return 0j if backend == FLOAT else GQ_ZERO


def one_scalar(backend: str) -> Scalar:
    return complex(1.0) if backend == FLOAT else GQ_ONE


def scalar_is_zero(x: Scalar, backend: str, thresh: float = 0.0) -> bool:
    if backend == EXACT:
        return x.is_zero
    return abs(x) <= thresh


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; ``entries`` is a tuple of row tuples."""

    entries: tuple
    backend: str

    def __post_init__(self):
        if self.backend not in (FLOAT, EXACT):
            raise BadParameters(f"unknown backend {self.backend!r}")
        if not self.entries or not self.entries[0]:
            raise DimensionMismatch("matrix needs at least one row and one column")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise DimensionMismatch("ragged rows")

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    def row(self, i: int) -> tuple:
        return self.entries[i]


def float_matrix(rows) -> Matrix:
    """Matrix on the float backend; entries are coerced through ``complex()``."""
    return Matrix(tuple(tuple(complex(x) for x in row) for row in rows), FLOAT)


def _exact_entry(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return gq(x[0], x[1])
    return gq(x)


def exact_matrix(rows) -> Matrix:
    """Matrix on the exact backend; entries from int/str/Fraction/(re, im) pairs."""
    return Matrix(tuple(tuple(_exact_entry(x) for x in row) for row in rows), EXACT)


def float_vector(seq) -> tuple:
    return tuple(complex(x) for x in seq)


def exact_vector(seq) -> tuple:
    return tuple(_exact_entry(x) for x in seq)


def identity(n: int, backend: str = FLOAT) -> Matrix:
    one, zero = one_scalar(backend), zero_scalar(backend)
    return Matrix(
        tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)),
        backend,
    )


def zeros(rows: int, cols: int, backend: str = FLOAT) -> Matrix:
    zero = zero_scalar(backend)
    return Matrix(tuple(tuple(zero for _ in range(cols)) for _ in range(rows)), backend)


def unit_vector(i: int, n: int, backend: str = FLOAT) -> tuple:
    one, zero = one_scalar(backend), zero_scalar(backend)
    return tuple(one if j == i else zero for j in range(n))


def transpose(A: Matrix) -> Matrix:
    return Matrix(tuple(zip(*A.entries)), A.backend)


def _require_same_backend(a: str, b: str):
    if a != b:
        raise BackendMismatch(f"mixed backends {a!r} and {b!r}")


def matmul(A: Matrix, B: Matrix) -> Matrix:
    _require_same_backend(A.backend, B.backend)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.rows}x{A.cols} by {B.rows}x{B.cols}")
    Bt = tuple(zip(*B.entries))
    out = tuple(
        tuple(sum((a * b for a, b in zip(row, col)), zero_scalar(A.backend)) for col in Bt)
        for row in A.entries
    )
    return Matrix(out, A.backend)


def matvec(A: Matrix, v: Sequence) -> tuple:
    if len(v) != A.cols:
        raise DimensionMismatch(f"matrix has {A.cols} columns, vector has {len(v)}")
    return tuple(
        sum((a * x for a, x in zip(row, v)), zero_scalar(A.backend)) for row in A.entries
    )


def max_entry_modulus(A: Matrix) -> float:
    return max(abs(complex(x)) for row in A.entries for x in row)


def to_float(value):
    """Explicit exact-to-float conversion for scalars, vectors and matrices."""
    if isinstance(value, Matrix):
        if value.backend == FLOAT:
            return value
        return float_matrix(value.entries)
    if isinstance(value, GaussianRational):
        return complex(value)
    if isinstance(value, (tuple, list)):
        return tuple(complex(x) for x in value)
    return complex(value)


class RankResult(NamedTuple):
    rank: int
    basis: tuple  # row-reduced echelon basis of the row space
    pivot_cols: tuple


def _coerce_vector(b, backend: str) -> list:
    if backend == FLOAT:
        return [complex(x) for x in b]
    return [_exact_entry(x) for x in b]


def rank(A: Matrix, tol: float = DEFAULT_TOL) -> RankResult:
    """Rank plus the canonical (reduced) row echelon basis of the row space.

    Pivoting follows the module rule: largest modulus with a
    scale-relative zero threshold on the float backend, first non-zero
    on the exact backend, so the result is deterministic for a given
    input. ``tol`` is ignored by the exact backend.
    """
    backend = A.backend
    work = [list(row) for row in A.entries]
    nrows, ncols = len(work), len(work[0])
    thresh = tol * max_entry_modulus(A) if backend == FLOAT else 0.0
    r = 0
    pivot_cols = []
    for c in range(ncols):
        p = None
        if backend == FLOAT:
            best = thresh
            for i in range(r, nrows):
                m = abs(work[i][c])
                if m > best:
                    p, best = i, m
        else:
            for i in range(r, nrows):
                if not work[i][c].is_zero:
                    p = i
                    break
        if p is None:
            continue
        work[r], work[p] = work[p], work[r]
        piv = work[r][c]
        work[r] = [x / piv for x in work[r]]
        work[r][c] = one_scalar(backend)  # kill rounding in the pivot itself
        for i in range(nrows):
            if i == r:
                continue
            f = work[i][c]
            if not scalar_is_zero(f, backend):
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    basis = work[:r]
    if backend == FLOAT:
        basis = [[0j if abs(x) <= thresh else x for x in row] for row in basis]
    return RankResult(r, tuple(tuple(row) for row in basis), tuple(pivot_cols))


def _require_square(A: Matrix):
    if A.rows != A.cols:
        raise DimensionMismatch(f"expected a square matrix, got {A.rows}x{A.cols}")


def determinant(A: Matrix) -> Scalar:
    """Determinant under the backend's arithmetic.

    The float value is computed with partial pivoting regardless of how
    small pivots get; the zero/non-zero *decision* belongs to
    ``is_nonsingular``, which applies the shared scale-relative rule.
    """
    _require_square(A)
    backend = A.backend
    n = A.rows
    work = [list(row) for row in A.entries]
    neg = False
    det = one_scalar(backend)
    for k in range(n):
        p = None
        if backend == FLOAT:
            best = 0.0
            for i in range(k, n):
                m = abs(work[i][k])
                if m > best:
                    p, best = i, m
            if p is None:
                return 0j
        else:
            for i in range(k, n):
                if not work[i][k].is_zero:
                    p = i
                    break
            if p is None:
                return GQ_ZERO
        if p != k:
            work[k], work[p] = work[p], work[k]
            neg = not neg
        piv = work[k][k]
        det = det * piv
        for i in range(k + 1, n):
            f = work[i][k]
            if not scalar_is_zero(f, backend):
                f = f / piv
                work[i] = [a - f * b for a, b in zip(work[i], work[k])]
    return -det if neg else det


def is_nonsingular(A: Matrix, tol: float = DEFAULT_TOL) -> bool:
    """Non-zero-determinant decision: exact on the exact backend, pivot rule on float."""
    _require_square(A)
    if A.backend == EXACT:
        return not determinant(A).is_zero
    return rank(A, tol).rank == A.rows


def solve_linear(A: Matrix, b: Sequence, tol: float = DEFAULT_TOL):
    """Solve ``A x = b``; returns ``(x, residual)``.

    The residual is ``max|Ax - b|`` recomputed from the returned x
    (always exactly 0.0 on the exact backend).  Raises
    ``SingularMatrix`` when elimination finds no acceptable pivot.
    """
    _require_square(A)
    backend = A.backend
    n = A.rows
    if len(b) != n:
        raise DimensionMismatch(f"matrix is {n}x{n}, right-hand side has {len(b)} entries")
    rhs = _coerce_vector(b, backend)
    work = [list(row) + [rhs[i]] for i, row in enumerate(A.entries)]
    thresh = tol * max_entry_modulus(A) if backend == FLOAT else 0.0
    for k in range(n):
        p = None
        if backend == FLOAT:
            best = thresh
            for i in range(k, n):
                m = abs(work[i][k])
                if m > best:
                    p, best = i, m
        else:
            for i in range(k, n):
                if not work[i][k].is_zero:
                    p = i
                    break
        if p is None:
            raise SingularMatrix(f"no acceptable pivot in column {k}")
        if p != k:
            work[k], work[p] = work[p], work[k]
        piv = work[k][k]
        for i in range(k + 1, n):
            f = work[i][k]
            if not scalar_is_zero(f, backend):
                f = f / piv
                work[i] = [a - f * b for a, b in zip(work[i], work[k])]
    x = [zero_scalar(backend)] * n
    for k in range(n - 1, -1, -1):
        acc = work[k][n]
        for j in range(k + 1, n):
            acc = acc - work[k][j] * x[j]
        x[k] = acc / work[k][k]
    if backend == EXACT:
        return tuple(x), 0.0
    ax = matvec(A, x)
    residual = max(abs(p - q) for p, q in zip(ax, rhs))
    return tuple(x), residual
