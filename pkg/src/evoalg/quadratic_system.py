"""The three quadratic systems attached to an evolution algebra.

All three are normalized to the residual form

    F_i(x) = sum_j Q[i][j] * x_j^2  -  sum_j L[i][j] * x_j

so one solver handles them uniformly:

* ``general``:    Q = I,        L = A            (x_i^2 = sum_j a_ij x_j)
* ``subalgebra``: Q = I,        L = (M^t)^{-1}   (needs an invertible M)
* ``idempotent``: Q = M^t,      L = I            (M^t (x o x) = x)

The Jacobian is J[i][k] = 2 Q[i][k] x_k - L[i][k]; for the general kind
at the origin this is exactly -A.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BackendMismatch, BadParameters, DimensionMismatch
from .evolution_core import EvolutionAlgebra
from .scalar_linalg import (
    EXACT,
    FLOAT,
    Matrix,
    identity,
    matvec,
    solve_linear,
    to_float,
    transpose,
    unit_vector,
    zero_scalar,
)

GENERAL = "general"
SUBALGEBRA = "subalgebra"
IDEMPOTENT = "idempotent"
KINDS = (GENERAL, SUBALGEBRA, IDEMPOTENT)


@dataclass(frozen=True)
class QuadraticSystem:
    kind: str
    quad: Matrix  # coefficients of x_j^2 in equation i
    lin: Matrix   # coefficients of x_j in equation i

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BadParameters(f"unknown system kind {self.kind!r}")
        if self.quad.rows != self.quad.cols or self.lin.rows != self.lin.cols:
            raise DimensionMismatch("system matrices must be square")
        if self.quad.rows != self.lin.rows:
            raise DimensionMismatch("quadratic and linear parts disagree on size")
        if self.quad.backend != self.lin.backend:
            raise BackendMismatch("quadratic and linear parts on different backends")

    @property
    def n(self) -> int:
        return self.quad.rows

    @property
    def backend(self) -> str:
        return self.quad.backend


def _inverse_transpose(M: Matrix) -> Matrix:
    """(M^t)^{-1}, built column by column; raises SingularMatrix when M is singular."""
    Mt = transpose(M)
    n = M.rows
    cols = [solve_linear(Mt, unit_vector(j, n, M.backend))[0] for j in range(n)]
    return Matrix(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)), M.backend)


def build(kind: str, source, backend: str | None = None) -> QuadraticSystem:
    """Build a system of the given kind from an algebra or a bare structure matrix."""
    M = source.structure if isinstance(source, EvolutionAlgebra) else source
    if not isinstance(M, Matrix):
        raise BadParameters("source must be an EvolutionAlgebra or a Matrix")
    if M.rows != M.cols:
        raise DimensionMismatch("structure matrix must be square")
    if backend is not None and backend != M.backend:
        if M.backend == EXACT and backend == FLOAT:
            M = to_float(M)
        else:
            raise BackendMismatch("only exact-to-float conversion is allowed")
    n = M.rows
    if kind == GENERAL:
        return QuadraticSystem(GENERAL, identity(n, M.backend), M)
    if kind == SUBALGEBRA:
        return QuadraticSystem(SUBALGEBRA, identity(n, M.backend), _inverse_transpose(M))
    if kind == IDEMPOTENT:
        return QuadraticSystem(IDEMPOTENT, transpose(M), identity(n, M.backend))
    raise BadParameters(f"unknown system kind {kind!r}")


def evaluate(sys: QuadraticSystem, x) -> tuple:
    """Residual vector F(x); the zero vector identifies a solution."""
    if len(x) != sys.n:
        raise DimensionMismatch(f"point has {len(x)} coordinates, system has {sys.n}")
    squares = tuple(v * v for v in x)
    qpart = matvec(sys.quad, squares)
    lpart = matvec(sys.lin, x)
    return tuple(a - b for a, b in zip(qpart, lpart))


def jacobian(sys: QuadraticSystem, x) -> Matrix:
    """Derivative matrix J[i][k] = 2 Q[i][k] x_k - L[i][k] at the point x."""
    if len(x) != sys.n:
        raise DimensionMismatch(f"point has {len(x)} coordinates, system has {sys.n}")
    two = zero_scalar(sys.backend) + 2 if sys.backend == EXACT else 2.0
    rows = []
    for i in range(sys.n):
        qrow = sys.quad.entries[i]
        lrow = sys.lin.entries[i]
        rows.append(tuple(two * q * xk - l for q, xk, l in zip(qrow, x, lrow)))
    return Matrix(tuple(rows), sys.backend)


def as_float_arrays(sys: QuadraticSystem):
    """(Q, L) as complex numpy arrays; exact systems convert explicitly."""
    Q = np.array([[complex(v) for v in row] for row in sys.quad.entries], dtype=complex)
    L = np.array([[complex(v) for v in row] for row in sys.lin.entries], dtype=complex)
    return Q, L
