"""Evolution-algebra data model.

An n-dimensional evolution algebra is encoded by its structure matrix:
row i holds the coordinates of e_i^2 in the distinguished natural
basis, and distinct basis vectors multiply to zero.  That single rule
drives everything in this module: element multiplication, products of
subspaces, the derived series and the right power chain, regularity and
the strongly-connected digraph test, and the block constructors for the
four classification representatives.

The JSON schema for algebras is ``{"n": int, "matrix": [[entry, ...],
...]}`` where an entry is a number, an ``[re, im]`` pair of numbers, or
(for the exact backend) a string ``"p/q"`` / a pair of such strings.
Integer entries are parsed exactly; any fractional number makes the
whole matrix float; mixing fraction strings with float literals is
rejected so exactness is never faked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BackendMismatch, BadParameters, DimensionMismatch, SchemaError
from .scalar_linalg import (
    DEFAULT_TOL,
    EXACT,
    FLOAT,
    GaussianRational,
    Matrix,
    RankResult,
    exact_matrix,
    float_matrix,
    gq,
    identity,
    is_nonsingular,
    max_entry_modulus,
    one_scalar,
    rank,
    scalar_is_zero,
    to_float,
    zero_scalar,
)


@dataclass(frozen=True)
class EvolutionAlgebra:
    """Structure matrix wrapper; row i of ``structure`` is e_i^2."""

    structure: Matrix

    def __post_init__(self):
        if self.structure.rows != self.structure.cols:
            raise DimensionMismatch("structure matrix must be square")

    @property
    def n(self) -> int:
        return self.structure.rows

    @property
    def backend(self) -> str:
        return self.structure.backend


def float_algebra(rows) -> EvolutionAlgebra:
    return EvolutionAlgebra(float_matrix(rows))


def exact_algebra(rows) -> EvolutionAlgebra:
    return EvolutionAlgebra(exact_matrix(rows))


def to_float_algebra(alg: EvolutionAlgebra) -> EvolutionAlgebra:
    if alg.backend == FLOAT:
        return alg
    return EvolutionAlgebra(to_float(alg.structure))


@dataclass(frozen=True)
class Element:
    """Coordinates of an algebra element in the natural basis."""

    coords: tuple
    backend: str

    @property
    def dim(self) -> int:
        return len(self.coords)


def float_element(seq) -> Element:
    return Element(tuple(complex(x) for x in seq), FLOAT)


def exact_element(seq) -> Element:
    from .scalar_linalg import exact_vector

    return Element(exact_vector(seq), EXACT)


def basis_element(i: int, n: int, backend: str = FLOAT) -> Element:
    one, zero = one_scalar(backend), zero_scalar(backend)
    return Element(tuple(one if j == i else zero for j in range(n)), backend)


def multiply(u: Element, v: Element, alg: EvolutionAlgebra) -> Element:
    """Product in the algebra: sum_i u_i v_i e_i^2."""
    if u.dim != alg.n or v.dim != alg.n:
        raise DimensionMismatch(
            f"elements of size {u.dim}/{v.dim} in an algebra of dimension {alg.n}"
        )
    if u.backend != alg.backend or v.backend != alg.backend:
        raise BackendMismatch("element and algebra backends differ")
    backend = alg.backend
    coords = [zero_scalar(backend)] * alg.n
    for i in range(alg.n):
        s = u.coords[i] * v.coords[i]
        if not scalar_is_zero(s, backend):
            row = alg.structure.entries[i]
            coords = [c + s * a for c, a in zip(coords, row)]
    return Element(tuple(coords), backend)


@dataclass(frozen=True)
class Subspace:
    """Row-reduced span of coordinate vectors inside the algebra."""

    ambient_dim: int
    basis: tuple  # tuple of coordinate tuples, reduced echelon rows
    backend: str

    @property
    def dim(self) -> int:
        return len(self.basis)


def span(vectors, ambient_dim: int, backend: str, tol: float = DEFAULT_TOL) -> Subspace:
    vecs = [tuple(v) for v in vectors]
    if not vecs:
        return Subspace(ambient_dim, (), backend)
    for v in vecs:
        if len(v) != ambient_dim:
            raise DimensionMismatch("vector length does not match ambient dimension")
    result = rank(Matrix(tuple(vecs), backend), tol)
    return Subspace(ambient_dim, result.basis, backend)


def whole_space(n: int, backend: str) -> Subspace:
    return Subspace(n, identity(n, backend).entries, backend)


def zero_subspace(n: int, backend: str) -> Subspace:
    return Subspace(n, (), backend)


def subspace_contains(V: Subspace, coords, tol: float = DEFAULT_TOL) -> bool:
    """True when the coordinate vector lies in V (at tolerance on the float backend)."""
    vecs = list(V.basis) + [tuple(coords)]
    stacked = rank(Matrix(tuple(vecs), V.backend), tol)
    return stacked.rank == V.dim


def subspace_product(
    V: Subspace, W: Subspace, alg: EvolutionAlgebra, tol: float = DEFAULT_TOL
) -> Subspace:
    """Span of all products of basis vectors of V and W, row-reduced.

    Independent of the chosen bases of V and W because it only depends
    on the spans.
    """
    if V.ambient_dim != alg.n or W.ambient_dim != alg.n:
        raise DimensionMismatch("subspace ambient dimension does not match the algebra")
    if V.backend != alg.backend or W.backend != alg.backend:
        raise BackendMismatch("subspace and algebra backends differ")
    products = []
    for bv in V.basis:
        ev = Element(bv, alg.backend)
        for bw in W.basis:
            products.append(multiply(ev, Element(bw, alg.backend), alg).coords)
    return span(products, alg.n, alg.backend, tol)


@dataclass(frozen=True)
class SolvabilityVerdict:
    solvable: bool
    series: tuple  # derived series, starting at the whole algebra
    index: int | None  # first k with series[k-1] = 0, when solvable


@dataclass(frozen=True)
class NilpotencyVerdict:
    right_nilpotent: bool
    chain: tuple  # right power chain, starting at the whole algebra
    index: int | None


def _descending_series(alg: EvolutionAlgebra, step, tol: float):
    # Each term is contained in the previous one, so dimensions weakly
    # decrease and equality of dimensions means the series stabilized.
    series = [whole_space(alg.n, alg.backend)]
    while True:
        cur = series[-1]
        if cur.dim == 0:
            return True, tuple(series), len(series)
        nxt = step(cur)
        series.append(nxt)
        if nxt.dim == cur.dim:
            return False, tuple(series), None


def solvability(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> SolvabilityVerdict:
    """Derived series E, E E, (E E)(E E), ... until it stabilizes or dies."""
    ok, series, index = _descending_series(
        alg, lambda cur: subspace_product(cur, cur, alg, tol), tol
    )
    return SolvabilityVerdict(ok, series, index)


def nilpotency(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> NilpotencyVerdict:
    """Right power chain E, E E, (E E) E, ... (right-nilpotency, not full nilpotency)."""
    whole = whole_space(alg.n, alg.backend)
    ok, chain, index = _descending_series(
        alg, lambda cur: subspace_product(cur, whole, alg, tol), tol
    )
    return NilpotencyVerdict(ok, chain, index)


def is_regular(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """Regular (perfect) means the structure matrix is invertible."""
    return is_nonsingular(alg.structure, tol)


def _digraph_adjacency(alg: EvolutionAlgebra, tol: float) -> list:
    thresh = 0.0
    if alg.backend == FLOAT:
        thresh = tol * max_entry_modulus(alg.structure)
    return [
        [not scalar_is_zero(x, alg.backend, thresh) for x in row]
        for row in alg.structure.entries
    ]


def _reaches_all(adj, start: int) -> bool:
    n = len(adj)
    seen = [False] * n
    seen[start] = True
    stack = [start]
    while stack:
        v = stack.pop()
        for w in range(n):
            if adj[v][w] and not seen[w]:
                seen[w] = True
                stack.append(w)
    return all(seen)


def is_simple_candidate(alg: EvolutionAlgebra, tol: float = DEFAULT_TOL) -> bool:
    """Regular with a strongly connected associated digraph (edge i->j iff a_ij != 0)."""
    if not is_regular(alg, tol):
        return False
    adj = _digraph_adjacency(alg, tol)
    radj = [[adj[j][i] for j in range(alg.n)] for i in range(alg.n)]
    return _reaches_all(adj, 0) and _reaches_all(radj, 0)


def chain_algebra(s: int, backend: str = EXACT) -> EvolutionAlgebra:
    """Shift algebra e_1^2=e_2, ..., e_{s-1}^2=e_s, e_s^2=0."""
    if s < 1:
        raise BadParameters("chain algebra needs dimension >= 1")
    rows = [[0] * s for _ in range(s)]
    for i in range(s - 1):
        rows[i][i + 1] = 1
    return exact_algebra(rows) if backend == EXACT else float_algebra(rows)


CLASSIFICATION_KINDS = ("K1", "K2", "K3", "K4")


def make_classification_algebra(kind: str, n: int, s: int | None = None) -> EvolutionAlgebra:
    """Block constructors for the four classification representatives.

    K1: the one-dimensional algebra e_1^2 = e_1 (requires n = 1).
    K2: s-dimensional maximal-nilpotency-index block plus zero block (1 <= s <= n).
    K3: e_1^2 = e_1 plus zero block.
    K4: e_1^2 = e_1 plus the nilpotent block plus zero block (1 <= s <= n-1).

    The nilpotent block is realized as the shift/chain algebra, which
    attains right-nilpotency index s+1.  Always built on the exact
    backend so solvability verdicts stay exact.
    """
    if n < 1:
        raise BadParameters("dimension must be >= 1")
    if kind == "K1":
        if n != 1:
            raise BadParameters("K1 is the one-dimensional algebra; n must be 1")
        return exact_algebra([[1]])
    if kind == "K3":
        rows = [[0] * n for _ in range(n)]
        rows[0][0] = 1
        return exact_algebra(rows)
    if kind == "K2":
        if s is None or not 1 <= s <= n:
            raise BadParameters("K2 needs 1 <= s <= n")
        rows = [[0] * n for _ in range(n)]
        for i in range(s - 1):
            rows[i][i + 1] = 1
        return exact_algebra(rows)
    if kind == "K4":
        if s is None or not 1 <= s <= n - 1:
            raise BadParameters("K4 needs 1 <= s <= n-1")
        rows = [[0] * n for _ in range(n)]
        rows[0][0] = 1
        for i in range(1, s):
            rows[i][i + 1] = 1
        return exact_algebra(rows)
    raise BadParameters(f"unknown classification kind {kind!r}")


# --- JSON schema -----------------------------------------------------------

def _entry_to_json(x, backend: str):
    if backend == EXACT:
        if not x.im:
            return str(x.re)
        return [str(x.re), str(x.im)]
    if x.imag == 0.0:
        return x.real
    return [x.real, x.imag]


def algebra_to_json(alg: EvolutionAlgebra) -> dict:
    return {
        "n": alg.n,
        "matrix": [
            [_entry_to_json(x, alg.backend) for x in row] for row in alg.structure.entries
        ],
    }


def _classify_entry(value, path: str):
    """Returns ("exact"|"float"|"int", parsed) or raises SchemaError."""
    if isinstance(value, bool):
        raise SchemaError(f"{path}: booleans are not matrix entries")
    if isinstance(value, int):
        return "int", value
    if isinstance(value, float):
        return "float", complex(value)
    if isinstance(value, str):
        try:
            return "exact", gq(value)
        except (ValueError, ZeroDivisionError):
            raise SchemaError(f"{path}: cannot parse {value!r} as a rational p/q") from None
    if isinstance(value, list) and len(value) == 2:
        a, b = value
        if isinstance(a, str) and isinstance(b, str):
            try:
                return "exact", gq(a, b)
            except (ValueError, ZeroDivisionError):
                raise SchemaError(f"{path}: cannot parse {value!r} as rationals") from None
        if isinstance(a, (int, float)) and isinstance(b, (int, float)) and not (
            isinstance(a, bool) or isinstance(b, bool)
        ):
            return "float", complex(a, b)
        raise SchemaError(f"{path}: pair entries must be two numbers or two strings")
    raise SchemaError(f"{path}: unsupported entry {value!r}")


def algebra_from_json(obj) -> EvolutionAlgebra:
    """Parse the algebra schema; errors name the offending JSON path."""
    if not isinstance(obj, dict):
        raise SchemaError("$: expected an object with keys 'n' and 'matrix'")
    if "n" not in obj:
        raise SchemaError("$.n: missing")
    if "matrix" not in obj:
        raise SchemaError("$.matrix: missing")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise SchemaError("$.n: must be a positive integer")
    matrix = obj["matrix"]
    if not isinstance(matrix, list) or len(matrix) != n:
        raise SchemaError(f"$.matrix: expected {n} rows")
    classified = []
    kinds = set()
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != n:
            raise SchemaError(f"$.matrix[{i}]: expected {n} entries")
        crow = []
        for j, value in enumerate(row):
            kind, parsed = _classify_entry(value, f"$.matrix[{i}][{j}]")
            kinds.add(kind)
            crow.append((kind, parsed))
        classified.append(crow)
    if "exact" in kinds and "float" in kinds:
        raise SchemaError(
            "$.matrix: mixes exact (string) and float entries; pick one backend"
        )
    backend = FLOAT if "float" in kinds else EXACT
    rows = []
    for crow in classified:
        if backend == EXACT:
            rows.append([parsed if kind == "exact" else gq(parsed) for kind, parsed in crow])
        else:
            rows.append([complex(parsed) for _, parsed in crow])
    return exact_algebra(rows) if backend == EXACT else float_algebra(rows)
