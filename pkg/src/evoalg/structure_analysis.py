"""From solver endpoints to algebraic statements.

Idempotents are the non-trivial solutions of the idempotent system and
one-dimensional subalgebras of a regular algebra are the non-trivial
solutions of the subalgebra system; for regular algebras the two
systems have the same solution set.  Every candidate coming out of the
solver is revalidated inside the algebra itself (via ``multiply``),
independently of how the polynomial system was built, before it is
reported.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadParameters, NotIdempotent, NotRegular
from .evolution_core import (
    Element,
    EvolutionAlgebra,
    is_regular,
    multiply,
    to_float_algebra,
)
from .homotopy_solver import Solution, SolverConfig, _canonical_key, solve
from .quadratic_system import IDEMPOTENT, SUBALGEBRA, build
from .scalar_linalg import EXACT, FLOAT, Matrix, rank, scalar_is_zero


@dataclass(frozen=True)
class IdempotentWitness:
    """A non-zero u with u*u = u, certified by re-multiplication in the algebra."""

    element: Element
    residual: float  # max-norm of multiply(u, u) - u
    support: tuple   # 0-based indices of coordinates above tol_zero


@dataclass(frozen=True)
class ObstructionWitness:
    """An idempotent supported on >= 2 basis vectors with independent squares."""

    idempotent: IdempotentWitness
    square_rank: int


def _algebra_residual(u: Element, alg: EvolutionAlgebra) -> float:
    w = multiply(u, u, alg)
    return max(abs(a - b) for a, b in zip(w.coords, u.coords))


def _witness_from_point(point, alg: EvolutionAlgebra, cfg: SolverConfig):
    u = Element(tuple(point), FLOAT)
    residual = _algebra_residual(u, alg)
    if residual > cfg.tol_final:
        return None
    support = tuple(i for i, z in enumerate(point) if abs(z) > cfg.tol_zero)
    return IdempotentWitness(u, residual, support)


def _nontrivial(solutions, cfg: SolverConfig):
    return [s for s in solutions if max(abs(z) for z in s.point) > cfg.tol_zero]


def _idempotents_with_outcome(alg: EvolutionAlgebra, cfg: SolverConfig):
    falg = to_float_algebra(alg)
    outcome = solve(build(IDEMPOTENT, falg), cfg)
    witnesses = []
    for s in _nontrivial(outcome.solutions, cfg):
        w = _witness_from_point(s.point, falg, cfg)
        if w is not None:
            witnesses.append(w)
    witnesses.sort(key=lambda w: _canonical_key(w.element.coords))
    return witnesses, outcome


def find_idempotents(alg: EvolutionAlgebra, cfg: SolverConfig = SolverConfig()):
    """All isolated non-zero idempotents the solver can certify, sorted canonically.

    Works for non-regular algebras too; an empty list is a valid result.
    """
    witnesses, _ = _idempotents_with_outcome(alg, cfg)
    return witnesses


def _subalgebras_with_outcome(alg: EvolutionAlgebra, cfg: SolverConfig):
    if not is_regular(alg, cfg.tol_zero):
        raise NotRegular("one-dimensional subalgebras via this system need a regular algebra")
    falg = to_float_algebra(alg)
    outcome = solve(build(SUBALGEBRA, falg), cfg)
    spans = []
    for s in _nontrivial(outcome.solutions, cfg):
        v = Element(tuple(s.point), FLOAT)
        vv = multiply(v, v, falg)
        two_rows = Matrix((v.coords, vv.coords), FLOAT)
        if rank(two_rows, cfg.tol_zero).rank == 1:
            spans.append(v)
    spans.sort(key=lambda e: _canonical_key(e.coords))
    return spans, outcome


def one_dim_subalgebras(alg: EvolutionAlgebra, cfg: SolverConfig = SolverConfig()):
    """Spanning vectors of the non-zero one-dimensional subalgebras (regular algebras)."""
    spans, _ = _subalgebras_with_outcome(alg, cfg)
    return spans


def _support_of(u: Element, tol: float) -> tuple:
    if u.backend == EXACT:
        return tuple(i for i, x in enumerate(u.coords) if not x.is_zero)
    return tuple(i for i, x in enumerate(u.coords) if abs(x) > tol)


def is_natural_vector(u: Element, alg: EvolutionAlgebra, tol: float = 1e-8) -> bool:
    """Rank criterion for a non-zero idempotent: extendable to a natural basis
    iff the squares of its supporting basis vectors span a line."""
    support = _support_of(u, tol)
    if not support:
        raise NotIdempotent("the zero vector is not an idempotent")
    if alg.backend == EXACT:
        w = multiply(u, u, alg)
        if any(not scalar_is_zero(a - b, EXACT) for a, b in zip(w.coords, u.coords)):
            raise NotIdempotent("u*u differs from u")
    else:
        if _algebra_residual(u, alg) > tol:
            raise NotIdempotent("u*u differs from u beyond tolerance")
    rows = tuple(alg.structure.entries[i] for i in support)
    return rank(Matrix(rows, alg.backend), tol).rank == 1


def completeness_obstruction(alg: EvolutionAlgebra, cfg: SolverConfig = SolverConfig()):
    """Witness that a regular algebra of dimension >= 2 is not complete.

    Any certified idempotent supported on at least two basis vectors
    whose squares are independent does the job; for a regular algebra
    the squares are rows of an invertible matrix, so any support of
    size >= 2 qualifies.  Returns None only when the solver produced no
    such point (a solver shortfall, not a structural statement).
    """
    if alg.n < 2:
        raise BadParameters("completeness obstruction needs dimension >= 2")
    if not is_regular(alg, cfg.tol_zero):
        raise NotRegular("the obstruction argument applies to regular algebras")
    falg = to_float_algebra(alg)
    witnesses, _ = _idempotents_with_outcome(alg, cfg)
    candidates = list(witnesses)
    try:
        spans, _ = _subalgebras_with_outcome(alg, cfg)
    except NotRegular:  # pragma: no cover - regularity already checked
        spans = []
    for v in spans:
        w = _witness_from_point(v.coords, falg, cfg)
        if w is not None:
            candidates.append(w)
    candidates.sort(key=lambda w: _canonical_key(w.element.coords))
    for w in candidates:
        if len(w.support) < 2:
            continue
        rows = tuple(falg.structure.entries[i] for i in w.support)
        square_rank = rank(Matrix(rows, FLOAT), cfg.tol_zero).rank
        if square_rank >= 2:
            return ObstructionWitness(w, square_rank)
    return None


def filter_real(solutions, tol: float = 1e-8):
    """Solutions whose imaginary parts all fit under tol, with those parts zeroed.

    The residual field is kept from the unfiltered point; the origin
    (when present) passes the filter, so callers wanting non-trivial
    real solutions should additionally drop empty-support entries.
    """
    out = []
    for s in solutions:
        if all(abs(z.imag) <= tol for z in s.point):
            cleaned = tuple(complex(z.real, 0.0) for z in s.point)
            out.append(
                Solution(cleaned, s.residual, s.singular, s.support, True, s.multiplicity_hint)
            )
    return out


# --- per-algebra report ------------------------------------------------------

def witness_to_json(w: IdempotentWitness) -> dict:
    return {
        "element": [[z.real, z.imag] for z in w.element.coords],
        "residual": w.residual,
        "support": [i + 1 for i in w.support],
    }


def analyze_algebra(alg: EvolutionAlgebra, cfg: SolverConfig = SolverConfig()) -> dict:
    """Full structural report for one algebra (the CLI's ``analyze`` payload)."""
    from .evolution_core import nilpotency, solvability

    regular = is_regular(alg, cfg.tol_zero)
    sv = solvability(alg, cfg.tol_zero)
    nil = nilpotency(alg, cfg.tol_zero)
    idempotents = find_idempotents(alg, cfg)
    if regular:
        subalgebras = one_dim_subalgebras(alg, cfg)
        obstruction = completeness_obstruction(alg, cfg) if alg.n >= 2 else None
    else:
        subalgebras = []
        obstruction = None
    return {
        "n": alg.n,
        "backend": alg.backend,
        "regular": regular,
        "solvable": sv.solvable,
        "solvability_backend": "exact" if alg.backend == EXACT else "numeric",
        "right_nilpotent": nil.right_nilpotent,
        "derived_series_dims": [t.dim for t in sv.series],
        "power_chain_dims": [t.dim for t in nil.chain],
        "idempotents": [witness_to_json(w) for w in idempotents],
        "one_dim_subalgebras": [[[z.real, z.imag] for z in v.coords] for v in subalgebras],
        "obstruction": None
        if obstruction is None
        else {
            "idempotent": witness_to_json(obstruction.idempotent),
            "square_rank": obstruction.square_rank,
        },
    }
