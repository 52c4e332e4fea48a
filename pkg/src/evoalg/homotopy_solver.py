"""Total-degree homotopy continuation for the quadratic systems.

The start system is G_i(x) = x_i^2 - c_i with random non-zero c_i, whose
2^n roots are all sign choices of sqrt(c_i).  Each root is tracked along
the gamma-trick homotopy

    H(x, t) = (1 - t) * gamma * G(x) + t * F(x),        t: 0 -> 1,

with an Euler predictor on dx/dt = -(dH/dx)^{-1} (dH/dt) and a Newton
corrector, halving the step on corrector failure and growing it after
easy successes.  Endpoints are polished by Newton iteration on F itself,
clustered within ``tol_dedup``, and classified (support, realness,
Jacobian singularity).  A path that leaves the divergence bound is a
root at infinity; whether that is a legitimate outcome or a failure is
the caller's call (the general kind has no roots at infinity when A is
invertible, the other kinds may).

Paths are independent: shared inputs are read-only, each path owns its
state, and results are merged in path order before the canonical sort,
so runs with ``parallel`` on and off produce identical output for a
fixed seed and configuration.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BadParameters, SchemaError
from .quadratic_system import QuadraticSystem, as_float_arrays

_CORRECTOR_ITERS = 4
_REFINE_ITERS = 20
_STEP_GROWTH = 1.5
# A failed path this close to the divergence bound is treated as divergent:
# the tracker ran out of steps chasing a root that is escaping to infinity.
_ESCAPE_FRACTION = 0.01
_SORT_DECIMALS = 9


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and stepping policy for one solve; immutable and reusable."""

    tol_track: float = 1e-8
    tol_final: float = 1e-10
    tol_dedup: float = 1e-6
    tol_zero: float = 1e-8
    max_steps: int = 1500
    step_init: float = 0.05
    step_min: float = 1e-11
    step_max: float = 0.25
    rng_seed: int = 0
    divergence_bound: float = 1e6
    parallel: bool = False

    def __post_init__(self):
        for name in ("tol_track", "tol_final", "tol_dedup", "tol_zero"):
            if getattr(self, name) <= 0:
                raise BadParameters(f"{name} must be positive")
        if not 0 < self.step_min <= self.step_init <= self.step_max:
            raise BadParameters("need 0 < step_min <= step_init <= step_max")
        if self.max_steps < 1 or self.divergence_bound <= 0:
            raise BadParameters("max_steps and divergence_bound must be positive")


@dataclass(frozen=True)
class StartSystem:
    """G_i(x) = x_i^2 - c_i with known roots."""

    c: tuple

    @property
    def n(self) -> int:
        return len(self.c)

    def evaluate(self, x):
        xa = np.asarray(x, dtype=complex)
        return xa * xa - np.asarray(self.c, dtype=complex)


@dataclass(frozen=True)
class Solution:
    """One clustered endpoint.

    ``support`` holds 0-based coordinate indices internally; the JSON
    form uses 1-based indices.  ``multiplicity_hint`` is the number of
    paths that converged into this cluster, a stand-in for (not a proof
    of) intersection multiplicity.
    """

    point: tuple
    residual: float
    singular: bool
    support: tuple
    is_real: bool
    multiplicity_hint: int


@dataclass(frozen=True)
class SolveOutcome:
    solutions: tuple
    diverged_paths: int
    failed_paths: int
    bezout_count: int
    n: int
    kind: str


@dataclass(frozen=True)
class PathResult:
    status: str  # "endpoint" | "diverged" | "failed"
    point: tuple | None
    residual: float | None
    steps: int


def _draw_start_coeffs(rng, n: int) -> np.ndarray:
    radii = rng.uniform(0.5, 2.0, size=n)
    angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
    return radii * np.exp(1j * angles)


def _start_points(c: np.ndarray) -> list:
    roots = np.sqrt(c)
    pts = []
    for signs in itertools.product((1.0, -1.0), repeat=len(c)):
        pts.append(tuple(s * r for s, r in zip(signs, roots)))
    return pts


def start_system(n: int, seed: int = 0):
    """Seeded start system and its 2^n exact roots (coefficients on the 0.5..2 annulus)."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    rng = np.random.default_rng(seed)
    c = _draw_start_coeffs(rng, n)
    return StartSystem(tuple(c)), tuple(_start_points(c))


def _target_arrays(target):
    """(Q, L, k) with F(x) = Q (x o x) - L x - k; accepts a start system as target too."""
    if isinstance(target, QuadraticSystem):
        Q, L = as_float_arrays(target)
        return Q, L, np.zeros(target.n, dtype=complex)
    if isinstance(target, StartSystem):
        n = target.n
        return np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex), np.asarray(
            target.c, dtype=complex
        )
    raise BadParameters("target must be a QuadraticSystem or a StartSystem")


def _eval_F(Q, L, k, x):
    return Q @ (x * x) - L @ x - k


def _jac_F(Q, L, x):
    return 2.0 * (Q * x[None, :]) - L


def _eval_H(Q, L, k, c, gamma, x, t):
    xx = x * x
    return (1.0 - t) * gamma * (xx - c) + t * (Q @ xx - L @ x - k)


def _jac_H(Q, L, gamma, x, t):
    J = t * (2.0 * (Q * x[None, :]) - L)
    idx = np.arange(x.size)
    J[idx, idx] += 2.0 * (1.0 - t) * gamma * x
    return J


def _dt_H(Q, L, k, c, gamma, x):
    xx = x * x
    return (Q @ xx - L @ x - k) - gamma * (xx - c)


def _correct(Q, L, k, c, gamma, x, t, cfg: SolverConfig):
    """Newton iteration on H(., t); returns (converged, point, iterations used)."""
    for it in range(_CORRECTOR_ITERS + 1):
        r = _eval_H(Q, L, k, c, gamma, x, t)
        res = np.max(np.abs(r))
        if not np.isfinite(res):
            return False, x, it
        if res <= cfg.tol_track:
            return True, x, it
        if it == _CORRECTOR_ITERS:
            return False, x, it
        try:
            dx = np.linalg.solve(_jac_H(Q, L, gamma, x, t), -r)
        except np.linalg.LinAlgError:
            return False, x, it
        x = x + dx
    return False, x, _CORRECTOR_ITERS


def _fail_or_diverge(x, steps: int, cfg: SolverConfig) -> PathResult:
    norm = np.max(np.abs(x))
    if not np.isfinite(norm) or norm > _ESCAPE_FRACTION * cfg.divergence_bound:
        return PathResult("diverged", None, None, steps)
    return PathResult("failed", None, None, steps)


def _refine(Q, L, k, x, steps: int, cfg: SolverConfig) -> PathResult:
    """Newton polish on F; succeeds only below tol_final (quadratic-convergence guard)."""
    best = x
    best_res = np.inf
    floor = max(1e-15, cfg.tol_final * 1e-4)
    for _ in range(_REFINE_ITERS):
        r = _eval_F(Q, L, k, x)
        res = np.max(np.abs(r))
        if not np.isfinite(res):
            break
        if res < best_res:
            best, best_res = x, res
        else:
            break  # stopped improving; stalling means a (near-)singular root
        if best_res <= floor:
            break
        try:
            dx = np.linalg.solve(_jac_F(Q, L, x), -r)
        except np.linalg.LinAlgError:
            break
        x = x + dx
        norm = np.max(np.abs(x))
        if not np.isfinite(norm) or norm > cfg.divergence_bound:
            return PathResult("diverged", None, None, steps)
    if best_res <= cfg.tol_final:
        return PathResult("endpoint", tuple(complex(z) for z in best), float(best_res), steps)
    return _fail_or_diverge(best, steps, cfg)


def _track_one(Q, L, k, c, gamma, start, cfg: SolverConfig) -> PathResult:
    x = np.asarray(start, dtype=complex)
    t = 0.0
    h = cfg.step_init
    steps = 0
    while t < 1.0 - 1e-14:
        if steps >= cfg.max_steps:
            return _fail_or_diverge(x, steps, cfg)
        steps += 1
        h_step = min(h, 1.0 - t)
        try:
            dx = np.linalg.solve(_jac_H(Q, L, gamma, x, t), -_dt_H(Q, L, k, c, gamma, x))
            pred = x + h_step * dx
        except np.linalg.LinAlgError:
            pred = x
        if not np.all(np.isfinite(pred)):
            pred = x
        ok, x_new, iters = _correct(Q, L, k, c, gamma, pred, t + h_step, cfg)
        if ok:
            x = x_new
            t = t + h_step
            if iters <= 2:
                h = min(h * _STEP_GROWTH, cfg.step_max)
            norm = np.max(np.abs(x))
            if not np.isfinite(norm) or norm > cfg.divergence_bound:
                return PathResult("diverged", None, None, steps)
        else:
            h *= 0.5
            if h < cfg.step_min:
                return _fail_or_diverge(x, steps, cfg)
    return _refine(Q, L, k, x, steps, cfg)


def track_path(start, target, G: StartSystem, gamma: complex, cfg: SolverConfig) -> PathResult:
    """Track one start root of G to the target along the gamma homotopy.

    ``start`` must satisfy H(., 0) = 0, i.e. be a root of G.  Failure is
    a result state ("failed"/"diverged"), never an exception.
    """
    Q, L, k = _target_arrays(target)
    c = np.asarray(G.c, dtype=complex)
    return _track_one(Q, L, k, c, complex(gamma), start, cfg)


def _min_pivot_and_scale(J: np.ndarray):
    A = J.copy()
    n = A.shape[0]
    scale = float(np.max(np.abs(A)))
    smallest = np.inf
    for col in range(n):
        sub = np.abs(A[col:, col])
        p = int(np.argmax(sub)) + col
        piv = abs(A[p, col])
        smallest = min(smallest, piv)
        if piv == 0.0:
            return 0.0, scale
        if p != col:
            A[[col, p], :] = A[[p, col], :]
        A[col + 1:, col:] -= np.outer(A[col + 1:, col] / A[col, col], A[col, col:])
    return float(smallest), scale


def _canonical_key(point):
    key = []
    for z in point:
        key.append((round(z.real, _SORT_DECIMALS), round(z.imag, _SORT_DECIMALS), z.real, z.imag))
    return tuple(key)


def _classify(point, residual, multiplicity, Q, L, cfg: SolverConfig) -> Solution:
    arr = np.asarray(point, dtype=complex)
    support = tuple(i for i, z in enumerate(point) if abs(z) > cfg.tol_zero)
    is_real = all(abs(z.imag) <= cfg.tol_zero for z in point)
    smallest, scale = _min_pivot_and_scale(_jac_F(Q, L, arr))
    singular = smallest <= cfg.tol_zero * scale
    return Solution(tuple(point), residual, singular, support, is_real, multiplicity)


def solve(sys: QuadraticSystem, cfg: SolverConfig = SolverConfig()) -> SolveOutcome:
    """Track all 2^n paths, refine, deduplicate and classify the endpoints.

    Deterministic for a fixed seed and configuration, with parallelism
    on or off; endpoint clusters carry the number of converging paths
    as ``multiplicity_hint`` and the reported residual is certified by
    re-evaluation at the representative point.
    """
    n = sys.n
    Q, L = as_float_arrays(sys)
    k = np.zeros(n, dtype=complex)
    rng = np.random.default_rng(cfg.rng_seed)
    c = _draw_start_coeffs(rng, n)
    gamma = complex(np.exp(2j * np.pi * rng.uniform()))
    starts = _start_points(c)

    def run(s):
        return _track_one(Q, L, k, c, gamma, s, cfg)

    if cfg.parallel and len(starts) > 1:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(s) for s in starts]

    diverged = sum(1 for r in results if r.status == "diverged")
    failed = sum(1 for r in results if r.status == "failed")
    endpoints = [r for r in results if r.status == "endpoint"]

    clusters = []  # [representative PathResult, member count]
    for r in endpoints:
        placed = False
        for cl in clusters:
            rep = cl[0]
            dist = max(abs(a - b) for a, b in zip(r.point, rep.point))
            if dist <= cfg.tol_dedup:
                cl[1] += 1
                if r.residual < rep.residual:
                    cl[0] = r
                placed = True
                break
        if not placed:
            clusters.append([r, 1])

    solutions = [
        _classify(rep.point, rep.residual, count, Q, L, cfg) for rep, count in clusters
    ]
    solutions.sort(key=lambda s: _canonical_key(s.point))
    outcome = SolveOutcome(tuple(solutions), diverged, failed, 2 ** n, n, sys.kind)
    total = sum(s.multiplicity_hint for s in outcome.solutions) + diverged + failed
    assert total == outcome.bezout_count, "path accounting broke"
    return outcome


# --- JSON ------------------------------------------------------------------

def solution_to_json(s: Solution) -> dict:
    return {
        "point": [[z.real, z.imag] for z in s.point],
        "residual": s.residual,
        "singular": s.singular,
        "support": [i + 1 for i in s.support],
        "real": s.is_real,
        "multiplicity_hint": s.multiplicity_hint,
    }


def solution_from_json(obj) -> Solution:
    try:
        point = tuple(complex(re, im) for re, im in obj["point"])
        return Solution(
            point,
            float(obj["residual"]),
            bool(obj["singular"]),
            tuple(i - 1 for i in obj["support"]),
            bool(obj["real"]),
            int(obj["multiplicity_hint"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"solution object: {exc}") from None


def outcome_to_json(o: SolveOutcome) -> dict:
    return {
        "schema": "evoalg-solve-v1",
        "kind": o.kind,
        "n": o.n,
        "bezout_count": o.bezout_count,
        "diverged_paths": o.diverged_paths,
        "failed_paths": o.failed_paths,
        "solutions": [solution_to_json(s) for s in o.solutions],
    }


def outcome_from_json(obj) -> SolveOutcome:
    if not isinstance(obj, dict) or obj.get("schema") != "evoalg-solve-v1":
        raise SchemaError('$.schema: expected "evoalg-solve-v1"')
    try:
        return SolveOutcome(
            tuple(solution_from_json(s) for s in obj["solutions"]),
            int(obj["diverged_paths"]),
            int(obj["failed_paths"]),
            int(obj["bezout_count"]),
            int(obj["n"]),
            str(obj["kind"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"$: {exc}") from None
