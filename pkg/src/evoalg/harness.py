"""Randomized verification campaigns and the conjecture tester.

Campaigns draw seeded random algebras, run the relevant solve, and sort
every trial into pass / solver shortfall / counterexample candidate.
The two theorems exercised here are proved, so a candidate always means
a solver bug and the campaigns are expected to stay clean; the
solvability conjecture is open, so disagreement there is logged with
full reproduction data instead of failing the run.  One hard guard is
non-negotiable: an algebra reported both solvable and carrying an
idempotent contradicts the proved necessity direction and raises
``InternalConsistencyError`` immediately.
"""

from __future__ import annotations

import dataclasses
import json
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import BadParameters, InternalConsistencyError
from .evolution_core import (
    EvolutionAlgebra,
    algebra_to_json,
    exact_algebra,
    float_algebra,
    make_classification_algebra,
    nilpotency,
    solvability,
    to_float_algebra,
)
from .homotopy_solver import SolverConfig, outcome_to_json, solve
from .quadratic_system import GENERAL, build, jacobian
from .scalar_linalg import EXACT
from .structure_analysis import (
    _idempotents_with_outcome,
    witness_to_json,
)

REPORT_SCHEMA = "evoalg-report-v1"

PROFILE_REGULAR = "regular-complex"
PROFILE_RATIONAL = "rational"
_SPARSE_RE = re.compile(r"^sparse\((?P<p>[0-9.eE+-]+)\)$")


@dataclass(frozen=True)
class CampaignReport:
    campaign: str
    trials: int
    passes: int
    solver_shortfalls: int
    counterexample_candidates: tuple
    seed: int
    config: SolverConfig
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        total = self.passes + self.solver_shortfalls + len(self.counterexample_candidates)
        if total != self.trials:
            raise InternalConsistencyError("campaign accounting does not add up")

    @property
    def shortfall_rate(self) -> float:
        return self.solver_shortfalls / self.trials if self.trials else 0.0


def report_to_json(r: CampaignReport) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "campaign": r.campaign,
        "trials": r.trials,
        "passes": r.passes,
        "solver_shortfalls": r.solver_shortfalls,
        "counterexample_candidates": list(r.counterexample_candidates),
        "seed": r.seed,
        "config": dataclasses.asdict(r.config),
        "details": r.details,
    }


def report_json_text(r: CampaignReport) -> str:
    return json.dumps(report_to_json(r), sort_keys=True, indent=2)


@dataclass(frozen=True)
class ConjectureVerdict:
    """The three legs of the solvability conjecture for one algebra.

    ``consistent`` is derived from the other three, never asserted:
    the conjectured equivalence holds iff solvable, no-idempotent and
    only-trivial-solution all point the same way.
    """

    solvable: bool
    has_idempotent: bool
    only_trivial_solution: bool
    consistent: bool
    solvability_exact: bool

    @staticmethod
    def make(solvable, has_idempotent, only_trivial, exact) -> "ConjectureVerdict":
        consistent = (solvable == (not has_idempotent)) and (solvable == only_trivial)
        return ConjectureVerdict(solvable, has_idempotent, only_trivial, consistent, exact)


def verdict_to_json(v: ConjectureVerdict) -> dict:
    return {
        "solvable": v.solvable,
        "has_idempotent": v.has_idempotent,
        "only_trivial_solution": v.only_trivial_solution,
        "consistent": v.consistent,
        "solvability_backend": "exact" if v.solvability_exact else "numeric",
    }


# --- random algebra profiles -------------------------------------------------

def _parse_profile(profile: str):
    if profile == PROFILE_REGULAR:
        return ("regular", None)
    if profile == PROFILE_RATIONAL:
        return ("rational", None)
    m = _SPARSE_RE.match(profile)
    if m:
        p = float(m.group("p"))
        if not 0.0 <= p <= 1.0:
            raise BadParameters("sparsity must lie in [0, 1]")
        return ("sparse", p)
    raise BadParameters(f"unknown profile {profile!r}")


def _rational_entries(rng, n: int):
    # numerators in [-9, 9], denominators in [1, 9]
    from fractions import Fraction

    nums = rng.integers(-9, 10, size=(n, n))
    dens = rng.integers(1, 10, size=(n, n))
    return [[Fraction(int(nums[i][j]), int(dens[i][j])) for j in range(n)] for i in range(n)]


def random_algebra(n: int, profile: str, seed: int) -> EvolutionAlgebra:
    """Seeded random structure matrix.

    ``regular-complex``: complex Gaussian entries, resampled until the
    determinant clears a scale-relative floor (float backend).
    ``rational``: entries p/q with |p|, |q| <= 9 (exact backend).
    ``sparse(p)``: rational entries, each zeroed with probability p
    (exact backend, so solvability verdicts stay exact).
    """
    if n < 1:
        raise BadParameters("n must be >= 1")
    kind, p = _parse_profile(profile)
    rng = np.random.default_rng(seed)
    if kind == "regular":
        while True:
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            scale = max(1.0, float(np.max(np.abs(A)))) ** n
            if abs(np.linalg.det(A)) > 1e-6 * scale:
                return float_algebra(A)
    entries = _rational_entries(rng, n)
    if kind == "sparse":
        mask = rng.random((n, n))
        for i in range(n):
            for j in range(n):
                if mask[i][j] < p:
                    entries[i][j] = 0
    return exact_algebra(entries)


def _trial_seeds(seed: int, index: int):
    """Deterministic (data_seed, solver_seed) pair for one trial."""
    ss = np.random.SeedSequence(entropy=(seed, index))
    data, solver = ss.spawn(2)
    return data, int(solver.generate_state(1)[0])


def _solver_cfg(cfg: SolverConfig, solver_seed: int) -> SolverConfig:
    return dataclasses.replace(cfg, rng_seed=solver_seed)


# --- theorem campaigns -------------------------------------------------------

def single_support_violations(A: np.ndarray, outcome, tol: float = 1e-8,
                              det_rtol: float = 1e-6):
    """Check the one-non-zero-coordinate identities on every support-1 solution.

    Such a solution (0, ..., x_i, ..., 0) forces x_i = a_ii, a zero
    off-diagonal column i, and |det J(x)| = |det A|.  Returns
    (number of solutions checked, list of violation strings).
    """
    n = A.shape[0]
    det_a = abs(np.linalg.det(A))
    checked = 0
    violations = []
    for s in outcome.solutions:
        if len(s.support) != 1:
            continue
        checked += 1
        i = s.support[0]
        x_i = s.point[i]
        if abs(x_i - A[i, i]) > tol:
            violations.append(f"support {{{i + 1}}}: x_i={x_i} but a_ii={A[i, i]}")
        off = [abs(A[j, i]) for j in range(n) if j != i]
        if off and max(off) > tol:
            violations.append(f"support {{{i + 1}}}: column {i + 1} not zero off-diagonal")
        xarr = np.asarray(s.point, dtype=complex)
        J = 2.0 * np.diag(xarr) - A
        det_j = abs(np.linalg.det(J))
        if abs(det_j - det_a) > det_rtol * det_a:
            violations.append(
                f"support {{{i + 1}}}: |det J|={det_j} vs |det A|={det_a}"
            )
    return checked, violations


def _theorem21_trial(n: int, alg: EvolutionAlgebra, trial_cfg: SolverConfig):
    """Returns (status, evidence) with status in pass/shortfall/candidate."""
    sys = build(GENERAL, alg)
    outcome = solve(sys, trial_cfg)
    A = np.array(
        [[complex(v) for v in row] for row in alg.structure.entries], dtype=complex
    )
    issues = []
    J0 = jacobian(sys, tuple(0j for _ in range(n)))
    j0_dev = max(
        abs(complex(J0.entries[i][j]) + A[i, j]) for i in range(n) for j in range(n)
    )
    if j0_dev > 1e-12:
        issues.append(f"J(0) deviates from -A by {j0_dev}")
    low = [s for s in outcome.solutions if len(s.support) <= 1]
    if len(low) > n + 1:
        issues.append(f"{len(low)} solutions with support <= 1 exceeds n+1={n + 1}")
    singular_low = [s for s in low if s.singular]
    if singular_low:
        issues.append(f"{len(singular_low)} low-support solutions flagged singular")
    checked, ident_violations = single_support_violations(A, outcome)
    issues.extend(ident_violations)
    path_failures = outcome.diverged_paths + outcome.failed_paths
    has_wide = any(len(s.support) >= 2 for s in outcome.solutions)
    stats = {
        "j0_dev": j0_dev,
        "low_support": len(low),
        "single_support_checked": checked,
        "path_failures": path_failures,
    }
    if issues:
        return "candidate", {
            "algebra": algebra_to_json(alg),
            "evidence": issues,
            "outcome": outcome_to_json(outcome),
        }, stats
    if path_failures > 0:
        return "shortfall", None, stats
    if not has_wide:
        return "candidate", {
            "algebra": algebra_to_json(alg),
            "evidence": ["no solution with support >= 2 despite full path accounting"],
            "outcome": outcome_to_json(outcome),
        }, stats
    return "pass", None, stats


def verify_theorem_main(n: int, trials: int, cfg: SolverConfig = SolverConfig()) -> CampaignReport:
    """Random invertible matrices: some solution has support >= 2, the low-support
    census stays within n+1 non-singular points, and J(0) = -A."""
    if n < 2:
        raise BadParameters("the main theorem campaign needs n >= 2")
    passes = shortfalls = 0
    candidates = []
    j0_max = 0.0
    low_max = 0
    checked_total = 0
    for t in range(trials):
        data_seed, solver_seed = _trial_seeds(cfg.rng_seed, t)
        alg = random_algebra(n, PROFILE_REGULAR, data_seed)
        status, payload, stats = _theorem21_trial(n, alg, _solver_cfg(cfg, solver_seed))
        j0_max = max(j0_max, stats["j0_dev"])
        low_max = max(low_max, stats["low_support"])
        checked_total += stats["single_support_checked"]
        if status == "pass":
            passes += 1
        elif status == "shortfall":
            shortfalls += 1
        else:
            payload["trial"] = t
            candidates.append(payload)
    return CampaignReport(
        "theorem21",
        trials,
        passes,
        shortfalls,
        tuple(candidates),
        cfg.rng_seed,
        cfg,
        {
            "n": n,
            "j0_max_dev": j0_max,
            "max_low_support": low_max,
            "single_support_checked": checked_total,
        },
    )


def verify_idempotent_existence(
    n: int, trials: int, cfg: SolverConfig = SolverConfig()
) -> CampaignReport:
    """Random regular algebras each admit at least one certified idempotent."""
    if n < 1:
        raise BadParameters("n must be >= 1")
    passes = shortfalls = 0
    candidates = []
    worst_residual = 0.0
    for t in range(trials):
        data_seed, solver_seed = _trial_seeds(cfg.rng_seed, t)
        alg = random_algebra(n, PROFILE_REGULAR, data_seed)
        witnesses, outcome = _idempotents_with_outcome(alg, _solver_cfg(cfg, solver_seed))
        if witnesses:
            worst_residual = max(worst_residual, max(w.residual for w in witnesses))
            passes += 1
        elif outcome.failed_paths + outcome.diverged_paths > 0:
            # unaccounted paths: absence cannot be certified, existence is proved
            shortfalls += 1
        else:
            candidates.append(
                {
                    "trial": t,
                    "algebra": algebra_to_json(alg),
                    "evidence": ["regular algebra with no idempotent found"],
                    "outcome": outcome_to_json(outcome),
                }
            )
    return CampaignReport(
        "theorem35",
        trials,
        passes,
        shortfalls,
        tuple(candidates),
        cfg.rng_seed,
        cfg,
        {"n": n, "worst_witness_residual": worst_residual},
    )


# --- the solvability conjecture ----------------------------------------------

def _guard_proved_direction(solvable: bool, has_idempotent: bool, context: str):
    if solvable and has_idempotent:
        raise InternalConsistencyError(
            f"{context}: reported solvable together with an idempotent; "
            "this contradicts the proved necessity direction"
        )


def _conjecture_data(alg: EvolutionAlgebra, cfg: SolverConfig):
    sv = solvability(alg, cfg.tol_zero)
    witnesses, outcome = _idempotents_with_outcome(alg, cfg)
    has_idempotent = bool(witnesses)
    nontrivial = [
        s for s in outcome.solutions if max(abs(z) for z in s.point) > cfg.tol_zero
    ]
    only_trivial = not nontrivial
    _guard_proved_direction(sv.solvable, has_idempotent, "conjecture test")
    verdict = ConjectureVerdict.make(
        sv.solvable, has_idempotent, only_trivial, alg.backend == EXACT
    )
    return verdict, witnesses, outcome


def test_conjecture(alg: EvolutionAlgebra, cfg: SolverConfig = SolverConfig()) -> ConjectureVerdict:
    """Evaluate solvable / has-idempotent / only-trivial for one algebra.

    Solvability runs on the algebra's own backend (exact stays exact);
    the other two legs run through the idempotent-system solve.  Raises
    ``InternalConsistencyError`` on solvable-with-idempotent, which
    contradicts a proved statement and therefore means a bug.
    """
    verdict, _, _ = _conjecture_data(alg, cfg)
    return verdict


_SWEEP_PROFILES = (PROFILE_RATIONAL, "sparse(0.35)", "sparse(0.65)", PROFILE_REGULAR)


def conjecture_campaign(
    n_max: int, trials: int, cfg: SolverConfig = SolverConfig()
) -> CampaignReport:
    """Mixed-profile random sweep of the conjecture.

    A trial passes when the three legs agree.  Disagreements backed by
    an exact solvability verdict and full path accounting are logged as
    candidates with reproduction data (the run still succeeds: the
    conjecture is open and a numerical artifact must not claim to
    refute it); anything uncertifiable counts as a shortfall.
    """
    if n_max < 1:
        raise BadParameters("n_max must be >= 1")
    passes = shortfalls = 0
    candidates = []
    for t in range(trials):
        data_seed, solver_seed = _trial_seeds(cfg.rng_seed, t)
        rng = np.random.default_rng(data_seed)
        n = int(rng.integers(1, n_max + 1))
        profile = _SWEEP_PROFILES[t % len(_SWEEP_PROFILES)]
        alg = random_algebra(n, profile, rng)
        verdict, witnesses, outcome = _conjecture_data(alg, _solver_cfg(cfg, solver_seed))
        if verdict.consistent:
            passes += 1
        elif not verdict.solvability_exact or outcome.failed_paths > 0:
            shortfalls += 1
        else:
            candidates.append(
                {
                    "trial": t,
                    "profile": profile,
                    "algebra": algebra_to_json(alg),
                    "verdict": verdict_to_json(verdict),
                    "idempotents": [witness_to_json(w) for w in witnesses],
                    "outcome": outcome_to_json(outcome),
                }
            )
    return CampaignReport(
        "conjecture36",
        trials,
        passes,
        shortfalls,
        tuple(candidates),
        cfg.rng_seed,
        cfg,
        {"n_max": n_max, "profiles": list(_SWEEP_PROFILES)},
    )


# --- classification sweep ------------------------------------------------------

def _expected_classification(kind: str):
    if kind == "K2":
        return {"solvable": True, "right_nilpotent": True, "has_idempotent": False}
    return {"solvable": False, "has_idempotent": True}


def classification_sweep(n_max: int, cfg: SolverConfig = SolverConfig()) -> CampaignReport:
    """Every classification representative up to n_max behaves as classified:
    K2 solvable and right-nilpotent with no idempotents, K1/K3/K4 non-solvable
    with the first basis vector as an idempotent."""
    cases = [("K1", 1, None)]
    for n in range(1, n_max + 1):
        cases.append(("K3", n, None))
        for s in range(1, n + 1):
            cases.append(("K2", n, s))
        for s in range(1, n):
            cases.append(("K4", n, s))
    passes = 0
    candidates = []
    for idx, (kind, n, s) in enumerate(cases):
        _, solver_seed = _trial_seeds(cfg.rng_seed, idx)
        alg = make_classification_algebra(kind, n, s)
        sv = solvability(alg, cfg.tol_zero)
        nil = nilpotency(alg, cfg.tol_zero)
        witnesses, _ = _idempotents_with_outcome(alg, _solver_cfg(cfg, solver_seed))
        _guard_proved_direction(sv.solvable, bool(witnesses), f"{kind}(n={n}, s={s})")
        expected = _expected_classification(kind)
        issues = []
        if sv.solvable != expected["solvable"]:
            issues.append(f"solvable={sv.solvable}, expected {expected['solvable']}")
        if bool(witnesses) != expected["has_idempotent"]:
            issues.append(f"has_idempotent={bool(witnesses)}")
        if expected.get("right_nilpotent") and not nil.right_nilpotent:
            issues.append("expected right-nilpotent")
        if expected["has_idempotent"] and witnesses:
            best = min(
                max(abs(z - (1.0 if i == 0 else 0.0)) for i, z in enumerate(w.element.coords))
                for w in witnesses
            )
            if best > 1e-8:
                issues.append(f"no witness matches e_1 (closest deviation {best})")
        if issues:
            candidates.append(
                {"case": {"kind": kind, "n": n, "s": s}, "evidence": issues}
            )
        else:
            passes += 1
    return CampaignReport(
        "classification",
        len(cases),
        passes,
        0,
        tuple(candidates),
        cfg.rng_seed,
        cfg,
        {"n_max": n_max, "cases": len(cases)},
    )


def max_nilpotency_index_search(s: int, samples: int, seed: int = 0) -> dict:
    """Report-only search: does any sampled right-nilpotent algebra of
    dimension s beat the chain's right-nilpotency index s+1?"""
    from .evolution_core import chain_algebra

    chain_index = nilpotency(chain_algebra(s)).index
    best = 0
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        alg = random_algebra(s, "sparse(0.55)", rng)
        verdict = nilpotency(alg)
        if verdict.right_nilpotent:
            best = max(best, verdict.index)
    return {"s": s, "chain_index": chain_index, "max_sampled_index": best}
