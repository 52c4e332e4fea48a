"""Command-line front end.

Exit codes: 0 success (including logged conjecture candidates), 2 on
usage or input-parse errors, 3 on internal-consistency violations,
4 when a campaign's solver shortfall rate exceeds --max-shortfall.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    BadParameters,
    EvoAlgError,
    InternalConsistencyError,
    NotRegular,
    SchemaError,
    SingularMatrix,
)
from .evolution_core import algebra_from_json
from .harness import (
    CampaignReport,
    classification_sweep,
    conjecture_campaign,
    report_json_text,
    test_conjecture,
    verdict_to_json,
    verify_idempotent_existence,
    verify_theorem_main,
)
from .homotopy_solver import SolverConfig, outcome_from_json, outcome_to_json, solve
from .quadratic_system import KINDS, build, evaluate
from .structure_analysis import (
    analyze_algebra,
    find_idempotents,
    one_dim_subalgebras,
    witness_to_json,
)


def _fmt_complex(re: float, im: float) -> str:
    # display-only cleanup; the JSON output keeps the raw values
    if abs(re) < 1e-9:
        re = 0.0
    if abs(im) < 1e-9:
        im = 0.0
    if im == 0.0:
        return f"{re:.6g}"
    sign = "+" if im >= 0 else "-"
    return f"{re:.6g}{sign}{abs(im):.6g}i"


def _fmt_point(pairs) -> str:
    return "(" + ", ".join(_fmt_complex(re, im) for re, im in pairs) + ")"


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--tol-final", type=float, default=1e-10)
    parser.add_argument("--tol-zero", type=float, default=1e-8)
    parser.add_argument("--tol-dedup", type=float, default=1e-6)
    parser.add_argument("--tol-track", type=float, default=1e-8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--parallel", action="store_true")
    parser.add_argument("--json", dest="as_json", action="store_true",
                        help="emit JSON instead of the text rendering")
    parser.add_argument("--output", help="write the report to this path instead of stdout")


def _config(args) -> SolverConfig:
    return SolverConfig(
        tol_track=args.tol_track,
        tol_final=args.tol_final,
        tol_dedup=args.tol_dedup,
        tol_zero=args.tol_zero,
        rng_seed=args.seed,
        parallel=args.parallel,
    )


def _load_algebra(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc})") from None
    return algebra_from_json(obj)


def _emit(text: str, args):
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _cmd_solve(args) -> int:
    alg = _load_algebra(args.input)
    outcome = solve(build(args.system, alg, backend="float"), _config(args))
    payload = outcome_to_json(outcome)
    if args.as_json:
        _emit(json.dumps(payload, sort_keys=True, indent=2), args)
    else:
        lines = [
            f"system {args.system} on n={outcome.n}: "
            f"{len(outcome.solutions)} solutions, "
            f"{outcome.diverged_paths} diverged, {outcome.failed_paths} failed "
            f"(Bezout {outcome.bezout_count})"
        ]
        for s in payload["solutions"]:
            tags = []
            if s["real"]:
                tags.append("real")
            if s["singular"]:
                tags.append("singular")
            if s["multiplicity_hint"] > 1:
                tags.append(f"x{s['multiplicity_hint']}")
            suffix = f"  [{', '.join(tags)}]" if tags else ""
            lines.append(
                f"  {_fmt_point(s['point'])}  residual {s['residual']:.2e}"
                f"  support {s['support']}{suffix}"
            )
        _emit("\n".join(lines), args)
    return 0


def _cmd_analyze(args) -> int:
    alg = _load_algebra(args.input)
    report = analyze_algebra(alg, _config(args))
    if args.as_json:
        _emit(json.dumps(report, sort_keys=True, indent=2), args)
        return 0
    lines = [
        f"n={report['n']} backend={report['backend']}",
        f"regular={str(report['regular']).lower()}",
        f"solvable={str(report['solvable']).lower()}"
        f" ({report['solvability_backend']}, series dims {report['derived_series_dims']})",
        f"right_nilpotent={str(report['right_nilpotent']).lower()}"
        f" (chain dims {report['power_chain_dims']})",
        f"idempotents={[_fmt_point(w['element']) for w in report['idempotents']]}",
        f"one_dim_subalgebras={[_fmt_point(v) for v in report['one_dim_subalgebras']]}",
    ]
    if report["obstruction"] is None:
        lines.append("obstruction=none")
    else:
        ob = report["obstruction"]
        lines.append(
            f"obstruction={_fmt_point(ob['idempotent']['element'])}"
            f" square_rank={ob['square_rank']}"
        )
    _emit("\n".join(lines), args)
    return 0


def _cmd_idempotents(args) -> int:
    alg = _load_algebra(args.input)
    witnesses = [witness_to_json(w) for w in find_idempotents(alg, _config(args))]
    if args.as_json:
        _emit(json.dumps({"idempotents": witnesses}, sort_keys=True, indent=2), args)
    else:
        if not witnesses:
            _emit("no idempotents found", args)
        else:
            _emit(
                "\n".join(
                    f"{_fmt_point(w['element'])}  residual {w['residual']:.2e}"
                    for w in witnesses
                ),
                args,
            )
    return 0


def _cmd_subalgebras(args) -> int:
    alg = _load_algebra(args.input)
    spans = one_dim_subalgebras(alg, _config(args))
    payload = [[[z.real, z.imag] for z in v.coords] for v in spans]
    if args.as_json:
        _emit(json.dumps({"one_dim_subalgebras": payload}, sort_keys=True, indent=2), args)
    else:
        _emit("\n".join(f"span {_fmt_point(v)}" for v in payload) or "none found", args)
    return 0


def _cmd_conjecture(args) -> int:
    alg = _load_algebra(args.input)
    verdict = verdict_to_json(test_conjecture(alg, _config(args)))
    if args.as_json:
        _emit(json.dumps(verdict, sort_keys=True, indent=2), args)
    else:
        _emit(
            " ".join(f"{key}={str(value).lower()}" for key, value in verdict.items()),
            args,
        )
    return 0


def _cmd_verify(args) -> int:
    cfg = _config(args)
    if args.target == "theorem21":
        report = verify_theorem_main(args.n, args.trials, cfg)
    elif args.target == "theorem35":
        report = verify_idempotent_existence(args.n, args.trials, cfg)
    elif args.target == "classification":
        report = classification_sweep(args.n_max, cfg)
    elif args.target == "conjecture":
        report = conjecture_campaign(args.n_max, args.trials, cfg)
    else:  # pragma: no cover - argparse restricts choices
        raise BadParameters(f"unknown verify target {args.target!r}")
    _emit(report_json_text(report), args)
    if report.shortfall_rate > args.max_shortfall:
        print(
            f"solver shortfall rate {report.shortfall_rate:.3f}"
            f" exceeds --max-shortfall {args.max_shortfall}",
            file=sys.stderr,
        )
        return 4
    return 0


def _cmd_check(args) -> int:
    alg = _load_algebra(args.input)
    with open(args.solve_output, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{args.solve_output}: invalid JSON ({exc})") from None
    outcome = outcome_from_json(obj)
    sys_ = build(outcome.kind, alg, backend="float")
    worst = 0.0
    for s in outcome.solutions:
        residual = max(abs(v) for v in evaluate(sys_, s.point))
        worst = max(worst, residual)
    if worst > args.tol_final:
        raise InternalConsistencyError(
            f"recomputed residual {worst:.3e} exceeds tol_final {args.tol_final:.1e}"
        )
    print(
        f"check ok: {len(outcome.solutions)} solutions re-validated,"
        f" worst residual {worst:.3e}"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoalg",
        description="Structural invariants of complex evolution algebras "
        "via homotopy continuation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one of the three quadratic systems")
    p.add_argument("--system", choices=KINDS, default="general")
    p.add_argument("--input", required=True, help="algebra JSON file")
    _add_common(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("analyze", help="full structural report for one algebra")
    p.add_argument("--input", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("idempotents", help="certified non-zero idempotents")
    p.add_argument("--input", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_idempotents)

    p = sub.add_parser("subalgebras", help="one-dimensional subalgebras (regular only)")
    p.add_argument("--input", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_subalgebras)

    p = sub.add_parser("conjecture", help="solvability conjecture verdict for one algebra")
    p.add_argument("--input", required=True)
    _add_common(p)
    p.set_defaults(func=_cmd_conjecture)

    p = sub.add_parser("verify", help="randomized verification campaigns")
    p.add_argument("target", choices=("theorem21", "theorem35", "classification", "conjecture"))
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--n-max", type=int, default=5)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--max-shortfall", type=float, default=0.05)
    _add_common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("check", help="re-validate a solve report from its JSON alone")
    p.add_argument("--input", required=True)
    p.add_argument("--solve-output", required=True)
    p.add_argument("--tol-final", type=float, default=1e-10)
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return 3
    except (SchemaError, NotRegular, SingularMatrix, BadParameters, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except EvoAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
