"""Command-line interface: solve, check, census, mc, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from .census import DEFAULT_BUDGET, enumerate_census
from .jsonio import (
    canonical_json,
    census_report_to_dict,
    diagnosis_to_dict,
    instance_from_dict,
    instance_to_dict,
    mc_report_to_dict,
    solve_result,
)
from .model import BwmError, as_fraction
from .montecarlo import McConfig, estimate_violation_probability
from .ordinal import diagnose


def parse_scale(text: str) -> List[int]:
    """Parse "2..9" ranges or "2,3,5" lists of integer judgments."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(part) for part in text.split(",") if part.strip()]


def _read_instance(path: str):
    if path == "-":
        data = json.load(sys.stdin)
    else:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    return instance_from_dict(data)


def cmd_solve(args) -> int:
    inst = _read_instance(args.input)
    p = as_fraction(args.p) if args.p else None
    result = solve_result(inst, p=p)
    print(canonical_json(result))
    return 2 if result["needs_reexamination"] else 0


def cmd_check(args) -> int:
    inst = _read_instance(args.input)
    p = as_fraction(args.p) if args.p else None
    print(canonical_json(diagnosis_to_dict(diagnose(inst, p=p))))
    return 0


def cmd_census(args) -> int:
    report = enumerate_census(
        n=args.n,
        scale=parse_scale(args.scale),
        fixed_p=as_fraction(args.fixed_p),
        jobs=args.jobs,
        budget=args.budget,
        engine=args.engine,
    )
    if args.witnesses:
        with open(args.witnesses, "w", encoding="utf-8") as fh:
            for w in report.witnesses:
                fh.write(canonical_json(instance_to_dict(w)) + "\n")
    if args.tie_witnesses:
        with open(args.tie_witnesses, "w", encoding="utf-8") as fh:
            for w in report.tie_witnesses:
                fh.write(canonical_json(instance_to_dict(w)) + "\n")
    print(canonical_json(census_report_to_dict(report)))
    return 0


def cmd_mc(args) -> int:
    config = McConfig(n=args.n, scale=tuple(parse_scale(args.scale)), k=args.k, seed=args.seed)
    report = estimate_violation_probability(config)
    payload = mc_report_to_dict(report)
    if args.json:
        print(canonical_json(payload))
    else:
        print(f"samples: {report.config.k} (seed {report.config.seed}, {report.rng_algorithm})")
        print(f"strict violations: {report.violating_count} "
              f"(estimate {report.estimated_probability:.3g})")
        if report.exact_event_probability is not None:
            print(f"exact violation probability: {payload['exact_event_probability']} "
                  f"= {float(report.exact_event_probability):.6g}")
        print(f"no-detection probability q: {report.q_no_detection:.6g}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(Path(args.data))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bwmllsm",
        description="Logarithmic least squares priorities for best-worst method matrices, "
                    "with ordinal-violation detection and guarantees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve an instance and report violations/conditions")
    p_solve.add_argument("input", help="instance JSON file, or - for stdin")
    p_solve.add_argument("--p", default=None, help="explicit uniform lower bound (default: derived minimum)")
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="condition diagnosis only (no weights printed)")
    p_check.add_argument("input", help="instance JSON file, or - for stdin")
    p_check.add_argument("--p", default=None)
    p_check.set_defaults(func=cmd_check)

    p_census = sub.add_parser("census", help="exhaustively enumerate a scale census")
    p_census.add_argument("--n", type=int, required=True)
    p_census.add_argument("--scale", default="2..9")
    p_census.add_argument("--fixed-p", dest="fixed_p", default="2")
    p_census.add_argument("--jobs", type=int, default=None)
    p_census.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p_census.add_argument("--engine", choices=["auto", "vector", "exact"], default="auto")
    p_census.add_argument("--witnesses", default=None, help="write violating instances as JSONL")
    p_census.add_argument("--tie-witnesses", dest="tie_witnesses", default=None,
                          help="write exact-tie instances as JSONL")
    p_census.set_defaults(func=cmd_census)

    p_mc = sub.add_parser("mc", help="Monte Carlo violation-probability estimate")
    p_mc.add_argument("--n", type=int, default=6)
    p_mc.add_argument("--scale", default="2..9")
    p_mc.add_argument("--k", type=int, default=10_000)
    p_mc.add_argument("--seed", type=int, default=42)
    p_mc.add_argument("--json", action="store_true", help="print the full JSON report")
    p_mc.set_defaults(func=cmd_mc)

    p_serve = sub.add_parser("serve", help="run the HTTP session API")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--data", required=True, help="directory for session files")
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (BwmError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
