"""Command-line front end.

Subcommands: ``matrix``, ``schedule``, ``deviation``, ``orderfind``, ``plan``.
Relative ``--output`` paths resolve under ``$AQFT_OUTPUT_DIR`` when it is set.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from pathlib import Path

from . import reference
from .circuit import build_aqft_plan, gate_counts, parse_plan
from .numerics import QubitBudgetError
from .orderfinding import (
    OrderFindingConfig,
    extract_period,
    factor_from_period,
    run_shots,
)
from .scheduler import schedule_depth, schedule_plan

OUTPUT_DIR_ENV = "AQFT_OUTPUT_DIR"


class UsageError(Exception):
    pass


def _emit(text: str, output: str | None) -> None:
    if output is None or output == "-":
        sys.stdout.write(text)
        return
    path = Path(output)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _m_or_l(args) -> int:
    return args.l if args.m is None else args.m


def cmd_matrix(args) -> str:
    if args.kind == "fft":
        mat, m = reference.dft_matrix(args.l), args.l
    elif args.kind == "ht":
        mat, m = reference.hadamard_matrix(args.l), 1
    else:
        m = _m_or_l(args)
        mat = reference.afft_matrix(args.l, m)
    if args.format == "json":
        return reference.matrix_to_json(mat, args.l, m, args.kind)
    if args.format == "csv":
        return reference.matrix_to_csv(mat)
    return reference.matrix_to_text(mat, args.l)


def cmd_schedule(args) -> str:
    plan = build_aqft_plan(args.l, _m_or_l(args))
    sched = schedule_plan(plan)
    depth = schedule_depth(sched)
    if args.format == "json":
        return json.dumps({
            "l": plan.width_l,
            "m": plan.approx_m,
            "layers": [[g.label for g in layer] for layer in sched.ordered_layers()],
            "time_steps": list(sched.steps),
            "empty_steps": list(sched.empty_steps),
            "depth": depth,
        }, indent=2) + "\n"
    if args.format == "csv":
        rows = ["layer,time_step,gates"]
        for i, (k, layer) in enumerate(zip(sched.steps, sched.ordered_layers())):
            rows.append(f"{i},{k},{' '.join(g.label for g in layer)}")
        return "\n".join(rows) + "\n"
    return (
        f"{sched.to_text()}\n"
        f"depth {depth} (rule span {2 * plan.width_l - 1} steps, "
        f"{len(sched.empty_steps)} empty)\n"
    )


def cmd_deviation(args) -> str:
    m = _m_or_l(args)
    rep = reference.deviation_report(args.l, m)
    if args.format == "json":
        return json.dumps(rep.as_dict(), indent=2) + "\n"
    observed = (
        "n/a (width guard)" if rep.max_phase_deviation is None
        else f"{rep.max_phase_deviation:.17g}"
    )
    if args.format == "csv":
        return f"l,m,analytic_bound,observed\n{args.l},{m},{rep.analytic_bound:.17g},{observed}\n"
    lines = [
        f"l {args.l}",
        f"m {m}",
        f"analytic_bound {rep.analytic_bound:.6e}",
        f"observed {observed}",
    ]
    if rep.bound_satisfied is not None:
        lines.append(f"bound_satisfied {str(rep.bound_satisfied).lower()}")
    return "\n".join(lines) + "\n"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def cmd_orderfind(args) -> str:
    n, x = args.n, args.x
    if n % 2 == 0:
        raise UsageError(f"n={n} is even; the demo targets odd composites")
    if _is_prime(n):
        raise UsageError(f"n={n} is prime; the demo targets odd composites")
    if args.shots < 1:
        raise UsageError("shots must be positive")
    config = OrderFindingConfig(n, x, args.l, args.m, args.seed)
    records = run_shots(config, args.shots)
    estimates = [r.frequency_estimate for r in records]
    hist = sorted(Counter(estimates).items())
    period = extract_period(estimates, config.q, n, x)
    factors = factor_from_period(n, x, period) if period is not None else None

    if args.format == "csv":
        rows = ["outcome,count,frequency"]
        rows.extend(f"{c},{k},{k / args.shots:.17g}" for c, k in hist)
        return "\n".join(rows) + "\n"
    if args.format == "json":
        return json.dumps({
            "config": {"n": n, "x": x, "l": config.width_l, "m": config.approx_m,
                       "seed": config.seed, "shots": args.shots},
            "runs": [
                {"measured_bits": r.as_dict()["measured_bits"],
                 "frequency_estimate": r.frequency_estimate}
                for r in records
            ],
            "histogram": [{"outcome": c, "count": k} for c, k in hist],
            "period": period,
            "factors": list(factors) if factors else None,
        }, indent=2) + "\n"
    lines = [
        f"n {n} x {x} l {config.width_l} m {config.approx_m} "
        f"shots {args.shots} seed {config.seed}",
        "outcome count frequency",
    ]
    lines.extend(f"{c} {k} {k / args.shots:.6f}" for c, k in hist)
    lines.append(f"period {period if period is not None else 'none'}")
    lines.append("factors " + (f"{factors[0]} x {factors[1]}" if factors else "none"))
    return "\n".join(lines) + "\n"


def cmd_plan(args) -> str:
    if args.load:
        plan = parse_plan(Path(args.load).read_text())
    elif args.l is None:
        raise UsageError("plan needs --l or --load")
    else:
        plan = build_aqft_plan(args.l, _m_or_l(args))
    if args.format == "json":
        h, q = gate_counts(plan)
        return json.dumps({
            "l": plan.width_l, "m": plan.approx_m,
            "hadamard": h, "controlled_phase": q,
            "gates": [g.to_line() for g in plan.gates],
        }, indent=2) + "\n"
    return plan.to_text()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aqft",
        description="Approximate quantum Fourier transform toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text"):
        p.add_argument("--format", choices=("json", "csv", "text"), default=default_format)
        p.add_argument("--output", "-o", default=None, help="file path (default stdout)")

    p = sub.add_parser("matrix", help="dense reference transform matrix")
    p.add_argument("--kind", choices=("fft", "ht", "afft"), required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("schedule", help="parallel layers of a transform plan")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_schedule)

    p = sub.add_parser("deviation", help="phase error of the approximate transform")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_deviation)

    p = sub.add_parser("orderfind", help="semiclassical order-finding shots")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--l", type=int, default=None, help="default: smallest L with 2**L >= 5 n**2")
    p.add_argument("--m", type=int, default=None, help="default: L")
    p.add_argument("--shots", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(func=cmd_orderfind)

    p = sub.add_parser("plan", help="export or load a gate plan")
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--load", default=None, help="plan file to parse and re-emit")
    common(p)
    p.set_defaults(func=cmd_plan)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
        _emit(text, args.output)
    except (UsageError, ValueError, QubitBudgetError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"aqft {args.command}: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
