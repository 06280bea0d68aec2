"""Command-line interface: ``riskopt eval | solve | verify | plot | menu``.

Exit codes: 0 success, 1 failed verification (or empty menu), 2 parse
error, 3 data invariant violation, 4 solver refusal.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import dist as D
from .contracts import parse_contract, parse_family
from .errors import DataInvariantError, EmptyMenu, ParseError, SolverRefusal, TooLarge
from .measures import parse_measure
from .pareto import ParetoProblem, menu, premium_from_dict, solve
from .svg import render_contracts

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_DATA, EXIT_REFUSED = 0, 1, 2, 3, 4


def default_seed() -> int:
    raw = os.environ.get("RISKOPT_SEED", "0")
    try:
        return int(raw)
    except ValueError as exc:
        raise ParseError(f"RISKOPT_SEED must be an integer, got {raw!r}") from exc


def _dump(obj, out: str | None = None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


# -- problem files --------------------------------------------------------


def load_problem(path: str | Path) -> tuple[ParetoProblem, dict]:
    """Read a problem JSON; returns the problem and the solver settings."""
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("problem file must hold a JSON object")
    base = path.parent
    try:
        src = data["distribution"]
        rho_spec, psi_spec = data["rho"], data["psi"]
    except KeyError as exc:
        raise ParseError(f"problem file misses key {exc}") from exc
    if isinstance(src, str):
        p = Path(src)
        X = D.load_distribution(p if p.is_absolute() else base / p)
    elif isinstance(src, dict):
        X = D.distribution_from_dict(src)
    elif isinstance(src, list):
        X = D.distribution_from_dict({"atoms": src})
    else:
        raise ParseError("distribution must be a path, an atoms object or an atom list")
    try:
        premium = premium_from_dict(data.get("premium"))
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad premium: {exc}") from exc
    prob = ParetoProblem(
        X,
        parse_measure(rho_spec, base),
        parse_measure(psi_spec, base),
        parse_family(str(data.get("family", "I0"))),
        premium,
    )
    settings = data.get("solver", {}) or {}
    if not isinstance(settings, dict):
        raise ParseError("solver settings must be an object")
    return prob, settings


# -- subcommands ----------------------------------------------------------


def cmd_eval(args) -> int:
    X = D.load_distribution(args.dist)
    m = parse_measure(args.measure, Path(args.dist).parent)
    value = m.evaluate(X)
    if args.json:
        _dump({"measure": m.syntax, "value": value, "distribution_digest": D.distribution_digest(X)})
    else:
        print(f"{value:.10g}")
    return EXIT_OK


def cmd_solve(args) -> int:
    prob, settings = load_problem(args.problem)
    allowed = {"iterations", "step", "restarts", "seed", "patience", "oracle_steps"}
    unknown = set(settings) - allowed
    if unknown:
        raise ParseError(f"unknown solver settings {sorted(unknown)}")
    kwargs = {k: settings[k] for k in allowed - {"oracle_steps"} if k in settings}
    kwargs.setdefault("seed", args.seed if args.seed is not None else default_seed())
    if args.oracle:
        kwargs["oracle_steps"] = int(settings.get("oracle_steps", args.oracle_steps))
    if args.oracle and prob.X.size > 5:
        print("note: oracle skipped (more than five support points)", file=sys.stderr)
    result = solve(prob, **kwargs)
    payload = result.to_dict()
    payload["problem"] = {
        "distribution": D.distribution_to_dict(prob.X),
        "rho": prob.rho.syntax,
        "psi": prob.psi.syntax,
        "family": str(prob.family),
        "premium": prob.premium.to_dict(),
    }
    payload["contract"] = result.to_contract().to_dict()
    _dump(payload, args.out)
    if args.plot:
        d = prob.family.d if prob.family.tag == "I1d" else 0.0
        svg = render_contracts([result.to_contract()], prob.X.values[-1] or 1.0, d, ["minimizer"])
        Path(args.plot).write_text(svg, encoding="utf-8")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite

    if args.suite not in SUITES:
        raise ParseError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    seed = args.seed if args.seed is not None else default_seed()
    report = run_suite(args.suite, args.trials, seed)
    _dump(report.to_dict(), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_plot(args) -> int:
    contracts = [parse_contract(s) for s in args.contracts]
    svg = render_contracts(contracts, args.xmax, args.d, args.contracts)
    if args.output:
        Path(args.output).write_text(svg, encoding="utf-8")
    else:
        sys.stdout.write(svg)
    return EXIT_OK


def cmd_menu(args) -> int:
    from .pareto import contract_grid

    Xs = [D.load_distribution(p) for p in args.dists]
    psi = parse_measure(args.psi, Path(args.dists[0]).parent)
    family = parse_family(args.family)
    if args.knots:
        try:
            knots = [float(k) for k in args.knots.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad knot list {args.knots!r}") from exc
    else:
        knots = sorted({v for X in Xs for v in X.values})
    grid = contract_grid(family, knots, args.y_step)
    try:
        chosen = menu(Xs, psi, family, grid)
    except EmptyMenu as exc:
        print(f"empty menu: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _dump({"psi": psi.syntax, "family": str(family), "grid_size": len(grid), "menu_size": len(chosen),
           "menu": [f.to_dict() for f in chosen]}, args.out)
    return EXIT_OK


# -- entry point ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riskopt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a risk measure on a distribution file")
    p.add_argument("measure", help="mean | var@p | es@p | les@p | mix@p:lam | dist@file.json")
    p.add_argument("dist", help="CSV (value,probability) or JSON ({\"atoms\": ...}) file")
    p.add_argument("--json", action="store_true", help="emit a JSON record")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("solve", help="minimize rho(X - f(X)) + psi(f(X)) over a contract family")
    p.add_argument("problem", help="problem JSON file")
    p.add_argument("--oracle", action="store_true", help="also run the grid oracle (n <= 5)")
    p.add_argument("--oracle-steps", type=int, default=11)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--plot", metavar="SVG", help="draw the minimizer")
    p.add_argument("--out", help="write the result JSON here instead of stdout")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite")
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="plot ceded loss functions as SVG")
    p.add_argument("contracts", nargs="+", help="zero | id | ded:d*alpha | dedlim:d^u | file.json")
    p.add_argument("--d", type=float, default=None, help="draw (x - d)_+ dashed")
    p.add_argument("--xmax", type=float, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("menu", help="contracts efficient for every listed loss under (psi, psi)")
    p.add_argument("dists", nargs="+")
    p.add_argument("--psi", required=True)
    p.add_argument("--family", default="I1")
    p.add_argument("--knots", help="comma-separated knot abscissae (default: union of supports)")
    p.add_argument("--y-step", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_menu)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "xmax", 0) is None:
        args.xmax = _default_xmax(args)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DataInvariantError as exc:
        print(f"invalid data: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (SolverRefusal, TooLarge) as exc:
        print(f"solver refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED


def _default_xmax(args) -> float:
    try:
        contracts = [parse_contract(s) for s in args.contracts]
    except ParseError:
        return 1.0
    last = max(f.knots[-1][0] for f in contracts)
    return max(last + 1.0, (args.d or 0.0) + 1.0)


if __name__ == "__main__":
    raise SystemExit(main())
