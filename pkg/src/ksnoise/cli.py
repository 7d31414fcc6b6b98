"""Command-line interface: ``ksnoise {info,eval,sweep,threshold,bound,verify}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .channels import Depolarizing, InvalidStateError
from .fileformat import FormatError, load_scenario, load_state
from .linalg import CMat, DimensionError
from .measure import NoisePlacement
from .ncmodel import classical_bound
from .noisescan import NonMonotoneError, find_threshold, sweep
from .scenarios import (
    Picture,
    Scenario,
    basis_state,
    evaluate_inequality,
    kcbs_optimal_state,
    kcbs_scenario,
    maximally_mixed,
    peres_mermin_scenario,
    validate_scenario,
)
from .verify import run_all

BUILTIN = {"kcbs": kcbs_scenario, "pm": peres_mermin_scenario}
PLACEMENTS = {p.value: p for p in NoisePlacement}


class UsageError(Exception):
    pass


def human(x: float) -> str:
    return f"{x:.8f}"


def machine(x: float) -> str:
    return f"{x:.12f}"


def _bool(b: bool) -> str:
    return "true" if b else "false"


def resolve_scenario(ident: str, validate: bool = True) -> Scenario:
    if ident in BUILTIN:
        return BUILTIN[ident]()
    return load_scenario(ident, validate)


def resolve_state(spec: str, d: int) -> CMat:
    if spec == "maxmix":
        return maximally_mixed(d)
    if spec == "kcbs-optimal":
        if d != 3:
            raise DimensionError(f"kcbs-optimal is a qutrit state; scenario has dimension {d}")
        return kcbs_optimal_state()
    if spec.startswith("basis:"):
        try:
            k = int(spec.split(":", 1)[1])
        except ValueError:
            raise UsageError(f"bad basis index in {spec!r}") from None
        return basis_state(d, k)
    if spec.startswith("file:"):
        rho = load_state(spec.split(":", 1)[1])
        if rho.shape[0] != d:
            raise DimensionError(f"state has dimension {rho.shape[0]}, scenario has {d}")
        return rho
    raise UsageError(f"unknown state spec {spec!r} (use maxmix, kcbs-optimal, basis:k or file:path)")


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _csv(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _ineq_text(s: Scenario) -> str:
    terms = " ".join(f"{g:+g}<{s.context_label(k)}>" for k, g in enumerate(s.inequality.gamma))
    return f"{terms} {s.inequality.direction} {s.inequality.bound:g}"


def cmd_info(args) -> int:
    s = resolve_scenario(args.scenario, validate=False)
    diag = validate_scenario(s)
    if args.format == "json":
        print(_dumps({
            "name": s.name,
            "dimension": s.dimension,
            "measurements": [o.label for o in s.measurements],
            "contexts": [list(c) for c in s.contexts],
            "inequality": {"gamma": list(s.inequality.gamma), "bound": s.inequality.bound,
                           "direction": s.inequality.direction},
            "valid": diag.ok,
            "failure": diag.failure,
        }))
    else:
        print(f"scenario: {s.name}")
        print(f"dimension: {s.dimension}")
        print(f"measurements ({len(s.measurements)}): {', '.join(o.label for o in s.measurements)}")
        print(f"contexts ({len(s.contexts)}):")
        for k in range(len(s.contexts)):
            print(f"  {k}: {s.context_label(k)}")
        print(f"inequality: {_ineq_text(s)}")
        print(f"bound: {s.inequality.bound:g}")
        for c in diag.checks:
            print(f"  ok: {c}")
        print("valid: true" if diag.ok else f"valid: false ({diag.failure})")
    return 0 if diag.ok else 2


def _noise(args, s: Scenario):
    placement = PLACEMENTS[args.placement]
    if not 0.0 <= args.p <= 1.0:
        raise UsageError(f"--p must lie in [0, 1], got {args.p}")
    return (Depolarizing(args.p, s.dimension) if placement is not NoisePlacement.NONE else None), placement


def cmd_eval(args) -> int:
    s = resolve_scenario(args.scenario)
    rho = resolve_state(args.state, s.dimension)
    noise, placement = _noise(args, s)
    rep = evaluate_inequality(s, rho, noise, placement, Picture(args.picture), args.state)
    if args.format == "json":
        print(_dumps(rep.to_dict()))
    elif args.format == "csv":
        rows = [("context", "gamma", "correlator")]
        rows += [(s.context_label(k), machine(g), machine(c))
                 for k, (g, c) in enumerate(zip(s.inequality.gamma, rep.correlators))]
        rows.append(("total", "", machine(rep.value)))
        print(_csv(rows))
    else:
        print(f"scenario: {rep.scenario}")
        print(f"state: {rep.state}")
        print(f"noise: placement={placement.value}" + (f" p={human(rep.p)}" if rep.p is not None else ""))
        print(f"picture: {rep.picture}")
        for k, (g, c) in enumerate(zip(s.inequality.gamma, rep.correlators)):
            print(f"  {g:+g} <{s.context_label(k)}> = {human(c)}")
        print(f"value: {human(rep.value)}")
        print(f"bound: {rep.direction} {human(rep.bound)}")
        print(f"violated: {_bool(rep.violated)}")
    return 0


def cmd_sweep(args) -> int:
    s = resolve_scenario(args.scenario)
    rho = resolve_state(args.state, s.dimension)
    series = sweep(s, rho, PLACEMENTS[args.placement], args.p_min, args.p_max, args.steps, args.state)
    if args.format == "json":
        print(_dumps(series.to_dict()))
    elif args.format == "csv":
        rows = [("p", "value", "bound", "violated")]
        rows += [(machine(q.p), machine(q.value), machine(series.bound), _bool(q.violated)) for q in series.points]
        print(_csv(rows))
    else:
        print(f"scenario: {series.scenario}  state: {series.state}  placement: {series.placement.value}")
        for q in series.points:
            print(f"  p={human(q.p)}  value={human(q.value)}  violated={_bool(q.violated)}")
        if series.analytic_threshold is not None:
            print(f"analytic threshold: {human(series.analytic_threshold)}")
    return 0


def cmd_threshold(args) -> int:
    s = resolve_scenario(args.scenario)
    rho = resolve_state(args.state, s.dimension)
    if args.tol <= 0:
        raise UsageError(f"--tol must be positive, got {args.tol}")
    t = find_threshold(s, rho, PLACEMENTS[args.placement], args.tol)
    if args.format == "json":
        print(_dumps({"scenario": s.name, "state": args.state, "placement": args.placement,
                      "tol": args.tol, "threshold": t}))
    elif args.format == "csv":
        print(_csv([("scenario", "placement", "threshold"),
                    (s.name, args.placement, t if isinstance(t, str) else machine(t))]))
    else:
        print(t if isinstance(t, str) else human(t))
    return 0


def cmd_bound(args) -> int:
    s = resolve_scenario(args.scenario)
    b = classical_bound(s)
    if args.format == "json":
        print(_dumps({"scenario": s.name, "min": b.min, "max": b.max,
                      "argmin": list(b.argmin.values), "argmax": list(b.argmax.values),
                      "assignments": b.n_assignments, "bound": s.inequality.bound,
                      "direction": s.inequality.direction}))
    else:
        fmt = lambda a: " ".join(f"{o.label}={v:+d}" for o, v in zip(s.measurements, a.values))  # noqa: E731
        print(f"scenario: {s.name} ({b.n_assignments} deterministic assignments)")
        print(f"min: {b.min:g}  witness: {fmt(b.argmin)}")
        print(f"max: {b.max:g}  witness: {fmt(b.argmax)}")
        print(f"stated bound: {s.inequality.direction} {s.inequality.bound:g}")
    return 0


def cmd_verify(args) -> int:
    results = run_all(args.seed)
    if args.format == "json":
        print(_dumps([{"name": r.name, "residual": r.residual, "tol": r.tol, "passed": r.passed}
                      for r in results]))
    else:
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            extra = f"  ({r.detail})" if r.detail else ""
            print(f"{status}  {r.name:<24} residual={r.residual:.3e}  tol={r.tol:.1e}{extra}")
        print(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    return 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ksnoise", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p, choices=("human", "json", "csv")):
        p.add_argument("--format", choices=choices, default="human")

    def scen(p):
        p.add_argument("scenario", help="kcbs, pm, or a scenario JSON file")

    def state(p, placement_default="none"):
        p.add_argument("--state", default="maxmix", help="maxmix, kcbs-optimal, basis:k, file:path")
        p.add_argument("--placement", choices=list(PLACEMENTS), default=placement_default)

    p = sub.add_parser("info", help="describe and validate a scenario")
    scen(p)
    fmt(p, ("human", "json"))
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("eval", help="evaluate the inequality for a state and noise")
    scen(p)
    state(p)
    p.add_argument("--p", type=float, default=1.0, help="depolarizing survival parameter")
    p.add_argument("--picture", choices=[x.value for x in Picture], default="both")
    fmt(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="evaluate across a grid of p")
    scen(p)
    state(p, "before-first")
    p.add_argument("--p-min", type=float, default=0.0)
    p.add_argument("--p-max", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=11)
    fmt(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="locate the classicalization point by bisection")
    scen(p)
    state(p, "before-first")
    p.add_argument("--tol", type=float, default=1e-8)
    fmt(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("bound", help="classical bound by enumerating deterministic assignments")
    scen(p)
    fmt(p, ("human", "json"))
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--seed", type=int, default=0)
    fmt(p, ("human", "json"))
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
    except (FileNotFoundError, FormatError, DimensionError, InvalidStateError,
            NonMonotoneError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
