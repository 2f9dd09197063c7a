"""Command-line entry point.

Exit codes: 0 affirmative verdict or success, 1 negative verdict, 2 invalid
input, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from . import conditions, graph, hurwitz, sample, smoothing, strata, twisted
from .errors import CapacityError, ConditionsFailedError, InputError, RelSmoothError


@dataclass
class CommandResult:
    code: int
    payload: dict
    text: str

    def emit(self, as_json: bool, out=None) -> int:
        out = out or sys.stdout
        if as_json:
            out.write(json.dumps(self.payload, indent=2, sort_keys=True) + "\n")
        else:
            out.write(self.text if self.text.endswith("\n") else self.text + "\n")
        return self.code


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> graph.DualMapGraph:
    return graph.from_json(_read(path))


def _load_gamma(spec: str | None, g: graph.DualMapGraph | None = None) -> conditions.TangencyData:
    if spec is None:
        if g is None:
            raise InputError("tangency data required")
        return conditions.TangencyData.from_graph(g)
    if spec == "-" or os.path.exists(spec):
        return conditions.TangencyData.from_dict(graph.parse_json(_read(spec)))
    return conditions.TangencyData.parse(spec)


def _pairs(items, what: str) -> dict[int, int]:
    out = {}
    for item in items or ():
        try:
            k, v = item.split(":")
            out[int(k)] = int(v)
        except ValueError:
            raise InputError(f"{what} must look like EDGE:INT, got {item!r}") from None
    return out


def _status(b: bool) -> str:
    return "pass" if b else "FAIL"


# -- subcommands -------------------------------------------------------------


def cmd_validate(args) -> CommandResult:
    g = _load_graph(args.graph)
    report = graph.validate(g)
    payload = report.to_dict()
    if report.ok:
        payload["canonical_key"] = graph.key_digest(graph.canonical_form(g))
        text = f"valid (key {payload['canonical_key']})"
    else:
        text = "invalid:\n" + "\n".join(f"  {i}" for i in report.issues)
    return CommandResult(0 if report.ok else 1, payload, text)


def cmd_check(args) -> CommandResult:
    g = _load_graph(args.graph)
    gamma = _load_gamma(args.gamma, g)
    report = conditions.check_relative(g, gamma)
    payload = report.to_dict()
    payload["is_K"] = report.ok
    payload["is_N"] = conditions.is_N_Gamma(g, gamma)
    payload["is_M"] = conditions.is_M_Gamma(g, gamma)
    lines = [f"{'point':<10}{'(1)':<6}{'(2)':<6}{'(3)':<6}"]
    for p in report.points:
        lines.append(f"{p.point:<10}{_status(p.condition1):<6}{_status(p.condition2):<6}{_status(p.condition3):<6}")
        for w in p.witnesses:
            sums = f" {w.lhs} vs {w.rhs}" if w.lhs is not None else ""
            lines.append(f"    condition ({w.condition}) {w.kind} {list(w.ids)}{sums} {w.detail}".rstrip())
    for w in report.warnings:
        lines.append(f"warning: {w}")
    lines.append(f"K: {payload['is_K']}  N: {payload['is_N']}  M: {payload['is_M']}")
    return CommandResult(0 if report.ok else 1, payload, "\n".join(lines))


def cmd_reduce(args) -> CommandResult:
    g = conditions.reduce_contracted(_load_graph(args.graph))
    return CommandResult(0, graph.to_dict(g), graph.to_json(g).decode())


def cmd_recipe(args) -> CommandResult:
    g = _load_graph(args.graph)
    if args.reduce:
        g = conditions.reduce_contracted(g)
    try:
        rec = smoothing.recipe(g, args.point, multipliers=_pairs(args.multipliers, "--multiplier") or None,
                               divisibility=_pairs(args.multiples, "--multiples") or None,
                               check=not args.unchecked)
    except ConditionsFailedError as exc:
        payload = {"ok": False, "error": str(exc), "report": exc.report.to_dict() if exc.report else None}
        return CommandResult(1, payload, f"no recipe: {exc}")
    report = smoothing.verify_intersections(g, args.point, rec)
    ext = smoothing.simple_extension(rec, g)
    payload = {
        "ok": report.ok,
        "recipe": rec.to_dict(),
        "a": [c.coefficient for c in rec.contracted],
        "m": [[n.order for n in c.nodes] for c in rec.contracted],
        "intersections": report.to_dict(),
        "simple_extension": ext.to_dict(),
    }
    lines = [f"relative point {args.point}"]
    for c in rec.contracted:
        lines.append(f"  E{c.vertex}: a = {c.coefficient}, marks sum {c.mark_tangency}")
        for n in c.nodes:
            lines.append(
                f"    edge {n.edge} -> C{n.active_vertex}: e = {n.ramification}, r = {n.multiplier}, "
                f"m = {n.order} ({n.singularity}, stabilizer μ{n.stabilizer_order}, xy = t^{n.exponent})"
            )
        lines.append(f"    E^2 = {report.self_intersection[c.vertex]}, (D+aE).E = {report.pullback_on_contracted[c.vertex]}")
    if not rec.contracted:
        lines.append("  no contracted components over this point")
    lines.append(f"identities hold: {report.ok}")
    return CommandResult(0 if report.ok else 1, payload, "\n".join(lines))


def _profile(item: str) -> tuple[str, tuple[int, ...]]:
    try:
        point, lam = item.rsplit(":", 1)
        parts = tuple(int(x) for x in lam.strip("()[] ").split(",") if x.strip())
    except ValueError:
        raise InputError(f"--profile must look like POINT:λ (e.g. inf:2,1), got {item!r}") from None
    if not parts:
        raise InputError(f"empty profile in {item!r}")
    return point, parts


def cmd_hurwitz(args) -> CommandResult:
    try:
        problem = hurwitz.RamificationProblem(args.degree, tuple(_profile(p) for p in args.profile or ()))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if problem.is_full:
        res = hurwitz.realizable(problem, d_max=args.d_max)
        payload = res.to_dict()
        payload["completions"] = 1
    else:
        completions = hurwitz.complete_profiles(problem)
        results = [hurwitz.realizable(c, d_max=args.d_max) for c in completions]
        payload = {
            "exists": any(r.exists for r in results),
            "completions": len(completions),
            "realizable_completions": [
                {"profiles": {k: list(v) for k, v in c.prescribed}, **r.to_dict()}
                for c, r in zip(completions, results) if r.exists
            ],
        }
    payload["degree"] = args.degree
    text = [f"degree {args.degree}: {'realizable' if payload['exists'] else 'not realizable'}"]
    if "count" in payload:
        text.append(f"  extra simple branch points b = {payload['rh_extra_branch_points']}")
        text.append(f"  weighted count = {payload['count']}, covers = {payload['covers']}, tuples = {payload['tuples']}")
    else:
        text.append(f"  {len(payload['realizable_completions'])} of {payload['completions']} completions realizable")
    return CommandResult(0 if payload["exists"] else 1, payload, "\n".join(text))


def _target_from(args) -> twisted.StackyTarget:
    if args.wps:
        a, b = _wps(args.wps)
        return twisted.weighted_projective(a, b)
    return twisted.PROJECTIVE_LINE


def _wps(text: str) -> tuple[int, int]:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--wps must look like A,B, got {text!r}") from None
    if a < 1 or b < 1:
        raise InputError("weights must be positive")
    return a, b


def cmd_enumerate(args) -> CommandResult:
    gamma = _load_gamma(args.gamma or "")
    opts = strata.EnumerationOptions(
        max_degree=args.max_degree,
        max_contracted_per_fiber=args.max_contracted,
        labeled_marks=args.labeled_marks,
        jobs=args.jobs,
    )
    result = strata.enumerate(gamma, _target_from(args), args.degree, opts)
    payload = {"degree": args.degree, "gamma": gamma.to_dict(), "count": len(result),
               "strata": [s.to_dict() for s in result]}
    fmt = "json" if args.json else args.format
    if fmt == "dot-bundle":
        text = "".join(f"// {graph.key_digest(s.key)} dim={s.dimension}\n{graph.to_dot(s.graph)}" for s in result)
    elif fmt == "json":
        text = json.dumps(payload, indent=2, sort_keys=True)
    else:
        text = strata.strata_table(result) + f"{len(result)} strata\n"
    return CommandResult(0, payload, text)


def cmd_elliptic(args) -> CommandResult:
    cfg = twisted.EllipticConfig.from_dict(graph.parse_json(_read(args.config)))
    g, gamma = twisted.elliptic_to_gamma(cfg)
    report = conditions.check_relative(g, gamma)
    payload = {"smoothable": report.ok, "graph": graph.to_dict(g), "gamma": gamma.to_dict(),
               "report": report.to_dict()}
    text = f"smoothable: {report.ok}\n" + "\n".join(
        f"  condition ({w.condition}) {w.kind} {list(w.ids)}" for p in report.points for w in p.witnesses
    )
    return CommandResult(0 if report.ok else 1, payload, text)


def cmd_target(args) -> CommandResult:
    a, b = _wps(args.wps)
    t = twisted.weighted_projective(a, b, tuple(args.relative))
    payload = t.to_dict()
    ra, rb, k = twisted.coprime_reduce(a, b)
    payload["coprime_reduction"] = {"a": ra, "b": rb, "k": k}
    special = ", ".join(f"{label} (order {o})" for label, o in t.special_points) or "none"
    text = (f"{t.name}: generic stabilizer order {t.generic_order}; special points: {special}; "
            f"relative: {', '.join(t.relative_points) or 'none'}; reduces to P({ra},{rb})")
    return CommandResult(0, payload, text)


def cmd_sample(args) -> CommandResult:
    seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**32)
    rng = random.Random(seed)
    points = tuple(args.point or ["inf"])
    graphs = [graph.to_dict(sample.random_graph(rng, points)) for _ in range(args.count)]
    payload = {"seed": seed, "graphs": graphs}
    text = f"# seed {seed}\n" + "\n".join(json.dumps(g, sort_keys=True) for g in graphs)
    print(f"seed {seed}", file=sys.stderr)
    return CommandResult(0, payload, text)


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="relsmooth", description="Smoothability of genus-zero relative and twisted maps")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a graph's structural invariants")
    s.add_argument("graph", help="graph JSON file or - for stdin")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("check", parents=[common], help="check the relative conditions")
    s.add_argument("graph")
    s.add_argument("gamma", nargs="?", help="tangency JSON file or inline form such as '(1,1)@inf'; default: read off the marks")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("reduce", parents=[common], help="merge contracted subtrees")
    s.add_argument("graph")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("recipe", parents=[common], help="smoothing recipe and intersection check")
    s.add_argument("graph")
    s.add_argument("--point", default="inf")
    s.add_argument("--multiples", action="append", metavar="EDGE:N", help="node order at EDGE must be divisible by N")
    s.add_argument("--multiplier", dest="multipliers", action="append", metavar="EDGE:R", help="explicit multiplier r at EDGE")
    s.add_argument("--reduce", action="store_true", help="reduce contracted subtrees first")
    s.add_argument("--unchecked", action="store_true", help="skip the relative conditions (report shows the failures)")
    s.set_defaults(func=cmd_recipe)

    s = sub.add_parser("hurwitz", parents=[common], help="realizability of a ramification problem")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--profile", action="append", metavar="POINT:λ")
    s.add_argument("--d-max", type=int, default=hurwitz.D_MAX)
    s.add_argument("--jobs", type=int, default=1, help="accepted for symmetry; the count is a single fast pass")
    s.set_defaults(func=cmd_hurwitz)

    s = sub.add_parser("enumerate", parents=[common], help="boundary strata for given tangency data")
    s.add_argument("--gamma", help="tangency JSON file or inline form")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--format", choices=("json", "table", "dot-bundle"), default="table")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--wps", help="target P(a,b) as A,B (default P(1,1))")
    s.add_argument("--labeled-marks", action="store_true")
    s.add_argument("--max-contracted", type=int, default=4)
    s.add_argument("--max-degree", type=int, default=6)
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("elliptic", parents=[common], help="smoothability of a marked elliptic fibration")
    s.add_argument("config")
    s.set_defaults(func=cmd_elliptic)

    s = sub.add_parser("target", parents=[common], help="describe a weighted projective line")
    s.add_argument("--wps", required=True)
    s.add_argument("--relative", action="append", default=None)
    s.set_defaults(func=cmd_target)

    s = sub.add_parser("sample", parents=[common], help="seeded random graphs")
    s.add_argument("--seed", type=int)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--point", action="append")
    s.set_defaults(func=cmd_sample)
    return p


def run(argv=None) -> tuple[int, CommandResult | None, str, bool]:
    """Parse and execute; returns (exit code, result, error message, json flag)."""
    args = build_parser().parse_args(argv)
    if getattr(args, "relative", "unset") is None:
        args.relative = ["inf"]
    try:
        result = args.func(args)
    except CapacityError as exc:
        return 3, None, str(exc), args.json
    except (RelSmoothError, ValueError) as exc:
        return 2, None, str(exc), args.json
    return result.code, result, "", args.json


def main(argv=None) -> int:
    try:
        code, result, error, as_json = run(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors and 0 on --help
        return exc.code if isinstance(exc.code, int) else 2
    if result is None:
        if as_json:
            print(json.dumps({"error": error, "code": code}, sort_keys=True))
        print(f"error: {error}", file=sys.stderr)
        return code
    return result.emit(as_json)


if __name__ == "__main__":
    sys.exit(main())
