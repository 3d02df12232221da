"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check ran and failed,
2 on usage, parse or bound errors.  ``--format=json`` prints one JSON
document whose ``results`` body depends only on the inputs; wall-clock
time sits in a separate ``timing`` field.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .adjoint import (build_adjoint, k1_images, match_bracket_table, osp_images,
                      verify_adjoint_consistency)
from .algebra import BRACKET, AlgebraSpec, ParseError, WeightWindow, catalog, load_spec
from .axioms import (AxiomReport, AxiomResult, check_jordan_superalgebra, check_lie_antialgebra,
                     check_lie_superalgebra, find_half_unit, half_unit_result)
from .enveloping import (BoundError, CompletionError, bg_check, build_env_antialgebra,
                         build_env_superalgebra, pbw_check)
from .kernel import DomainError, WindowError, fmt_scalar, scalar
from .representations import (check_la_module, check_la_representation, density_antialgebra_check,
                              diffop_rep, extend_representation, load_representation, v_ad,
                              zero_representation)

DEFAULT_WINDOW = "-4..4"


class UsageError(Exception):
    pass


class Report:
    """Collects check results and renders them."""

    def __init__(self, command: str, config: dict):
        self.command = command
        self.config = config
        self.results: list[dict] = []
        self.lines: list[str] = []
        self.ok = True

    def add(self, result: AxiomResult | dict, ok: bool | None = None) -> None:
        d = result.as_dict() if isinstance(result, AxiomResult) else result
        if ok is None:
            ok = d.get("status") != "fail"
        self.ok = self.ok and ok
        self.results.append(d)

    def add_report(self, report: AxiomReport, prefix: str = "") -> None:
        for r in report:
            d = r.as_dict()
            if prefix:
                d["id"] = f"{prefix}{d['id']}"
            self.add(d, r.ok)
        self.lines.append(str(report) if not prefix else
                          "\n".join(f"{prefix}{line}" for line in str(report).splitlines()))

    def say(self, line: str) -> None:
        self.lines.append(line)

    def body(self) -> dict:
        return {"command": self.command, "config": self.config, "results": self.results,
                "verdict": "pass" if self.ok else "fail"}

    def render(self, fmt: str, seconds: float) -> str:
        if fmt == "json":
            doc = self.body()
            doc["timing"] = {"seconds": round(seconds, 3)}
            return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)
        return "\n".join(self.lines + [f"verdict: {'pass' if self.ok else 'fail'}"])


# ---------------------------------------------------------------------------
# target resolution
# ---------------------------------------------------------------------------

def _window(text: str | None) -> WeightWindow | None:
    if text is None:
        return None
    try:
        return WeightWindow.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def resolve_target(target: str, window: WeightWindow | None) -> tuple[AlgebraSpec, WeightWindow | None]:
    """A catalog name or the path of an algebra-definition document."""
    path = Path(target)
    if path.suffix and path.exists():
        spec = load_spec(path.read_text(encoding="utf-8"))
        return spec, window
    if target in ("AK1", "K1") and window is None:
        window = WeightWindow.parse(DEFAULT_WINDOW)
    try:
        return catalog(target, window), window
    except DomainError as exc:
        if path.suffix:
            raise UsageError(f"no such file: {target}") from None
        raise UsageError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_verify(args, rep: Report) -> None:
    spec, window = resolve_target(args.target, _window(args.window))
    rep.config.update(window=str(window) if window else None, suite=args.suite)
    if args.suite == "antialgebra":
        rep.add_report(check_lie_antialgebra(spec, window))
    elif args.suite == "jordan":
        rep.add_report(check_jordan_superalgebra(spec, window))
    elif args.suite == "superalgebra":
        rep.add_report(check_lie_superalgebra(spec, window))
    else:
        e = find_half_unit(spec)
        if e is None:
            rep.add({"id": "half-unit", "status": "fail", "note": "no generator acts as a half-unit"}, False)
            rep.say("half-unit   fail    no generator acts as a half-unit")
        else:
            res = half_unit_result(spec, e)
            rep.add_report(AxiomReport([res]))


def _env(spec: AlgebraSpec):
    if spec.style == BRACKET:
        return build_env_superalgebra(spec)
    return build_env_antialgebra(spec)


def cmd_nf(args, rep: Report) -> None:
    spec, window = resolve_target(args.target, _window(args.window))
    rs = _env(spec)
    try:
        e = rs.element(args.word)
    except (DomainError, WindowError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    top = max((rs.degree(w) for w in e.keys()), default=0)
    degree = args.degree if args.degree is not None else top
    rs.complete(max(degree, top) + args.slack)
    out = rs.normal_form(e)
    text = rs.fmt(out)
    rep.config.update(window=str(window) if window else None, degree=degree, slack=args.slack)
    rep.add({"id": "normal-form", "status": "pass", "input": args.word, "value": text,
             "rules": len(rs.rules)})
    rep.say(text)


def cmd_pbw(args, rep: Report) -> None:
    spec, window = resolve_target(args.target, _window(args.window))
    degree = 4 if args.degree is None else args.degree
    rep.config.update(window=str(window) if window else None, degree=degree, slack=args.slack)
    res = pbw_check(spec, degree, window, slack=args.slack)
    body = {"id": "pbw", "status": "pass" if res.holds else "fail",
            "rows": [[n, fmt_scalar(w), gr, g] for n, w, gr, g in res.rows],
            "untrusted": [[n, fmt_scalar(w)] for n, w in res.untrusted],
            "rules_added": res.rules_added, "partial_ambiguities": res.partial_ambiguities}
    for n, (gr, g) in sorted(res.totals().items()):
        rep.say(f"degree {n}: dim Gr = {gr}, dim G = {g}")
    if res.holds:
        rep.say("PBW: HOLDS")
    else:
        n, w, gr, g = res.first_mismatch
        body["first_mismatch"] = {"degree": n, "weight": fmt_scalar(w), "gr": gr, "g": g}
        rep.say(f"PBW: FAILS at degree {n}")
        rep.say(f"first mismatch: degree {n}, weight {fmt_scalar(w)}: dim Gr = {gr}, dim G = {g}")
    if res.untrusted:
        rep.say(f"{len(res.untrusted)} cells not compared (their words reach past the window)")
    rep.add(body, res.holds)


def cmd_bg(args, rep: Report) -> None:
    spec, window = resolve_target(args.target, _window(args.window))
    rep.config.update(window=str(window) if window else None)
    res = bg_check(spec, window)
    for kind in ("u0", "u1", "u2", "u3"):
        c1, c2 = res.verdict(kind)
        d = {"id": kind, "status": "pass" if c1 and c2 else "fail",
             "instances": len(res.instances[kind]), "skipped": res.skipped[kind],
             "condition_i": c1, "condition_ii": c2, "undetermined": res.undetermined(kind)}
        line = (f"{kind}: instances={d['instances']} skipped={d['skipped']} "
                f"(i) {'holds' if c1 else 'fails'}, (ii) {'holds' if c2 else 'fails'}")
        bad = res.first_violation(kind, 1) or res.first_violation(kind, 2)
        if bad is not None:
            d["witness"] = {"args": [str(a) for a in bad.args], "image": str(bad)}
            line += f"\n  witness {bad}"
        rep.say(line)
        rep.add(d, c1 and c2)


def cmd_adjoint(args, rep: Report) -> None:
    spec, window = resolve_target(args.target, _window(args.window))
    rep.config.update(window=str(window) if window else None)
    adj = build_adjoint(spec, window)
    g = adj.spec
    rep.say(f"even part: {', '.join(str(e) + ' = ' + g.letter_name(e) for e in adj.evens)}")
    table = []
    for x in g.gens:
        for y in g.gens:
            try:
                val = g.mul(x, y)
            except WindowError:
                continue
            if val:
                table.append([str(x), str(y), str(val)])
                rep.say(f"[{x}, {y}] = {val}")
    rep.add({"id": "bracket-table", "status": "pass", "entries": table})
    rep.add_report(verify_adjoint_consistency(adj, five_term=not args.fast))
    if args.target == "K3":
        rep.add_report(AxiomReport([match_bracket_table(adj, catalog("osp12"), osp_images(adj))]),
                       prefix="osp12 ")
    elif args.target == "AK1":
        k1 = catalog("K1", window)
        images, consts = k1_images(adj, k1)
        rep.add_report(AxiomReport([match_bracket_table(adj, k1, images)]), prefix="K1 ")
        rep.add({"id": "normalization", "status": "pass",
                 "constants": {fmt_scalar(n): fmt_scalar(c) for n, c in sorted(consts.items())}})


def _builtin_rep(name: str, spec: AlgebraSpec):
    base, _, arg = name.partition(":")
    if base == "diffop":
        return diffop_rep(int(arg) if arg else 6, spec)
    if base == "vad":
        return v_ad(spec)
    if base == "zero":
        return zero_representation(spec, ())
    return None


def cmd_rep(args, rep: Report) -> None:
    window = _window(args.window)
    path = Path(args.rep)
    if path.suffix and path.exists():
        r = load_representation(path.read_text(encoding="utf-8"),
                                lambda name, w: resolve_target(name, w or window)[0])
        spec = r.spec
    else:
        spec, window = resolve_target(args.target, window)
        r = _builtin_rep(args.rep, spec)
        if r is None:
            raise UsageError(f"unknown representation {args.rep!r}; use diffop[:N], vad, zero or a file")
    rep.config.update(window=str(window) if window else None, kind=args.kind, rep=r.name)
    if args.kind in ("representation", "both"):
        rep.add_report(check_la_representation(spec, r, window))
    if args.kind in ("module", "both"):
        rep.add_report(check_la_module(spec, r, window), prefix="module ")
    if args.extend:
        kappa = scalar(args.kappa)
        ext = extend_representation(spec, r, build_adjoint(spec, window), kappa, window)
        rep.add_report(AxiomReport([ext.well_defined]).extend(ext.report), prefix="extended ")


def cmd_density(args, rep: Report) -> None:
    window = _window(args.window or "-6..6")
    try:
        lam = Fraction(args.lam)
    except ValueError:
        raise UsageError(f"bad lambda {args.lam!r}") from None
    rep.config.update(window=str(window), **{"lambda": fmt_scalar(lam)})
    res = density_antialgebra_check(lam, window)
    rep.add_report(AxiomReport(res.results))
    rep.say(f"antialgebra structure: {'YES' if res.ok else 'NO'}")


COMMANDS = {"verify": cmd_verify, "nf": cmd_nf, "pbw": cmd_pbw, "bg": cmd_bg,
            "adjoint": cmd_adjoint, "rep": cmd_rep, "density": cmd_density}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("human", "json"), default="human")
    common.add_argument("--window", help="weight window lo..hi, half-integers allowed")

    p = argparse.ArgumentParser(prog="lieanti", description="Lie antialgebra workbench")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="run an axiom suite")
    s.add_argument("target")
    s.add_argument("suite", choices=("antialgebra", "jordan", "superalgebra", "halfunit"))

    s = sub.add_parser("nf", parents=[common], help="normal form in the enveloping algebra")
    s.add_argument("target")
    s.add_argument("word")
    s.add_argument("--degree", type=int)
    s.add_argument("--slack", type=int, default=2)

    s = sub.add_parser("pbw", parents=[common], help="compare Gr U with the quadratic model")
    s.add_argument("target")
    s.add_argument("--degree", type=int)
    s.add_argument("--slack", type=int, default=2)

    s = sub.add_parser("bg", parents=[common], help="Braverman-Gaitsgory conditions")
    s.add_argument("target")

    s = sub.add_parser("adjoint", parents=[common], help="build and check the adjoint superalgebra")
    s.add_argument("target")
    s.add_argument("--fast", action="store_true", help="skip the five-term identity")

    s = sub.add_parser("rep", parents=[common], help="check a representation or module")
    s.add_argument("target")
    s.add_argument("rep", help="diffop[:N], vad, zero or a representation file")
    s.add_argument("--kind", choices=("representation", "module", "both"), default="representation")
    s.add_argument("--extend", action="store_true", help="also extend to the adjoint superalgebra")
    s.add_argument("--kappa", default="2", help="bracket scale for the extension")

    s = sub.add_parser("density", parents=[common], help="density modules of K1")
    s.add_argument("--lambda", dest="lam", required=True)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = {k: v for k, v in vars(args).items() if k not in ("command", "format") and v is not None}
    config = {k: (v if isinstance(v, (int, bool)) else str(v)) for k, v in config.items()}
    rep = Report(args.command, config)
    start = time.perf_counter()
    try:
        COMMANDS[args.command](args, rep)
    except (UsageError, ParseError, DomainError, CompletionError, BoundError, WindowError) as exc:
        print(f"lieanti {args.command}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"lieanti {args.command}: {exc}", file=sys.stderr)
        return 2
    print(rep.render(args.format, time.perf_counter() - start))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
