"""Exhaustive axiom checks with witnesses.

Every identity here is multilinear, so checking it on generator tuples is
the same as checking it everywhere.  Tuples are enumerated in a fixed
order; the witness of a failure is the first failing tuple.  On windowed
algebras a tuple whose evaluation needs an out-of-window generator is
counted as skipped rather than checked.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import BRACKET, PRODUCT, AlgebraSpec, acts_as_half_unit
from .kernel import DomainError, Element, Gen, WindowError, sign

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class Witness:
    args: tuple
    lhs: Element
    rhs: Element

    def as_dict(self) -> dict:
        return {"args": [str(a) for a in self.args], "lhs": str(self.lhs), "rhs": str(self.rhs)}

    def __str__(self) -> str:
        return f"({', '.join(map(str, self.args))}): {self.lhs} != {self.rhs}"


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    status: str
    checked: int = 0
    skipped: int = 0
    witness: Witness | None = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def as_dict(self) -> dict:
        d = {"id": self.axiom, "status": self.status, "checked": self.checked, "skipped": self.skipped}
        if self.witness is not None:
            d["witness"] = self.witness.as_dict()
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class AxiomReport:
    results: list[AxiomResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, axiom: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == axiom:
                return r
        raise KeyError(axiom)

    def __iter__(self):
        return iter(self.results)

    def extend(self, other: "AxiomReport") -> "AxiomReport":
        self.results.extend(other.results)
        return self

    def as_list(self) -> list[dict]:
        return [r.as_dict() for r in self.results]

    def __str__(self) -> str:
        lines = []
        for r in self.results:
            s = f"{r.axiom:<12} {r.status:<7} checked={r.checked} skipped={r.skipped}"
            if r.witness is not None:
                s += f"  witness {r.witness}"
            lines.append(s)
        return "\n".join(lines)


def scan(axiom: str, tuples: Iterable[tuple], lhs: Callable[..., Element],
         rhs: Callable[..., Element] | None = None) -> AxiomResult:
    """Check ``lhs(*t) == rhs(*t)`` (or ``lhs(*t) == 0``) over ``tuples``."""
    checked = skipped = 0
    witness = None
    for t in tuples:
        try:
            left = lhs(*t)
            right = rhs(*t) if rhs is not None else Element()
        except WindowError:
            skipped += 1
            continue
        checked += 1
        if witness is None and left != right:
            witness = Witness(tuple(t), left, right)
    if witness is not None:
        status = FAIL
    elif checked == 0 and skipped:
        status = SKIPPED
    else:
        status = PASS
    return AxiomResult(axiom, status, checked, skipped, witness)


def _require(spec: AlgebraSpec, style: str) -> None:
    if spec.style != style:
        raise DomainError(f"{spec.name} is {spec.style}-style, this check needs {style}-style")


def _window_gens(spec: AlgebraSpec, window) -> tuple[tuple[Gen, ...], tuple[Gen, ...], tuple[Gen, ...]]:
    gens = spec.gens if window is None else tuple(g for g in spec.gens if g.weight in window)
    return gens, tuple(g for g in gens if g.parity == 0), tuple(g for g in gens if g.parity == 1)


def _restricted(spec: AlgebraSpec, window):
    """Product that also enforces an extra caller-supplied window."""
    if window is None:
        return spec.mul

    def mul(u, v):
        out = spec.mul(u, v)
        for g in out.keys():
            if g.weight not in window:
                raise WindowError(g.weight)
        return out
    return mul


def check_supercommutativity(spec: AlgebraSpec, window=None) -> AxiomReport:
    _require(spec, PRODUCT)
    gens, _, _ = _window_gens(spec, window)
    m = _restricted(spec, window)
    res = scan("SC", itertools.product(gens, repeat=2),
               lambda g, h: m(g, h), lambda g, h: m(h, g) * sign(g.parity * h.parity))
    return AxiomReport([res])


def la_identities(spec: AlgebraSpec, window=None) -> list[AxiomResult]:
    gens, ev, od = _window_gens(spec, window)
    m = _restricted(spec, window)
    half = Fraction(1, 2)
    out = [
        scan("LA0", itertools.product(ev, repeat=3),
             lambda x1, x2, x3: m(x1, m(x2, x3)), lambda x1, x2, x3: m(m(x1, x2), x3)),
        scan("LA1", itertools.product(ev, ev, od),
             lambda x1, x2, y: m(x1, m(x2, y)), lambda x1, x2, y: m(m(x1, x2), y) * half),
        scan("LA1'", itertools.product(ev, ev, od),
             lambda x1, x2, y: m(x1, m(x2, y)) + m(x2, m(x1, y)), lambda x1, x2, y: m(m(x1, x2), y)),
        scan("LA2", itertools.product(ev, od, od),
             lambda x, y1, y2: m(x, m(y1, y2)),
             lambda x, y1, y2: m(m(x, y1), y2) + m(y1, m(x, y2))),
        scan("LA3", itertools.product(od, repeat=3),
             lambda y1, y2, y3: m(y1, m(y2, y3)) + m(y2, m(y3, y1)) + m(y3, m(y1, y2))),
    ]
    return out


def check_lie_antialgebra(spec: AlgebraSpec, window=None) -> AxiomReport:
    """Supercommutativity plus LA0, LA1, LA1', LA2 and LA3."""
    report = check_supercommutativity(spec, window)
    report.results.extend(la_identities(spec, window))
    return report


def _sj2(m):
    def lhs(a, b, c, d):
        pa, pb, pc, pd = a.parity, b.parity, c.parity, d.parity
        return (m(m(a, b), m(c, d))
                + m(m(a, c), m(b, d)) * sign(pb * pc)
                + m(m(a, d), m(b, c)) * sign((pb + pc) * pd))

    def rhs(a, b, c, d):
        pa, pb, pc, pd = a.parity, b.parity, c.parity, d.parity
        return (m(m(m(a, b), c), d)
                + m(m(m(a, d), c), b) * sign((pb + pc) * pd + pb * pc)
                + m(m(m(b, d), c), a) * sign((pb + pc + pd) * pa + pc * pd))
    return lhs, rhs


def check_jordan_superalgebra(spec: AlgebraSpec, window=None) -> AxiomReport:
    """SJ1 (supercommutativity) and the quartic super Jordan identity SJ2."""
    _require(spec, PRODUCT)
    gens, _, _ = _window_gens(spec, window)
    m = _restricted(spec, window)
    sj1 = check_supercommutativity(spec, window).results[0]
    sj1 = AxiomResult("SJ1", sj1.status, sj1.checked, sj1.skipped, sj1.witness)
    lhs, rhs = _sj2(m)
    sj2 = scan("SJ2", itertools.product(gens, repeat=4), lhs, rhs)
    return AxiomReport([sj1, sj2])


def check_lie_superalgebra(spec: AlgebraSpec, window=None) -> AxiomReport:
    """Graded antisymmetry on pairs and the graded Jacobi identity on triples."""
    _require(spec, BRACKET)
    gens, _, _ = _window_gens(spec, window)
    br = _restricted(spec, window)
    anti = scan("antisym", itertools.product(gens, repeat=2),
                lambda x, y: br(x, y), lambda x, y: br(y, x) * -sign(x.parity * y.parity))

    def jac(x, y, z):
        px, py, pz = x.parity, y.parity, z.parity
        return (br(br(x, y), z) * sign(px * pz)
                + br(br(y, z), x) * sign(py * px)
                + br(br(z, x), y) * sign(pz * py))
    jacobi = scan("Jacobi", itertools.product(gens, repeat=3), jac)
    return AxiomReport([anti, jacobi])


def check_half_unit(spec: AlgebraSpec, e: Gen) -> tuple[bool, Witness | None]:
    _require(spec, PRODUCT)
    ok, bad = acts_as_half_unit(spec, e)
    if ok:
        return True, None
    g, got, want = bad
    return False, Witness((e, g), got, want)


def half_unit_result(spec: AlgebraSpec, e: Gen) -> AxiomResult:
    ok, w = check_half_unit(spec, e)
    return AxiomResult(f"half-unit({e})", PASS if ok else FAIL, len(spec.gens), 0, w)


def find_half_unit(spec: AlgebraSpec) -> Gen | None:
    for g in spec.evens:
        if check_half_unit(spec, g)[0]:
            return g
    return None


def odd_generated(spec: AlgebraSpec) -> bool:
    """True if every even generator lies in the span of products of two odd ones."""
    from .kernel import in_span
    rows = []
    for a, b in itertools.product(spec.odds, repeat=2):
        try:
            rows.append(spec.mul(a, b))
        except WindowError:
            continue
    ambient = list(spec.evens)
    return all(in_span(rows, ambient, Element.basis(x)) for x in spec.evens)
