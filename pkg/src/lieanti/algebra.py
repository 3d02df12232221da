"""Superalgebra specifications, the product, unit adjunction and the catalog.

A spec is a set of homogeneous generators plus a rule giving the product
(or bracket) of two generators as an :class:`Element`.  Finite algebras
carry an explicit table; the infinite families of the catalog carry a
closed-form rule and are truncated to a :class:`WeightWindow`.

Closed-window contract: a product whose value involves a generator outside
the window raises :class:`WindowError`; it is never silently dropped.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .kernel import DomainError, Element, Gen, WindowError, fmt_scalar, scalar, sign

PRODUCT = "product"
BRACKET = "bracket"


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


class HalfUnitWarning(UserWarning):
    """Raised (as a warning) when a unit is adjoined to an algebra that has one."""


@dataclass(frozen=True)
class WeightWindow:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", scalar(self.lo))
        object.__setattr__(self, "hi", scalar(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"empty window {self}")
        for w in (self.lo, self.hi):
            if (2 * w).denominator != 1:
                raise DomainError(f"window bound {w} is not a multiple of 1/2")

    @classmethod
    def parse(cls, text: str) -> "WeightWindow":
        """Parse ``"lo..hi"``, e.g. ``"-6..6"`` or ``"-5/2..5/2"``."""
        m = re.fullmatch(r"\s*(-?\d+(?:/\d+)?)\s*\.\.\s*(-?\d+(?:/\d+)?)\s*", text)
        if not m:
            raise ValueError(f"bad window {text!r}, expected lo..hi")
        return cls(Fraction(m.group(1)), Fraction(m.group(2)))

    def __contains__(self, w) -> bool:
        return self.lo <= w <= self.hi

    def integers(self) -> list[int]:
        lo = self.lo.__ceil__()
        hi = self.hi.__floor__()
        return list(range(lo, hi + 1))

    def half_odds(self) -> list[Fraction]:
        lo = (2 * self.lo).__ceil__()
        hi = (2 * self.hi).__floor__()
        return [Fraction(k, 2) for k in range(lo, hi + 1) if k % 2]

    def __str__(self) -> str:
        return f"{fmt_scalar(self.lo)}..{fmt_scalar(self.hi)}"


def _as_element(u) -> Element:
    if isinstance(u, Element):
        return u
    if isinstance(u, Gen):
        return Element.basis(u)
    raise TypeError(f"expected Element or Gen, got {type(u).__name__}")


@dataclass(frozen=True, eq=False)
class AlgebraSpec:
    """A (super)algebra given by a product rule on its generators.

    ``style`` is ``"product"`` for antialgebras and Jordan superalgebras and
    ``"bracket"`` for Lie superalgebras.  ``family`` marks the closed-form
    infinite catalog entries, whose generator list depends on ``window``.
    """

    name: str
    gens: tuple[Gen, ...]
    rule: Callable[[Gen, Gen], Element]
    style: str = PRODUCT
    window: WeightWindow | None = None
    family: bool = False
    letter_names: Mapping[Gen, str] = field(default_factory=dict)
    meta: Mapping[str, object] = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        names = [(g.name, g.index) for g in self.gens]
        if len(set(names)) != len(names):
            raise DomainError(f"{self.name}: repeated generator")
        object.__setattr__(self, "_members", frozenset(self.gens))
        object.__setattr__(self, "_family_names", frozenset(g.name for g in self.gens))
        object.__setattr__(self, "_by_str", {str(g): g for g in self.gens})

    # -- generators ---------------------------------------------------------
    @property
    def evens(self) -> tuple[Gen, ...]:
        return tuple(g for g in self.gens if g.parity == 0)

    @property
    def odds(self) -> tuple[Gen, ...]:
        return tuple(g for g in self.gens if g.parity == 1)

    def gen(self, name: str, index=None) -> Gen:
        key = name if index is None else f"{name}_{fmt_scalar(scalar(index))}"
        return self.lookup(key)

    def lookup(self, token: str) -> Gen:
        """Find a generator by its printed form (``"a_1/2"``, ``"eps"``)."""
        g = self._by_str.get(token)
        if g is not None:
            return g
        base = token.split("_", 1)[0]
        if self.family and base in self._family_names:
            raise WindowError(_index_weight(token), f"{token} is outside the window {self.window}")
        raise DomainError(f"unknown generator {token!r} in {self.name}")

    def __contains__(self, g) -> bool:
        return g in self._members

    def _check_gen(self, g: Gen) -> None:
        if g in self._members:
            return
        if self.family and g.name in self._family_names:
            raise WindowError(g.weight, f"{g} is outside the window {self.window}")
        raise DomainError(f"{g} is not a generator of {self.name}")

    def in_window(self, g: Gen) -> bool:
        return self.window is None or g.weight in self.window

    # -- product --------------------------------------------------------------
    def mul_gens(self, g: Gen, h: Gen) -> Element:
        key = (g, h)
        hit = self._cache.get(key)
        if hit is not None:
            if isinstance(hit, WindowError):
                raise hit
            return hit
        self._check_gen(g)
        self._check_gen(h)
        out = self.rule(g, h)
        for k in out.keys():
            if k not in self._members:
                if self.window is not None and k.weight not in self.window:
                    err = WindowError(k.weight, f"{g}*{h} leaves the window at {k}")
                    self._cache[key] = err
                    raise err
                raise DomainError(f"{g}*{h} produced unknown generator {k}")
        self._cache[key] = out
        return out

    def mul(self, u, v) -> Element:
        if isinstance(u, Gen) and isinstance(v, Gen):
            return self.mul_gens(u, v)
        u = _as_element(u)
        v = _as_element(v)
        if len(u) == 1 and len(v) == 1:
            (g, c), = u.items()
            (h, d), = v.items()
            out = self.mul_gens(g, h)
            return out if c * d == 1 else out * (c * d)
        acc = Element()
        for g, c in u.items():
            for h, d in v.items():
                acc = acc + self.mul_gens(g, h) * (c * d)
        return acc

    def letter_name(self, g: Gen) -> str:
        if g in self.letter_names:
            return self.letter_names[g]
        return "E" if g.name == "eps" else g.name.upper()

    def letter(self, g: Gen) -> Gen:
        """The enveloping-algebra letter of ``g`` (``eps_2`` becomes ``E_2``)."""
        return Gen(self.letter_name(g), g.index, g.parity, g.weight2)


def _index_weight(token: str) -> Fraction:
    try:
        return Fraction(token.split("_", 1)[1])
    except (IndexError, ValueError):
        return Fraction(0)


def product(spec: AlgebraSpec, u, v, window: WeightWindow | None = None) -> Element:
    """Bilinear product of ``u`` and ``v`` in ``spec``.

    With an explicit ``window`` every input and output generator must have
    weight inside it.
    """
    u = _as_element(u)
    v = _as_element(v)
    if window is not None:
        for g in list(u.keys()) + list(v.keys()):
            if g.weight not in window:
                raise WindowError(g.weight, f"input {g} is outside the window {window}")
    out = spec.mul(u, v)
    if window is not None:
        for g in out.keys():
            if g.weight not in window:
                raise WindowError(g.weight, f"product leaves the window at {g}")
    return out


# ---------------------------------------------------------------------------
# table-backed specs
# ---------------------------------------------------------------------------

def transpose_sign(style: str, g: Gen, h: Gen) -> int:
    """Coefficient relating ``h*g`` to ``g*h``.

    Supercommutative products give ``(-1)^{gh}``; super brackets give
    ``-(-1)^{gh}``.
    """
    s = sign(g.parity * h.parity)
    return s if style == PRODUCT else -s


def from_table(name: str, gens: Iterable[Gen], table: Mapping[tuple[Gen, Gen], Element],
               style: str = PRODUCT, fill: bool = True, **kwargs) -> AlgebraSpec:
    """Finite spec from a partial multiplication table.

    With ``fill`` the transposed entries are derived from the graded
    (anti)symmetry and any explicit entry contradicting that is rejected.
    Entries must be parity- and weight-homogeneous of the expected degree.
    """
    gens = tuple(gens)
    members = set(gens)
    full: dict[tuple[Gen, Gen], Element] = {}
    for (g, h), val in table.items():
        for k in (g, h):
            if k not in members:
                raise DomainError(f"table entry uses unknown generator {k}")
        _check_homogeneous(g, h, val, members)
        if (g, h) in full and full[(g, h)] != val:
            raise DomainError(f"conflicting entries for {g}*{h}: {full[(g, h)]} vs {val}")
        full[(g, h)] = val
        if fill:
            tv = val * transpose_sign(style, g, h)
            if (h, g) in full and full[(h, g)] != tv:
                raise DomainError(
                    f"{h}*{g} = {full[(h, g)]} contradicts {g}*{h} = {val} under graded symmetry")
            full[(h, g)] = tv
    zero = Element()

    def rule(g: Gen, h: Gen, _t=full) -> Element:
        return _t.get((g, h), zero)

    meta = dict(kwargs.pop("meta", {}))
    meta["table"] = full
    return AlgebraSpec(name, gens, rule, style=style, meta=meta, **kwargs)


def _check_homogeneous(g: Gen, h: Gen, val: Element, members) -> None:
    for k in val.keys():
        if k not in members:
            raise DomainError(f"entry {g}*{h} uses unknown generator {k}")
        if k.parity != (g.parity + h.parity) % 2:
            raise DomainError(f"entry {g}*{h} has parity {k.parity}, expected {(g.parity + h.parity) % 2}")
        if k.weight2 != g.weight2 + h.weight2:
            raise DomainError(
                f"entry {g}*{h} is weight-inhomogeneous: {k} has weight {fmt_scalar(k.weight)}, "
                f"expected {fmt_scalar(g.weight + h.weight)}")


def with_entries(spec: AlgebraSpec, entries: Mapping[tuple[Gen, Gen], Element],
                 fill: bool = True, name: str | None = None) -> AlgebraSpec:
    """Copy of ``spec`` with some products overridden (used for mutation tests)."""
    over = {}
    for (g, h), val in entries.items():
        over[(g, h)] = val
        if fill:
            over[(h, g)] = val * transpose_sign(spec.style, g, h)
    base = spec.rule

    def rule(g: Gen, h: Gen) -> Element:
        hit = over.get((g, h))
        return hit if hit is not None else base(g, h)

    meta = dict(spec.meta)
    if "table" in meta:
        t = dict(meta["table"])
        t.update(over)
        meta["table"] = t
    return AlgebraSpec(name or f"{spec.name}'", spec.gens, rule, style=spec.style,
                       window=spec.window, family=spec.family,
                       letter_names=spec.letter_names, meta=meta)


def zero_algebra(name: str, gens: Iterable[Gen], style: str = PRODUCT) -> AlgebraSpec:
    return from_table(name, gens, {}, style=style)


def acts_as_half_unit(spec: AlgebraSpec, e: Gen) -> tuple[bool, tuple | None]:
    """Whether ``e`` is a half-unit; on failure also returns ``(g, lhs, rhs)``."""
    if e.parity != 0:
        raise DomainError(f"half-unit candidate {e} is odd")
    spec._check_gen(e)
    for g in spec.gens:
        want = Element.basis(g, 1 if g.parity == 0 else Fraction(1, 2))
        for got in (spec.mul_gens(e, g), spec.mul_gens(g, e)):
            if got != want:
                return False, (g, got, want)
    return True, None


def adjoin_unit(spec: AlgebraSpec, name: str = "eps") -> AlgebraSpec:
    """Add a fresh even half-unit to a finite product-style spec."""
    if spec.style != PRODUCT:
        raise DomainError("adjoin_unit needs a product-style spec")
    if spec.family:
        raise DomainError("adjoin_unit is only supported for finite specs")
    for g in spec.evens:
        if acts_as_half_unit(spec, g)[0]:
            warnings.warn(f"{spec.name} already has the half-unit {g}; adding another",
                          HalfUnitWarning, stacklevel=2)
            break
    taken = {str(g) for g in spec.gens}
    while name in taken:
        name += "'"
    e = Gen.make(name, 0, 0)
    table = dict(spec.meta.get("table", {}))
    if not table:
        for g in spec.gens:
            for h in spec.gens:
                val = spec.mul_gens(g, h)
                if val:
                    table[(g, h)] = val
    table[(e, e)] = Element.basis(e)
    for g in spec.gens:
        table[(e, g)] = Element.basis(g, 1 if g.parity == 0 else Fraction(1, 2))
    letters = dict(spec.letter_names)
    return from_table(f"{spec.name}+1", (e,) + spec.gens, table, style=PRODUCT,
                      letter_names=letters)


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------

def _k3_gens():
    return (Gen.make("eps", 0, 0), Gen.make("a", 1, Fraction(1, 2)), Gen.make("b", 1, Fraction(-1, 2)))


def k3() -> AlgebraSpec:
    eps, a, b = _k3_gens()
    half = Fraction(1, 2)
    table = {
        (eps, eps): Element.basis(eps),
        (eps, a): Element.basis(a, half),
        (eps, b): Element.basis(b, half),
        (a, b): Element.basis(eps, half),
    }
    return from_table("K3", (eps, a, b), table)


def gk3() -> AlgebraSpec:
    """Zero product on the K3 generators; its enveloping algebra is G(K3)."""
    return zero_algebra("GK3", _k3_gens())


def osp12() -> AlgebraSpec:
    E = Gen.make("E", 0, 1)
    F = Gen.make("F", 0, -1)
    H = Gen.make("H", 0, 0)
    A = Gen.make("A", 1, Fraction(1, 2))
    B = Gen.make("B", 1, Fraction(-1, 2))
    el = Element.basis
    table = {
        (H, E): el(E, 2), (H, F): el(F, -2), (E, F): el(H),
        (H, A): el(A), (E, A): Element(), (F, A): el(B),
        (H, B): el(B, -1), (E, B): el(A), (F, B): Element(),
        (A, B): el(H, -1), (A, A): el(E, 2), (B, B): el(F, -2),
    }
    # U(osp(1|2)) is built with XY -+ YX = [X, Y], the normalization in which
    # AB - BA - 1/2 is invariant under the twisted adjoint action
    return from_table("osp12", (E, F, H, A, B), table, style=BRACKET, meta={"bracket_scale": 1})


def ak1(window: WeightWindow) -> AlgebraSpec:
    """Conformal antialgebra with ``a_i a_j = 1/2 (j - i) eps_{i+j}``."""
    evens = {n: Gen.make("eps", 0, n, index=n) for n in window.integers()}
    odds = {i: Gen.make("a", 1, i, index=i) for i in window.half_odds()}
    half = Fraction(1, 2)

    def e(n):
        return evens.get(n) or Gen.make("eps", 0, n, index=n)

    def o(i):
        return odds.get(i) or Gen.make("a", 1, i, index=i)

    def rule(g: Gen, h: Gen) -> Element:
        if g.parity == 0 and h.parity == 0:
            return Element.basis(e(g.index + h.index))
        if g.parity == 0:
            return Element.basis(o(g.index + h.index), half)
        if h.parity == 0:
            return Element.basis(o(g.index + h.index), half)
        return Element.basis(e(g.index + h.index), half * (h.index - g.index))

    return AlgebraSpec("AK1", tuple(evens.values()) + tuple(odds.values()), rule,
                       window=window, family=True)


def k1(window: WeightWindow) -> AlgebraSpec:
    """Conformal Lie superalgebra with the brackets of the adjoint of AK1."""
    evens = {n: Gen.make("x", 0, n, index=n) for n in window.integers()}
    odds = {i: Gen.make("a", 1, i, index=i) for i in window.half_odds()}
    half = Fraction(1, 2)

    def x(n):
        return evens.get(n) or Gen.make("x", 0, n, index=n)

    def o(i):
        return odds.get(i) or Gen.make("a", 1, i, index=i)

    def rule(g: Gen, h: Gen) -> Element:
        if g.parity == 0 and h.parity == 0:
            return Element.basis(x(g.index + h.index), half * (h.index - g.index))
        if g.parity == 0:
            n, i = g.index, h.index
            return Element.basis(o(n + i), half * (i - n / 2))
        if h.parity == 0:
            n, i = h.index, g.index
            return Element.basis(o(n + i), -half * (i - n / 2))
        return Element.basis(x(g.index + h.index))

    return AlgebraSpec("K1", tuple(evens.values()) + tuple(odds.values()), rule,
                       style=BRACKET, window=window, family=True)


CATALOG = ("K3", "AK1", "osp12", "K1", "GK3")


def catalog(name: str, window: WeightWindow | str | None = None) -> AlgebraSpec:
    if isinstance(window, str):
        window = WeightWindow.parse(window)
    if name in ("AK1", "K1"):
        if window is None:
            raise DomainError(f"{name} is infinite and needs a weight window")
        return ak1(window) if name == "AK1" else k1(window)
    builders = {"K3": k3, "osp12": osp12, "GK3": gk3}
    if name not in builders:
        raise DomainError(f"unknown catalog algebra {name!r}; known: {', '.join(CATALOG)}")
    return builders[name]()


# ---------------------------------------------------------------------------
# definition documents
# ---------------------------------------------------------------------------

_NUM = r"-?\d+(?:/\d+)?"
_DECL = re.compile(rf"^(even|odd)\s+(\S+)\s*:\s*weight\s+({_NUM})\s*$")
_PROD = re.compile(r"^(\S+?)\s*\*\s*(\S+?)\s*=\s*(.*)$")
_BRKT = re.compile(r"^\[\s*(\S+?)\s*,\s*(\S+?)\s*\]\s*=\s*(.*)$")


_SUM_TERM = re.compile(rf"\s*([+-])?\s*({_NUM})?\s*([A-Za-z][\w'/\-]*)\s*")


def parse_sum(text: str, lookup: Callable[[str], object], line: int = 1, col: int = 1) -> Element:
    """Parse ``"c1 g1 + c2 g2 - g3"`` (or ``"0"``) over generators found by ``lookup``."""
    if text.strip() == "0":
        return Element()
    if not text.strip():
        raise ParseError("empty right-hand side", line, col)
    terms = []
    pos = 0
    while pos < len(text):
        m = _SUM_TERM.match(text, pos)
        if not m or m.end() == pos or (terms and not m.group(1)):
            raise ParseError(f"cannot read term at {text[pos:].strip()!r}", line, col + pos)
        c = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            c = -c
        try:
            g = lookup(m.group(3))
        except (DomainError, WindowError) as exc:
            raise ParseError(str(exc), line, col + m.start(3)) from None
        terms.append((g, c))
        pos = m.end()
    return Element(terms)


def load_spec(text: str) -> AlgebraSpec:
    """Parse an algebra-definition document.

    ``algebra NAME`` opens the document; ``bracket`` switches to Lie
    superalgebra style.  Generators are declared with
    ``even|odd NAME : weight W`` and products with ``x*y = rhs`` (or
    ``[x,y] = rhs``).  Missing products are zero; transposes are filled
    in by graded symmetry and contradictions are rejected.
    """
    name = None
    style = PRODUCT
    gens: list[Gen] = []
    by_name: dict[str, Gen] = {}
    entries: list[tuple[int, int, str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if body.startswith("algebra"):
            parts = body.split()
            if len(parts) != 2 or parts[0] != "algebra":
                raise ParseError("expected 'algebra NAME'", lineno, col)
            if name is not None:
                raise ParseError("second 'algebra' header", lineno, col)
            name = parts[1]
            continue
        if body == "bracket":
            style = BRACKET
            continue
        if name is None:
            raise ParseError("document must start with 'algebra NAME'", lineno, col)
        m = _DECL.match(body)
        if m:
            kind, gname, w = m.groups()
            if gname in by_name:
                raise ParseError(f"generator {gname} declared twice", lineno, col)
            if not re.fullmatch(r"[A-Za-z][\w']*", gname):
                raise ParseError(f"bad generator name {gname!r}", lineno, col + body.find(gname))
            try:
                g = Gen.make(gname, 0 if kind == "even" else 1, Fraction(w))
            except DomainError as exc:
                raise ParseError(str(exc), lineno, col + body.find(w)) from None
            gens.append(g)
            by_name[gname] = g
            continue
        m = (_BRKT if style == BRACKET else _PROD).match(body)
        if m:
            entries.append((lineno, col, *m.groups()))
            continue
        raise ParseError(f"cannot parse {body!r}", lineno, col)
    if name is None:
        raise ParseError("missing 'algebra NAME' header", 1, 1)

    def lookup(tok: str) -> Gen:
        if tok not in by_name:
            raise DomainError(f"unknown generator {tok!r}")
        return by_name[tok]

    table: dict[tuple[Gen, Gen], Element] = {}
    for lineno, col, l, r, rhs in entries:
        try:
            g, h = lookup(l), lookup(r)
        except DomainError as exc:
            raise ParseError(str(exc), lineno, col) from None
        val = parse_sum(rhs, lookup, lineno, col + len(l) + len(r) + 3)
        try:
            _check_homogeneous(g, h, val, set(gens))
        except DomainError as exc:
            raise ParseError(str(exc), lineno, col) from None
        tv = val * transpose_sign(style, g, h)
        for key, v in (((g, h), val), ((h, g), tv)):
            if key in table and table[key] != v:
                raise ParseError(
                    f"{key[0]}*{key[1]} = {table[key]} contradicts graded symmetry ({v})", lineno, col)
            table[key] = v
    return from_table(name, gens, table, style=style)


def dump_spec(spec: AlgebraSpec) -> str:
    """Inverse of :func:`load_spec` for finite specs."""
    if spec.family:
        raise DomainError("infinite families have no document form")
    lines = [f"algebra {spec.name}"]
    if spec.style == BRACKET:
        lines.append("bracket")
    for g in spec.gens:
        lines.append(f"{'even' if g.parity == 0 else 'odd'} {g} : weight {fmt_scalar(g.weight)}")
    seen = set()
    for i, g in enumerate(spec.gens):
        for h in spec.gens[i:]:
            val = spec.mul_gens(g, h)
            if not val or (h, g) in seen:
                continue
            seen.add((g, h))
            rhs = val.format()
            lines.append(f"[{g},{h}] = {rhs}" if spec.style == BRACKET else f"{g}*{h} = {rhs}")
    return "\n".join(lines) + "\n"


def specs_equal(s1: AlgebraSpec, s2: AlgebraSpec) -> bool:
    """Same generators (with gradings) and same product table."""
    if s1.style != s2.style or len(s1.gens) != len(s2.gens):
        return False
    for g, h in zip(s1.gens, s2.gens):
        if g != h or g.parity != h.parity or g.weight2 != h.weight2:
            return False
    return all(s1.mul_gens(g, h) == s2.mul_gens(g, h) for g in s1.gens for h in s1.gens)
