"""The adjoint Lie superalgebra of a Lie antialgebra.

The odd part is the odd part of the antialgebra.  The even part is the
quotient of ``a1 (x) a1`` by the span of ``a(x)b - b(x)a`` and
``(ax)(x)b - a(x)(bx)``; it is computed one weight component at a time by
row reduction.  Ambient pairs are ordered so that the surviving
(non-pivot) pair of each class is the smallest one, which makes it the
canonical representative ``a⊙b``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import BRACKET, PRODUCT, AlgebraSpec, WeightWindow
from .axioms import AxiomReport, AxiomResult, check_lie_superalgebra, scan
from .kernel import DomainError, Element, Gen, WindowError, residue, row_reduce, pivot_of


def tensor(u: Element, v: Element) -> Element:
    """``u (x) v`` as an element over pairs of generators."""
    return Element(((g, h), c * d) for g, c in u.items() for h, d in v.items())


@dataclass
class _Component:
    ambient: list
    basis: list
    reps: dict          # non-pivot pair -> even basis generator


@dataclass(frozen=True, eq=False)
class SymmetricPairClass:
    representative: Element     # element of a1 (x) a1
    coordinates: Element        # over the even basis of the adjoint


@dataclass(eq=False)
class AdjointSpec:
    base: AlgebraSpec
    odds: tuple[Gen, ...]
    evens: tuple[Gen, ...]
    rep: dict[Gen, tuple[Gen, Gen]]
    components: dict[int, _Component]
    skipped_relations: int = 0
    _cls: dict = field(default_factory=dict, repr=False)
    _memo_table: dict = field(default_factory=dict, repr=False)
    _spec: AlgebraSpec | None = field(default=None, repr=False)

    @property
    def window(self) -> WeightWindow | None:
        return self.base.window

    def m(self, u, v) -> Element:
        return self.base.mul(u, v)

    # -- the quotient --------------------------------------------------------
    def cls(self, a: Gen, b: Gen) -> Element:
        """Coordinates of ``a⊙b`` over the even basis."""
        key = (a, b)
        hit = self._cls.get(key)
        if hit is not None:
            if isinstance(hit, WindowError):
                raise hit
            return hit
        if a.parity != 1 or b.parity != 1:
            raise DomainError(f"{a}⊙{b}: both factors must be odd")
        w2 = a.weight2 + b.weight2
        comp = self.components.get(w2)
        if comp is None:
            err = WindowError(Fraction(w2, 2), f"{a}⊙{b} has weight outside the window")
            self._cls[key] = err
            raise err
        res = residue(comp.basis, comp.ambient, Element.basis(key))
        out = Element((comp.reps[k], c) for k, c in res.items())
        self._cls[key] = out
        return out

    def sym(self, u: Element, v: Element) -> Element:
        """Bilinear ``u⊙v`` for odd elements of the antialgebra."""
        if len(u) == 1 and len(v) == 1:
            (g, c), = u.items()
            (h, d), = v.items()
            return self.cls(g, h) * (c * d)
        acc = Element()
        for g, c in u.items():
            for h, d in v.items():
                acc = acc + self.cls(g, h) * (c * d)
        return acc

    # -- the bracket ---------------------------------------------------------
    def _memo(self, key, compute):
        hit = self._memo_table.get(key)
        if hit is None:
            try:
                hit = compute()
            except WindowError as exc:
                hit = exc
            self._memo_table[key] = hit
        if isinstance(hit, WindowError):
            raise hit
        return hit

    def triple(self, a: Gen, b: Gen, c: Gen) -> Element:
        """``a(bc)`` in the antialgebra."""
        return self._memo(("t", a, b, c), lambda: self.m(a, self.m(b, c)))

    def odd_even(self, a: Gen, b: Gen, c: Gen) -> Element:
        """``[a⊙b, c] = a(bc) + b(ac)`` for any pair, not only representatives."""
        return self._memo(("oe", a, b, c), lambda: self.triple(a, b, c) + self.triple(b, a, c))

    def even_even(self, a: Gen, b: Gen, c: Gen, d: Gen) -> Element:
        """``[a⊙b, c⊙d] = 2 a(bc)⊙d + 2 b(ad)⊙c`` for any pairs."""
        def compute():
            one = Element.basis
            return (self.sym(self.triple(a, b, c), one(d)) + self.sym(self.triple(b, a, d), one(c))) * 2
        return self._memo(("ee", a, b, c, d), compute)

    def bracket_gens(self, x: Gen, y: Gen) -> Element:
        if x.parity == 1 and y.parity == 1:
            return self.cls(x, y)
        if x.parity == 0 and y.parity == 1:
            a, b = self.rep[x]
            return self.odd_even(a, b, y)
        if x.parity == 1 and y.parity == 0:
            a, b = self.rep[y]
            return -self.odd_even(a, b, x)
        a, b = self.rep[x]
        c, d = self.rep[y]
        return self.even_even(a, b, c, d)

    def bracket(self, X, Y) -> Element:
        return self.spec.mul(X, Y)

    @property
    def spec(self) -> AlgebraSpec:
        """The adjoint as a bracket-style spec (for axiom checks and enveloping)."""
        if self._spec is None:
            self._spec = AlgebraSpec(
                f"g({self.base.name})", self.evens + self.odds, self.bracket_gens,
                style=BRACKET, window=self.base.window, family=self.base.family,
                letter_names={e: "⊙".join(str(self.base.letter(p)) for p in self.rep[e])
                              for e in self.evens},
                meta={"adjoint": self})
        return self._spec

    def even_of_weight(self, w) -> tuple[Gen, ...]:
        w2 = int(2 * Fraction(w))
        return tuple(e for e in self.evens if e.weight2 == w2)

    def component_dims(self) -> dict[Fraction, int]:
        out: dict[Fraction, int] = {}
        for e in self.evens:
            out[e.weight] = out.get(e.weight, 0) + 1
        return out


def build_adjoint(spec: AlgebraSpec, window: WeightWindow | None = None) -> AdjointSpec:
    """Quotient basis of the even part and the bracket table.

    Relations that need an out-of-window product are left out and
    counted in ``skipped_relations``; on windowed algebras the even part
    is restricted to in-window weights.
    """
    if spec.style != PRODUCT:
        raise DomainError("build_adjoint needs a product-style antialgebra")
    window = window or spec.window
    odds = tuple(g for g in spec.odds if window is None or g.weight in window)
    evens = tuple(g for g in spec.evens if window is None or g.weight in window)
    pos = {g: i for i, g in enumerate(odds)}
    by_weight: dict[int, list] = {}
    for a, b in itertools.product(odds, repeat=2):
        w2 = a.weight2 + b.weight2
        if window is not None and Fraction(w2, 2) not in window:
            continue
        by_weight.setdefault(w2, []).append((a, b))
    skipped = 0
    rows: dict[int, list[Element]] = {w2: [] for w2 in by_weight}
    for a, b in itertools.product(odds, repeat=2):
        w2 = a.weight2 + b.weight2
        if w2 in rows:
            rows[w2].append(Element({(a, b): 1}) - Element({(b, a): 1}))
        for x in evens:
            w2x = w2 + x.weight2
            if w2x not in rows:
                continue
            try:
                r = tensor(spec.mul(a, x), Element.basis(b)) - tensor(Element.basis(a), spec.mul(b, x))
            except WindowError:
                skipped += 1
                continue
            if any(k not in pos for pair in r.keys() for k in pair):
                skipped += 1
                continue
            if r:
                rows[w2x].append(r)
    components: dict[int, _Component] = {}
    rep: dict[Gen, tuple[Gen, Gen]] = {}
    even_basis: list[Gen] = []
    for w2 in sorted(by_weight, reverse=True):
        ambient = sorted(by_weight[w2], key=lambda p: (pos[p[0]], pos[p[1]]), reverse=True)
        basis, _ = row_reduce(rows[w2], ambient)
        pivots = {pivot_of(r, ambient) for r in basis}
        reps = {}
        for p in reversed(ambient):
            if p in pivots:
                continue
            g = Gen.make(f"{p[0]}⊙{p[1]}", 0, Fraction(w2, 2))
            reps[p] = g
            rep[g] = p
            even_basis.append(g)
        components[w2] = _Component(ambient, basis, reps)
    return AdjointSpec(spec, odds, tuple(even_basis), rep, components, skipped)


def symmetric_pair(adj: AdjointSpec, u: Element, v: Element) -> SymmetricPairClass:
    for e in (u, v):
        if e and e.parity() != 1:
            raise DomainError("symmetric_pair needs odd arguments")
    return SymmetricPairClass(tensor(u, v), adj.sym(u, v))


def verify_adjoint_consistency(adj: AdjointSpec, five_term: bool = True) -> AxiomReport:
    """Representative independence, the equivalent bracket forms and the super Lie axioms."""
    od = adj.odds
    m = adj.m
    one = Element.basis
    results: list[AxiomResult] = []

    def rep_odd(a, b, c):
        return adj.bracket(adj.cls(a, b), one(c))

    results.append(scan("propbrkt-odd", itertools.product(od, repeat=3),
                        rep_odd, lambda a, b, c: adj.odd_even(a, b, c)))

    def rep_even(a, b, c, d):
        return adj.bracket(adj.cls(a, b), adj.cls(c, d))

    results.append(scan("propbrkt-even", itertools.product(od, repeat=4),
                        rep_even, lambda a, b, c, d: adj.even_even(a, b, c, d)))

    t = adj.triple

    def four_terms(a, b, c, d):
        s = adj.sym
        return (s(t(a, b, c), one(d)) + s(t(b, a, d), one(c))
                + s(t(b, a, c), one(d)) + s(t(a, b, d), one(c)))

    def four_terms_swapped(a, b, c, d):
        s = adj.sym
        return (s(t(d, b, c), one(a)) + s(t(c, a, d), one(b))
                + s(t(d, a, c), one(b)) + s(t(c, b, d), one(a)))

    results.append(scan("supbkt2a", itertools.product(od, repeat=4), adj.even_even, four_terms))
    results.append(scan("supbkt2b", itertools.product(od, repeat=4), adj.even_even, four_terms_swapped))

    def split(a, b, c, d):
        return adj.sym(adj.odd_even(a, b, c), one(d)) + adj.sym(adj.odd_even(a, b, d), one(c))

    results.append(scan("supbkt4", itertools.product(od, repeat=4), adj.even_even, split))
    results.append(scan("supbkt5", itertools.product(od, repeat=4), adj.even_even,
                        lambda a, b, c, d: -adj.even_even(c, d, a, b)))
    results.extend(check_lie_superalgebra(adj.spec).results)
    if five_term:
        results.append(scan("J2-J1", itertools.product(od, repeat=5), _j2_minus_j1(m)))
    return AxiomReport(results)


def _j2_minus_j1(m):
    def f(a, b, c, d, e):
        j1 = (m(m(a, m(b, c)), m(d, e)) - m(a, m(b, m(c, m(d, e))))
              + m(m(b, m(a, c)), m(d, e)) - m(b, m(a, m(c, m(d, e)))))
        j2 = (m(c, m(e, m(b, m(a, d)))) - m(c, m(d, m(b, m(a, e))))
              + m(c, m(e, m(a, m(b, d)))) - m(c, m(d, m(a, m(b, e)))))
        return j2 - j1
    return f


def match_bracket_table(adj: AdjointSpec, target: AlgebraSpec,
                        images: Mapping[Gen, Element]) -> AxiomResult:
    """Check that ``images`` is a bracket homomorphism from ``target`` into the adjoint."""
    if target.style != BRACKET:
        raise DomainError("target must be a bracket-style spec")

    def img(e: Element) -> Element:
        acc = Element()
        for g, c in e.items():
            if g not in images:
                raise WindowError(g.weight, f"{g} has no image")
            acc = acc + images[g] * c
        return acc

    gens = [g for g in target.gens if g in images]
    return scan("bracket-table", itertools.product(gens, repeat=2),
                lambda x, y: adj.bracket(images[x], images[y]),
                lambda x, y: img(target.mul(x, y)))


def osp_images(adj: AdjointSpec) -> dict[Gen, Element]:
    """The rescaling E=2a⊙a, F=-2b⊙b, H=-4a⊙b, A=2a, B=2b for the K3 adjoint."""
    from .algebra import osp12
    osp = osp12()
    a, b = adj.base.gen("a"), adj.base.gen("b")
    E, F, H, A, B = osp.gens
    return {E: adj.cls(a, a) * 2, F: adj.cls(b, b) * -2, H: adj.cls(a, b) * -4,
            A: Element.basis(a, 2), B: Element.basis(b, 2)}


def k1_normalization(adj: AdjointSpec) -> dict[Fraction, set[Fraction]]:
    """For each weight ``n`` the scalars ``c`` with ``a_i⊙a_{n-i} = c * basis_n``.

    A single value per weight means the class is independent of the split.
    """
    out: dict[Fraction, set[Fraction]] = {}
    for a, b in itertools.product(adj.odds, repeat=2):
        try:
            v = adj.cls(a, b)
        except WindowError:
            continue
        basis = adj.even_of_weight(a.weight + b.weight)
        if len(basis) != 1:
            raise DomainError(f"weight {a.weight + b.weight} component is not one-dimensional")
        out.setdefault(a.weight + b.weight, set()).add(v.coeff(basis[0]))
    return out


def k1_images(adj: AdjointSpec, k1: AlgebraSpec) -> tuple[dict[Gen, Element], dict[Fraction, Fraction]]:
    """Map the K1 generators into the adjoint of AK1: ``a_i -> a_i``, ``x_n -> a_i⊙a_{n-i}``."""
    norms = k1_normalization(adj)
    images: dict[Gen, Element] = {}
    consts: dict[Fraction, Fraction] = {}
    odd_by_index = {g.index: g for g in adj.odds}
    for g in k1.gens:
        if g.parity == 1:
            if g.index in odd_by_index:
                images[g] = Element.basis(odd_by_index[g.index])
            continue
        n = g.index
        if n not in norms:
            continue
        (c,) = norms[n]
        consts[n] = c
        images[g] = Element.basis(adj.even_of_weight(n)[0], c)
    return images, consts
