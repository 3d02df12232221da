"""Representations and modules of Lie antialgebras.

A :class:`Representation` is an action of generators on a graded carrier
basis.  Carriers may be windowed; an action that would leave the carrier
raises :class:`~lieanti.kernel.WindowError`, and checks count such test
vectors as skipped.

Also here: the differential-operator model of ``U(K3)`` on
``Q[x, xi]/(xi^2)``, the adjoint module ``V_ad``, the replay of the
``Irr(sigma, 1/2, m)`` argument, extension to the adjoint superalgebra
and the density modules ``F_lambda`` of ``K1``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .adjoint import AdjointSpec
from .algebra import (BRACKET, PRODUCT, AlgebraSpec, ParseError, WeightWindow, catalog,
                      parse_sum, zero_algebra)
from .axioms import AxiomReport, AxiomResult, Witness, check_lie_antialgebra, scan
from .kernel import DomainError, Element, Gen, WindowError, fmt_scalar, scalar, sign

HALF = Fraction(1, 2)


@dataclass(eq=False)
class Representation:
    """``act(g, v)`` is the image of carrier basis vector ``v`` under generator ``g``."""

    spec: AlgebraSpec
    carrier: tuple[Gen, ...]
    act: Callable[[Gen, Gen], Element]
    name: str = "rep"
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self._members = frozenset(self.carrier)

    def apply(self, x, vec) -> Element:
        """``rho(x) vec`` for elements ``x`` of the algebra and ``vec`` of the carrier."""
        x = _el(x)
        vec = _el(vec)
        acc: dict = {}
        for g, c in x.items():
            for v, d in vec.items():
                if v not in self._members:
                    raise WindowError(v.weight, f"{v} is not in the carrier")
                for k, e in self.act(g, v).items():
                    if k not in self._members:
                        raise WindowError(k.weight, f"{g} maps {v} outside the carrier")
                    val = acc.get(k, 0) + c * d * e
                    if val:
                        acc[k] = val
                    else:
                        acc.pop(k, None)
        return Element._raw(acc)

    def chain(self, gens: Sequence, v) -> Element:
        """``rho(g1) rho(g2) ... rho(gk) v``."""
        out = _el(v)
        for g in reversed(gens):
            out = self.apply(g, out)
        return out

    def matrix(self, g: Gen) -> dict[Gen, Element]:
        """Columns of ``rho(g)`` on a finite carrier."""
        return {v: self.apply(g, v) for v in self.carrier}


def _el(x) -> Element:
    if isinstance(x, Element):
        return x
    if isinstance(x, Gen):
        return Element.basis(x)
    raise TypeError(f"expected Element or Gen, got {type(x).__name__}")


def table_representation(spec: AlgebraSpec, carrier: Iterable[Gen],
                         table: Mapping[tuple[Gen, Gen], Element], name: str = "rep") -> Representation:
    """Finite representation from ``(g, v) -> rho(g) v``; missing entries are zero."""
    carrier = tuple(carrier)
    for (g, v), val in table.items():
        if g not in spec:
            raise DomainError(f"{g} is not a generator of {spec.name}")
        if v not in carrier:
            raise DomainError(f"{v} is not a carrier vector")
        for k in val.keys():
            if k not in carrier:
                raise DomainError(f"{g}.{v} uses unknown vector {k}")
            if k.parity != (g.parity + v.parity) % 2:
                raise DomainError(f"{g}.{v} = {val} breaks the parity of the action")
    zero = Element()
    tab = dict(table)
    return Representation(spec, carrier, lambda g, v: tab.get((g, v), zero), name,
                          meta={"table": tab})


def zero_representation(spec: AlgebraSpec, carrier: Iterable[Gen]) -> Representation:
    return table_representation(spec, carrier, {}, "zero")


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def _carrier_in(rep: Representation, window):
    if window is None:
        return rep.carrier
    return tuple(v for v in rep.carrier if v.weight in window)


def _gens_in(spec: AlgebraSpec, window):
    if window is None:
        return spec.gens
    return tuple(g for g in spec.gens if g.weight in window)


def check_la_representation(spec: AlgebraSpec, rep: Representation, window=None) -> AxiomReport:
    """(Firc) ``rho(ab) = [rho a, rho b]_+`` on generator pairs and carrier vectors,
    and (Secc) ``rho(x) rho(y) = rho(y) rho(x)`` for even generators."""
    if spec.style != PRODUCT:
        raise DomainError("LA-representations are defined for product-style specs")
    if rep.spec is not spec and rep.spec.name != spec.name:
        raise DomainError(f"representation is of {rep.spec.name}, not {spec.name}")
    gens = _gens_in(spec, window)
    vecs = _carrier_in(rep, window)

    def firc_l(g, h, v):
        return rep.apply(spec.mul(g, h), v)

    def firc_r(g, h, v):
        s = sign(g.parity * h.parity)
        return (rep.chain((g, h), v) + rep.chain((h, g), v) * s) * HALF

    firc = scan("Firc", itertools.product(gens, gens, vecs), firc_l, firc_r)
    ev = [g for g in gens if g.parity == 0]
    secc = scan("Secc", itertools.product(ev, ev, vecs),
                lambda x, y, v: rep.chain((x, y), v), lambda x, y, v: rep.chain((y, x), v))
    return AxiomReport([firc, secc])


def check_lie_representation(rep: Representation, kappa=2, window=None) -> AxiomReport:
    """``rho X rho Y - (-1)^{|X||Y|} rho Y rho X = kappa rho [X, Y]`` on generators."""
    spec = rep.spec
    if spec.style != BRACKET:
        raise DomainError("needs a representation of a bracket-style spec")
    k = scalar(kappa)
    gens = _gens_in(spec, window)
    vecs = _carrier_in(rep, window)
    res = scan("rep-bracket", itertools.product(gens, gens, vecs),
               lambda x, y, v: rep.chain((x, y), v) - rep.chain((y, x), v) * sign(x.parity * y.parity),
               lambda x, y, v: rep.apply(spec.mul(x, y), v) * k)
    return AxiomReport([res])


def split_null_extension(spec: AlgebraSpec, rep: Representation) -> AlgebraSpec:
    """``a + V`` with ``g.v = rho(g) v``, ``v.g = (-1)^{|g||v|} rho(g) v`` and ``V.V = 0``."""
    if spec.style != PRODUCT:
        raise DomainError("split null extension needs a product-style spec")
    names = {(g.name, g.index) for g in spec.gens}
    for v in rep.carrier:
        if (v.name, v.index) in names:
            raise DomainError(f"carrier vector {v} clashes with a generator name")
    algebra = set(spec.gens)

    def rule(g: Gen, h: Gen) -> Element:
        if g in algebra and h in algebra:
            return spec.mul(g, h)
        if g in algebra:
            return rep.apply(g, h)
        if h in algebra:
            return rep.apply(h, g) * sign(g.parity * h.parity)
        return Element()

    return AlgebraSpec(f"{spec.name}+{rep.name}", spec.gens + rep.carrier, rule,
                       window=spec.window, family=spec.family)


def check_la_module(spec: AlgebraSpec, rep: Representation, window=None) -> AxiomReport:
    """Run the Lie antialgebra axioms on the split null extension."""
    return check_lie_antialgebra(split_null_extension(spec, rep), window)


# ---------------------------------------------------------------------------
# V_ad and Irr(sigma, 1/2, m)
# ---------------------------------------------------------------------------

def v_ad(k3: AlgebraSpec | None = None, b_on_u: Fraction = Fraction(-1, 4)) -> Representation:
    """The three-dimensional adjoint module of K3 (``b_on_u`` is exposed for mutation tests)."""
    k3 = k3 or catalog("K3")
    eps, a, b = k3.gen("eps"), k3.gen("a"), k3.gen("b")
    v = Gen.make("v", 1, -HALF)
    w = Gen.make("w", 0, 0)
    u = Gen.make("u", 1, HALF)
    el = Element.basis
    table = {
        (eps, v): el(v, HALF), (eps, w): el(w), (eps, u): el(u, HALF),
        (a, v): el(w), (a, w): el(u),
        (b, w): el(v, Fraction(1, 4)), (b, u): el(w, b_on_u),
    }
    return table_representation(k3, (v, w, u), table, "V_ad")


@dataclass(frozen=True)
class IrrVerdict:
    sigma: int
    m: int
    consistent: bool
    trace: tuple[str, ...]

    def __str__(self) -> str:
        head = f"Irr({self.sigma}, 1/2, {self.m}): {'consistent' if self.consistent else 'inconsistent'}"
        return "\n".join((head,) + tuple("  " + t for t in self.trace))


def irr_consistency(m: int, sigma: int, k3: AlgebraSpec | None = None) -> IrrVerdict:
    """Replay whether a vector ``v`` of parity ``sigma`` with ``eps.v = v/2``,
    ``b.v = 0`` and ``b.(a.v) = (m/4) v`` can live in an LA-module of K3.

    Everything is read off the structure constants of K3 inside the
    split null extension, so only the coefficient of ``v`` is tracked.
    """
    if sigma not in (0, 1):
        raise DomainError("sigma must be 0 or 1")
    if m < 0:
        raise DomainError("m must be non-negative")
    k3 = k3 or catalog("K3")
    eps, a, b = k3.gen("eps"), k3.gen("a"), k3.gen("b")
    e_on_v = HALF
    ee = k3.mul(eps, eps).coeff(eps)
    ba = k3.mul(b, a).coeff(eps)
    trace = [f"eps.v = {fmt_scalar(e_on_v)} v, b.v = 0, b.(a.v) = {fmt_scalar(Fraction(m, 4))} v (given)",
             f"eps.eps = {fmt_scalar(ee)} eps, b.a = {fmt_scalar(ba)} eps (K3 table)"]
    if sigma == 0:
        lhs = ee * e_on_v
        rhs = e_on_v * e_on_v
        trace.append(f"LA0 on (eps, eps, v): (eps.eps).v = {fmt_scalar(lhs)} v, "
                     f"eps.(eps.v) = {fmt_scalar(rhs)} v")
        ok = lhs == rhs
        if not ok:
            trace.append("even v contradicts associativity of the even part")
        return IrrVerdict(sigma, m, ok, tuple(trace))
    # odd v: LA1 on (eps, eps, v) is fine, LA3 on (b, a, v) fixes b.(a.v)
    la1_l = e_on_v * e_on_v
    la1_r = HALF * ee * e_on_v
    trace.append(f"LA1 on (eps, eps, v): {fmt_scalar(la1_l)} v vs {fmt_scalar(la1_r)} v")
    v_b = -0  # v.b = (-1)^{1*1} b.v = 0
    v_ba = ba * e_on_v          # v.(c eps) = c (eps.v), eps even
    forced = -v_b - v_ba
    trace.append(f"LA3 on (b, a, v): b.(a.v) = -a.(v.b) - v.(b.a) = {fmt_scalar(forced)} v")
    ok = la1_l == la1_r and forced == Fraction(m, 4)
    trace.append(f"compare with m/4 = {fmt_scalar(Fraction(m, 4))}: {'equal' if forced == Fraction(m, 4) else 'different'}")
    return IrrVerdict(sigma, m, ok, tuple(trace))


# ---------------------------------------------------------------------------
# differential operators on Q[x, xi]/(xi^2)
# ---------------------------------------------------------------------------

def _fmul(f: tuple[int, int], g: tuple[int, int]) -> tuple[int, int] | None:
    q = f[1] + g[1]
    if q > 1:
        return None
    return (f[0] + g[0], q)


def _d_of(f: tuple[int, int]) -> dict[tuple[int, int], Fraction]:
    """``D(x^p xi^q)`` with ``D = d/dxi + xi d/dx``."""
    p, q = f
    if q == 1:
        return {(p, 0): Fraction(1)}
    if p == 0:
        return {}
    return {(p - 1, 1): Fraction(p)}


class DiffOperator:
    """Finite sum of ``c x^p xi^q D^m`` with ``D = d/dxi + xi d/dx``.

    ``D`` is odd, has order 1/2 and squares to ``d/dx``; every
    differential operator on ``Q[x, xi]/(xi^2)`` has a unique expression of
    this shape, so equality of terms is equality of operators.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int, int], object] = ()):
        acc = {}
        for k, c in dict(terms).items():
            c = scalar(c)
            if c:
                acc[k] = acc.get(k, 0) + c
        self.terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def mono(cls, p=0, q=0, m=0, c=1) -> "DiffOperator":
        return cls({(p, q, m): c})

    @classmethod
    def identity(cls) -> "DiffOperator":
        return cls.mono()

    def __add__(self, o: "DiffOperator") -> "DiffOperator":
        acc = dict(self.terms)
        for k, c in o.terms.items():
            acc[k] = acc.get(k, 0) + c
        return DiffOperator(acc)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator({k: -c for k, c in self.terms.items()})

    def __sub__(self, o: "DiffOperator") -> "DiffOperator":
        return self + (-o)

    def __mul__(self, c) -> "DiffOperator":
        if isinstance(c, DiffOperator):
            return self @ c
        c = scalar(c)
        return DiffOperator({k: v * c for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __matmul__(self, o: "DiffOperator") -> "DiffOperator":
        """Composition ``self o o``."""
        acc: dict = {}
        for (p, q, m), c in self.terms.items():
            for (r, s, n), d in o.terms.items():
                for (fp, fq, k), e in _d_power_past((r, s), m).items():
                    f = _fmul((p, q), (fp, fq))
                    if f is None:
                        continue
                    key = (f[0], f[1], k + n)
                    acc[key] = acc.get(key, 0) + c * d * e
        return DiffOperator(acc)

    def __eq__(self, o) -> bool:
        if isinstance(o, DiffOperator):
            return self.terms == o.terms
        if o == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def parity(self) -> int:
        ps = {(q + m) % 2 for (p, q, m) in self.terms}
        if len(ps) > 1:
            raise DomainError("operator is not parity-homogeneous")
        return ps.pop() if ps else 0

    def order(self) -> Fraction:
        """Highest order, counting ``D`` as 1/2."""
        if not self.terms:
            return Fraction(-1)
        return Fraction(max(m for (_, _, m) in self.terms), 2)

    def leading(self) -> "DiffOperator":
        if not self.terms:
            return self
        top = max(m for (_, _, m) in self.terms)
        return DiffOperator({k: c for k, c in self.terms.items() if k[2] == top})

    def apply(self, poly: Mapping[tuple[int, int], Fraction]) -> dict[tuple[int, int], Fraction]:
        """Act on ``{(p, q): c}`` meaning ``sum c x^p xi^q``."""
        acc: dict = {}
        for (p, q, m), c in self.terms.items():
            cur = dict(poly)
            for _ in range(m):
                nxt: dict = {}
                for f, a in cur.items():
                    for g, b in _d_of(f).items():
                        nxt[g] = nxt.get(g, 0) + a * b
                cur = {k: v for k, v in nxt.items() if v}
            for f, a in cur.items():
                g = _fmul((p, q), f)
                if g is not None:
                    acc[g] = acc.get(g, 0) + c * a
        return {k: v for k, v in acc.items() if v}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (p, q, m), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][2], -kv[0][0], -kv[0][1])):
            f = []
            if q:
                f.append("ξ")
            if p:
                f.append("x" if p == 1 else f"x^{p}")
            if m:
                f.append("D" if m == 1 else f"D^{m}")
            body = " ".join(f) or "1"
            sgn = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            txt = body if mag == 1 and body != "1" else (fmt_scalar(mag) if body == "1" else f"{fmt_scalar(mag)} {body}")
            parts.append((sgn, txt))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, txt in parts[1:]:
            out += f" {sgn} {txt}"
        return out

    __repr__ = __str__


_DPOW: dict = {}


def _d_power_past(f: tuple[int, int], m: int) -> dict[tuple[int, int, int], Fraction]:
    """``D^m o f`` as ``{(p, q, k): c}`` meaning ``sum c x^p xi^q D^k``."""
    key = (f, m)
    hit = _DPOW.get(key)
    if hit is not None:
        return hit
    cur = {(f[0], f[1], 0): Fraction(1)}
    for _ in range(m):
        nxt: dict = {}
        for (p, q, k), c in cur.items():
            for g, a in _d_of((p, q)).items():
                kk = (g[0], g[1], k)
                nxt[kk] = nxt.get(kk, 0) + c * a
            kk = (p, q, k + 1)
            nxt[kk] = nxt.get(kk, 0) + c * sign(q)
        cur = {k: v for k, v in nxt.items() if v}
    _DPOW[key] = cur
    return cur


D = DiffOperator.mono(m=1)
X = DiffOperator.mono(p=1)
XI = DiffOperator.mono(q=1)
D_X = DiffOperator.mono(m=2)    # d/dx = D^2
D_XI = DiffOperator({(0, 0, 1): 1, (0, 1, 2): -1})   # d/dxi = D - xi d/dx


def diffop_images(k3: AlgebraSpec | None = None) -> dict[Gen, DiffOperator]:
    """``a -> x D``, ``b -> -D``, ``eps -> xi D``."""
    k3 = k3 or catalog("K3")
    return {k3.gen("a"): X @ D, k3.gen("b"): -D, k3.gen("eps"): XI @ D}


def diffop_word(images: Mapping[Gen, DiffOperator], word: Sequence[Gen]) -> DiffOperator:
    out = DiffOperator.identity()
    for g in word:
        out = out @ images[g]
    return out


def diffop_element(rs, images: Mapping[Gen, DiffOperator], e: Element) -> DiffOperator:
    """Operator image of an element of ``U(K3)`` given over letter words."""
    by_letter = {rs.letter_of[g]: op for g, op in images.items()}
    acc = DiffOperator()
    for w, c in e.items():
        acc = acc + diffop_word(by_letter, w) * c
    return acc


def diffop_rep(x_degree_bound: int, k3: AlgebraSpec | None = None) -> Representation:
    """K3 acting on polynomials of x-degree at most the bound (closed carrier)."""
    if x_degree_bound < 1:
        raise DomainError("x-degree bound must be at least 1")
    k3 = k3 or catalog("K3")
    images = diffop_images(k3)
    carrier = []
    of: dict[tuple[int, int], Gen] = {}
    for k in range(x_degree_bound + 1):
        g = Gen.make("1" if k == 0 else ("x" if k == 1 else f"x^{k}"), 0, k)
        o = Gen.make("ξ" if k == 0 else ("ξx" if k == 1 else f"ξx^{k}"), 1, k + HALF)
        of[(k, 0)], of[(k, 1)] = g, o
        carrier += [g, o]
    back = {g: f for f, g in of.items()}

    def act(g: Gen, v: Gen) -> Element:
        out = images[g].apply({back[v]: Fraction(1)})
        acc = {}
        for f, c in out.items():
            if f not in of:
                raise WindowError(Fraction(f[0]) + HALF * f[1], f"x-degree {f[0]} exceeds {x_degree_bound}")
            acc[of[f]] = c
        return Element._raw(acc)

    return Representation(k3, tuple(carrier), act, f"diffop({x_degree_bound})",
                          meta={"images": images, "monomial": of})


# ---------------------------------------------------------------------------
# extension to the adjoint superalgebra
# ---------------------------------------------------------------------------

@dataclass
class Extension:
    rep: Representation
    well_defined: AxiomResult
    report: AxiomReport


def extend_representation(spec: AlgebraSpec, rep: Representation, adj: AdjointSpec,
                          kappa=2, window=None) -> Extension:
    """``rho~(a) = rho(a)``, ``rho~(a⊙b) = (rho a rho b + rho b rho a) / kappa``.

    ``kappa`` is the bracket scale of the superalgebra representation being
    checked: ``rho~X rho~Y - (-1)^{|X||Y|} rho~Y rho~X = kappa rho~[X, Y]``.
    Well-definedness is checked over every pair of odd generators, not
    only the chosen representatives.
    """
    k = scalar(kappa)
    g = adj.spec

    def act(X: Gen, v: Gen) -> Element:
        if X.parity == 1:
            return rep.apply(X, v)
        a, b = adj.rep[X]
        return (rep.chain((a, b), v) + rep.chain((b, a), v)) / k

    ext = Representation(g, rep.carrier, act, f"{rep.name}~", meta={"kappa": k})
    vecs = _carrier_in(rep, window)

    def direct(a, b, v):
        return (rep.chain((a, b), v) + rep.chain((b, a), v)) / k

    def via_class(a, b, v):
        return ext.apply(adj.cls(a, b), v)

    wd = scan("well-defined", itertools.product(adj.odds, adj.odds, vecs), via_class, direct)
    return Extension(ext, wd, check_lie_representation(ext, k, window))


# ---------------------------------------------------------------------------
# density modules of K1
# ---------------------------------------------------------------------------

def density_rep(lam, window: WeightWindow | str) -> Representation:
    """``F_lambda`` on ``{f_m} + {phi_i}`` inside the window.

    ``x_n f_m = (m + lambda n) f_{n+m}``,
    ``x_n phi_i = (i + (lambda + 1/2) n) phi_{n+i}``,
    ``a_i f_n = (n/2 + lambda i) phi_{i+n}``, ``a_i phi_j = 2 f_{i+j}``.
    """
    if isinstance(window, str):
        window = WeightWindow.parse(window)
    lam = scalar(lam)
    k1 = catalog("K1", window)
    fs = {m: Gen.make("f", 0, m, index=m) for m in window.integers()}
    ps = {i: Gen.make("phi", 1, i, index=i) for i in window.half_odds()}

    def vec(kind, idx):
        table = fs if kind == "f" else ps
        if idx not in table:
            raise WindowError(idx, f"{kind}_{fmt_scalar(idx)} is outside the window {window}")
        return table[idx]

    def act(g: Gen, v: Gen) -> Element:
        n = g.index
        j = v.index
        if g.parity == 0 and v.parity == 0:
            c, t = j + lam * n, vec("f", n + j)
        elif g.parity == 0:
            c, t = j + (lam + HALF) * n, vec("phi", n + j)
        elif v.parity == 0:
            c, t = j / 2 + lam * n, vec("phi", n + j)
        else:
            c, t = Fraction(2), vec("f", n + j)
        return Element.basis(t, c)

    return Representation(k1, tuple(fs.values()) + tuple(ps.values()), act, f"F({fmt_scalar(lam)})",
                          meta={"lambda": lam, "window": window})


def adjoint_factor(rep: Representation) -> tuple[set[Fraction], int]:
    """Scalars ``c`` with ``chi_X(v) = c [X, v]`` under ``f_m <-> x_m``, ``phi_i <-> a_i``.

    Returns the set of ratios met and the number of comparisons made; a
    single ratio means the module is that multiple of the adjoint action.
    """
    k1 = rep.spec
    to_alg = {}
    for v in rep.carrier:
        name = "x" if v.name == "f" else "a"
        try:
            to_alg[v] = k1.gen(name, v.index)
        except (DomainError, WindowError):
            continue
    ratios: set[Fraction] = set()
    count = 0
    for X in k1.gens:
        for v, y in to_alg.items():
            try:
                lhs = rep.apply(X, v)
                rhs = k1.mul(X, y)
            except WindowError:
                continue
            lhs_alg = Element((to_alg[k], c) for k, c in lhs.items())
            count += 1
            if not lhs_alg and not rhs:
                continue
            keys = set(lhs_alg.keys()) | set(rhs.keys())
            for key in keys:
                a, b = lhs_alg.coeff(key), rhs.coeff(key)
                ratios.add(a / b if b else Fraction(10**9))
    return ratios, count


@dataclass
class DensityReport:
    lam: Fraction
    results: list[AxiomResult]
    eps_images: dict[int, tuple]          # n -> the pair (i, j) used to define chi_eps_n

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def __getitem__(self, key: str) -> AxiomResult:
        for r in self.results:
            if r.axiom == key:
                return r
        raise KeyError(key)

    def __str__(self) -> str:
        return str(AxiomReport(self.results))


def density_antialgebra_check(lam, window: WeightWindow | str) -> DensityReport:
    """Whether ``F_lambda`` carries a representation of AK1.

    (i) ``(chi_ai chi_aj - chi_aj chi_ai) / (j - i)`` depends only on ``i + j``;
    (ii) that operator defines ``chi_eps_n``;
    (iii) ``chi_eps_n chi_ai + chi_ai chi_eps_n = chi_a(n+i)``;
    (iv) ``chi_eps_n chi_eps_m = chi_eps(n+m)``.
    Test vectors whose images leave the window are skipped.
    """
    if isinstance(window, str):
        window = WeightWindow.parse(window)
    rep = density_rep(lam, window)
    k1 = rep.spec
    odds = sorted(k1.odds, key=lambda g: g.index)
    by_sum: dict[Fraction, list[tuple[Gen, Gen]]] = {}
    for i, a in enumerate(odds):
        for b in odds[i + 1:]:
            by_sum.setdefault(a.index + b.index, []).append((a, b))

    def D_ij(a, b, v):
        return (rep.chain((a, b), v) - rep.chain((b, a), v)) / (b.index - a.index)

    def defined(n):
        return n in by_sum

    def chi_eps(n, v):
        if not defined(n):
            raise WindowError(Fraction(n), f"no pair of odd generators sums to {n}")
        a, b = by_sum[n][0]
        return D_ij(a, b, _el(v))

    def chi_eps_el(n, vec: Element) -> Element:
        acc = Element()
        for v, c in vec.items():
            acc = acc + chi_eps(n, v) * c
        return acc

    vecs = rep.carrier
    wd_tuples = [(n, p, v) for n, pairs in by_sum.items() for p in pairs[1:] for v in vecs]
    wd = scan("well-defined", wd_tuples,
              lambda n, p, v: D_ij(p[0], p[1], v), lambda n, p, v: chi_eps(n, v))
    ns = sorted(by_sum)
    formula = scan("eps-formula", [(n, v) for n in ns for v in vecs],
                   lambda n, v: chi_eps(n, v),
                   lambda n, v: _eps_expected(rep, n, v))
    anti = scan("eps-a", [(n, a, v) for n in ns for a in odds for v in vecs],
                lambda n, a, v: chi_eps_el(n, rep.apply(a, v)) + rep.apply(a, chi_eps(n, v)),
                lambda n, a, v: _apply_odd(rep, k1, a.index + n, v))
    mult = scan("eps-eps", [(n, m, v) for n in ns for m in ns for v in vecs],
                lambda n, m, v: chi_eps_el(n, chi_eps(m, v)),
                lambda n, m, v: chi_eps(n + m, v))
    return DensityReport(scalar(lam), [wd, formula, anti, mult],
                         {n: (by_sum[n][0][0].index, by_sum[n][0][1].index) for n in ns})


def _eps_expected(rep: Representation, n, v: Gen) -> Element:
    """``2 lambda f_{n+m}`` on ``f_m`` and ``(1 - 2 lambda) phi_{n+i}`` on ``phi_i``."""
    lam = rep.meta["lambda"]
    target_name = v.name
    members = {(g.name, g.index): g for g in rep.carrier}
    t = members.get((target_name, v.index + n))
    if t is None:
        raise WindowError(v.weight + n)
    c = 2 * lam if v.parity == 0 else 1 - 2 * lam
    return Element.basis(t, c)


def _apply_odd(rep: Representation, k1: AlgebraSpec, idx, v) -> Element:
    try:
        a = k1.gen("a", idx)
    except DomainError:
        raise WindowError(Fraction(idx))
    return rep.apply(a, v)


# ---------------------------------------------------------------------------
# definition documents
# ---------------------------------------------------------------------------

_HEAD = re.compile(r"^representation\s+(\S+)\s+of\s+(\S+)(?:\s+window\s+(\S+))?\s*$")
_DECL = re.compile(r"^(even|odd)\s+(\S+)\s*:\s*weight\s+(-?\d+(?:/\d+)?)\s*$")
_ENTRY = re.compile(r"^(\S+)\s*\|\s*(\S+)\s*=\s*(.*)$")


def load_representation(text: str, specs: Callable[[str, WeightWindow | None], AlgebraSpec] = catalog
                        ) -> Representation:
    """Parse a representation document::

        representation V_ad of K3
        odd  v : weight -1/2
        even w : weight 0
        a | v = w
        b | w = 1/4 v

    The algebra is looked up with ``specs(name, window)``.  Unlisted
    actions are zero.
    """
    spec = None
    name = "rep"
    carrier: list[Gen] = []
    by_name: dict[str, Gen] = {}
    table: dict[tuple[Gen, Gen], Element] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if spec is None:
            m = _HEAD.match(line)
            if not m:
                raise ParseError("expected 'representation NAME of ALGEBRA'", lineno)
            name = m.group(1)
            try:
                window = WeightWindow.parse(m.group(3)) if m.group(3) else None
                spec = specs(m.group(2), window)
            except (DomainError, ValueError) as exc:
                raise ParseError(str(exc), lineno) from None
            continue
        m = _DECL.match(line)
        if m:
            kind, vname, w = m.groups()
            if vname in by_name:
                raise ParseError(f"vector {vname} declared twice", lineno)
            try:
                g = Gen.make(vname, 0 if kind == "even" else 1, Fraction(w))
            except DomainError as exc:
                raise ParseError(str(exc), lineno) from None
            carrier.append(g)
            by_name[vname] = g
            continue
        m = _ENTRY.match(line)
        if m:
            gtok, vtok, rhs = m.groups()
            try:
                g = spec.lookup(gtok)
            except (DomainError, WindowError) as exc:
                raise ParseError(str(exc), lineno, raw.index(gtok) + 1) from None
            if vtok not in by_name:
                raise ParseError(f"unknown vector {vtok!r}", lineno, raw.index(vtok) + 1)
            v = by_name[vtok]
            col = raw.index("=") + 2

            def lookup(tok, _ln=lineno):
                if tok not in by_name:
                    raise ParseError(f"unknown vector {tok!r}", _ln)
                return by_name[tok]
            val = parse_sum(rhs, lookup, lineno, col)
            for k in val.keys():
                if k.parity != (g.parity + v.parity) % 2:
                    raise ParseError(f"{gtok} | {vtok} has the wrong parity", lineno)
                if k.weight2 != g.weight2 + v.weight2:
                    raise ParseError(f"{gtok} | {vtok} is weight-inhomogeneous", lineno)
            if (g, v) in table:
                raise ParseError(f"duplicate entry {gtok} | {vtok}", lineno)
            table[(g, v)] = val
            continue
        raise ParseError(f"cannot parse line: {line!r}", lineno)
    if spec is None:
        raise ParseError("empty document", 1)
    return table_representation(spec, carrier, table, name)


def dump_representation(rep: Representation) -> str:
    lines = [f"representation {rep.name} of {rep.spec.name}"]
    for v in rep.carrier:
        lines.append(f"{'even' if v.parity == 0 else 'odd'} {v} : weight {fmt_scalar(v.weight)}")
    for g in rep.spec.gens:
        for v in rep.carrier:
            val = rep.apply(g, v)
            if val:
                lines.append(f"{g} | {v} = {val}")
    return "\n".join(lines) + "\n"


def secc_counterexample() -> tuple[AlgebraSpec, Representation]:
    """Two even generators with zero product acting by anticommuting
    square-zero 4x4 matrices: (Firc) holds, (Secc) fails."""
    x = Gen.make("x", 0, 0)
    y = Gen.make("y", 0, 0)
    spec = zero_algebra("Z2", (x, y))
    e = [Gen.make(f"e{i}", 0, 0) for i in range(1, 5)]
    el = Element.basis
    # X = e12 + e34, Y = e13 - e24 acting on columns
    table = {
        (x, e[1]): el(e[0]), (x, e[3]): el(e[2]),
        (y, e[2]): el(e[0]), (y, e[3]): el(e[1], -1),
    }
    return spec, table_representation(spec, e, table, "M4")
