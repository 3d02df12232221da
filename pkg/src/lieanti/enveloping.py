"""Enveloping algebras as rewriting systems.

Words are tuples of letter generators.  Words are compared by weighted
degree first (every letter has degree 1 unless told otherwise) and then
lexicographically by letter rank.  A relation is turned into a rule by
solving for its largest word.  Normal forms are computed by appending one
letter at a time to an already irreducible word, so the only possible
redex is a suffix; results are memoized until the rule set changes.

Infinite algebras are truncated to a weight window.  A relation whose
right-hand side would need a letter outside the window is not added; its
leading word is remembered as *blocked*, and a normal form that still
contains a blocked word raises :class:`BoundError` instead of pretending
to be irreducible.
"""
from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .algebra import BRACKET, PRODUCT, AlgebraSpec, WeightWindow, catalog
from .kernel import (DomainError, Element, Gen, WindowError, fmt_scalar, residue, row_reduce,
                     scalar, sign, word_str)

ONE: tuple = ()


class BoundError(WindowError):
    """A reduction or overlap needs a relation that the bounds cut away."""

    def __init__(self, word, message: str | None = None):
        self.word = tuple(word)
        w = Fraction(sum(g.weight2 for g in self.word), 2)
        super().__init__(w, message or f"word {word_str(self.word)} needs a relation outside the bounds")


class CompletionError(ArithmeticError):
    """Completion produced a relation that cannot be oriented into a rule."""

    def __init__(self, element: Element, message: str):
        self.element = element
        super().__init__(f"{message}: {element.format(show=word_str)}")


@dataclass(eq=False)
class Rule:
    lhs: tuple
    rhs: Element
    origin: str = "relation"

    def __str__(self) -> str:
        return f"{word_str(self.lhs)} -> {_fmt(self.rhs)}"


@dataclass(frozen=True)
class LogEntry:
    """One rule produced by completion, with the overlap it came from."""
    lhs: tuple
    rhs: Element
    overlap: tuple
    left: tuple
    right: tuple

    def __str__(self) -> str:
        return (f"{word_str(self.lhs)} -> {_fmt(self.rhs)}   "
                f"[overlap {word_str(self.overlap)} of {word_str(self.left)} / {word_str(self.right)}]")


def _fmt(e: Element, key=None) -> str:
    return e.format(key=key or _plain_key, reverse=True, show=word_str)


def _plain_key(w):
    return (len(w), tuple(str(g) for g in w))


def concat(u: Element, v: Element) -> Element:
    """Product in the free algebra: concatenation of words."""
    acc: dict = {}
    for w1, c1 in u.items():
        for w2, c2 in v.items():
            w = w1 + w2
            x = acc.get(w, 0) + c1 * c2
            if x:
                acc[w] = x
            else:
                acc.pop(w, None)
    return Element._raw(acc)


def power_str(word: Sequence[Gen]) -> str:
    """``E A B B`` as ``E A B^2``; the unit word is ``1``."""
    if not word:
        return "1"
    parts = []
    for g, run in itertools.groupby(word):
        k = len(list(run))
        parts.append(str(g) if k == 1 else f"{g}^{k}")
    return " ".join(parts)


def word_element(word: Sequence[Gen], coeff=1) -> Element:
    return Element.basis(tuple(word), coeff)


class RewriteSystem:
    """Letters, oriented rules and the bookkeeping of bounded completion."""

    def __init__(self, name: str, letters: Sequence[Gen], degrees: Mapping[Gen, int] | None = None,
                 window: WeightWindow | None = None, source: AlgebraSpec | None = None,
                 letter_of: Mapping[Gen, Gen] | None = None, bracket_scale: Fraction | None = None):
        self.name = name
        self.letters = tuple(letters)
        if len(set(self.letters)) != len(self.letters):
            raise DomainError(f"{name}: repeated letter")
        self.rank = {g: i for i, g in enumerate(self.letters)}
        self.degrees = {g: 1 for g in self.letters}
        if degrees:
            self.degrees.update(degrees)
        self.window = window
        self.source = source
        self.letter_of = dict(letter_of or {})
        self.bracket_scale = bracket_scale
        self.rules: dict[tuple, Rule] = {}
        self.blocked: set[tuple] = set()
        self.log: list[LogEntry] = []
        self.partial_ambiguities = 0
        self.completed_to: int | None = None
        self._by_str = {str(g): g for g in self.letters}
        self._lhs_lengths: set[int] = set()
        self._blocked_lengths: set[int] = set()
        self._append_cache: dict = {}

    # -- words -------------------------------------------------------------------
    def degree(self, word: Sequence[Gen]) -> int:
        return sum(self.degrees[g] for g in word)

    def weight(self, word: Sequence[Gen]) -> Fraction:
        return Fraction(sum(g.weight2 for g in word), 2)

    def key(self, word: Sequence[Gen]) -> tuple:
        return (self.degree(word), tuple(self.rank[g] for g in word))

    def leading(self, e: Element) -> tuple:
        return max(e.keys(), key=self.key)

    def letter(self, token: str) -> Gen:
        g = self._by_str.get(token)
        if g is None:
            raise DomainError(f"unknown letter {token!r} in {self.name}")
        return g

    def word(self, text: str) -> tuple:
        """Parse ``"E A B"`` or ``"E A B^2"`` into a word; ``""`` and ``"1"`` give the unit."""
        out: list[Gen] = []
        for tok in text.split():
            if tok == "1":
                continue
            base, _, power = tok.partition("^")
            n = int(power) if power else 1
            if n < 0:
                raise DomainError(f"negative power in {tok!r}")
            out.extend([self.letter(base)] * n)
        return tuple(out)

    def w(self, text: str, coeff=1) -> Element:
        return word_element(self.word(text), coeff)

    def element(self, text: str) -> Element:
        """Parse a sum like ``"A B - B A - 1/2"``; terms are separated by `` + `` or `` - ``."""
        text = text.strip()
        if not text:
            return self.w("")
        parts = re.split(r"\s+([+-])\s+", " " + text)
        first = parts[0].strip()
        terms = [("+", first)] + list(zip(parts[1::2], parts[2::2]))
        acc = Element()
        for sgn, body in terms:
            body = body.strip()
            if body.startswith("-"):
                sgn = "-" if sgn == "+" else "+"
                body = body[1:].strip()
            m = re.match(r"^(\d+(?:/\d+)?)(?:\s+|\s*\*\s*|$)(.*)$", body)
            c = Fraction(1)
            if m:
                c = Fraction(m.group(1))
                body = m.group(2)
            acc = acc + self.w(body, c if sgn == "+" else -c)
        return acc

    def fmt(self, e: Element) -> str:
        return e.format(key=self.key, reverse=True, show=power_str)

    # -- rules -------------------------------------------------------------------
    def _invalidate(self) -> None:
        self._append_cache.clear()
        self._lhs_lengths = {len(l) for l in self.rules}

    def block(self, word: Sequence[Gen]) -> None:
        self.blocked.add(tuple(word))
        self._blocked_lengths = {len(b) for b in self.blocked}
        self._append_cache.clear()

    def _orient(self, e: Element) -> tuple[tuple, Element]:
        lead = self.leading(e)
        c = e.coeff(lead)
        if not lead:
            raise CompletionError(e, "relation reduces to a nonzero scalar")
        if len(lead) == 1:
            raise CompletionError(e, "relation would make a generator dependent on lower words")
        rhs = (Element.basis(lead, c) - e) * (1 / c)
        return lead, rhs

    def add_relation(self, e: Element, origin: str = "relation") -> list[Rule]:
        """Add ``e = 0``; returns the rules installed (possibly none)."""
        return self._absorb([(e, origin)])

    def _absorb(self, pending: list) -> list[Rule]:
        installed: list[Rule] = []
        while pending:
            e, origin = pending.pop(0)
            e = self.normal_form(e, strict=False)
            if not e:
                continue
            lhs, rhs = self._orient(e)
            rule = Rule(lhs, rhs, origin)
            self.rules[lhs] = rule
            installed.append(rule)
            # rules whose lhs contains the new lhs become relations again
            for other in list(self.rules.values()):
                if other is rule or not _contains(other.lhs, lhs):
                    continue
                del self.rules[other.lhs]
                pending.append((word_element(other.lhs) - other.rhs, other.origin))
            self._invalidate()
        return installed

    def interreduce(self) -> None:
        """Bring every right-hand side to normal form."""
        for rule in list(self.rules.values()):
            rule.rhs = self.normal_form(rule.rhs, strict=False)
        self._invalidate()

    # -- normal forms --------------------------------------------------------------
    def _redex(self, word: tuple) -> Rule | None:
        n = len(word)
        for k in sorted(self._lhs_lengths, reverse=True):
            if k <= n:
                r = self.rules.get(word[n - k:])
                if r is not None:
                    return r
        return None

    def _blocked_suffix(self, word: tuple) -> tuple | None:
        n = len(word)
        for k in self._blocked_lengths:
            if k <= n and word[n - k:] in self.blocked:
                return word[n - k:]
        return None

    def append(self, u: tuple, x: Gen) -> Element:
        """Normal form of ``u x`` for an irreducible word ``u`` (blocked words are left alone)."""
        key = (u, x)
        hit = self._append_cache.get(key)
        if hit is None:
            hit = self._append_cache[key] = self._append(u, x)
        return hit

    def _append(self, u: tuple, x: Gen) -> Element:
        word = u + (x,)
        rule = self._redex(word)
        if rule is None:
            return Element._raw({word: Fraction(1)})
        prefix = word[:len(word) - len(rule.lhs)]
        acc: dict = {}
        for w, c in rule.rhs.items():
            for w2, c2 in self._extend(prefix, w).items():
                v = acc.get(w2, 0) + c * c2
                if v:
                    acc[w2] = v
                else:
                    acc.pop(w2, None)
        return Element._raw(acc)

    def blocked_in(self, word: tuple) -> tuple | None:
        """The first blocked subword of ``word``, if any."""
        if not self.blocked:
            return None
        n = len(word)
        for end in range(1, n + 1):
            for k in self._blocked_lengths:
                if k <= end and word[end - k:end] in self.blocked:
                    return word[end - k:end]
        return None

    def _extend(self, prefix: tuple, word: tuple) -> Element:
        """Normal form of ``prefix word`` for an irreducible ``prefix``."""
        cur: dict = {prefix: Fraction(1)}
        for x in word:
            nxt: dict = {}
            for w, c in cur.items():
                for w2, c2 in self.append(w, x).items():
                    v = nxt.get(w2, 0) + c * c2
                    if v:
                        nxt[w2] = v
                    else:
                        nxt.pop(w2, None)
            cur = nxt
        return Element._raw(cur)

    def normal_form(self, e: Element, strict: bool = True) -> Element:
        """Reduce ``e`` until no rule applies.

        Every step applies a genuine relation, so the result always equals
        ``e`` in the algebra.  With ``strict`` a result that still contains
        a blocked word raises :class:`BoundError`, because the relation that
        would reduce it lies outside the bounds.
        """
        acc: dict = {}
        for w, c in e.items():
            for k in w:
                if k not in self.rank:
                    raise DomainError(f"{k} is not a letter of {self.name}")
            for w2, c2 in self._extend(ONE, w).items():
                v = acc.get(w2, 0) + c * c2
                if v:
                    acc[w2] = v
                else:
                    acc.pop(w2, None)
        if strict and self.blocked:
            for w in acc:
                b = self.blocked_in(w)
                if b is not None:
                    raise BoundError(b)
        return Element._raw(acc)

    nf = normal_form

    def mul(self, *factors: Element) -> Element:
        """Normal form of a product of elements."""
        out = word_element(ONE)
        for f in factors:
            out = self.normal_form(concat(out, f))
        return out

    def is_irreducible(self, word: Sequence[Gen]) -> bool:
        word = tuple(word)
        return not any(_contains(word, l) for l in self.rules)

    # -- completion ----------------------------------------------------------------
    def complete(self, max_degree: int) -> "RewriteSystem":
        """Resolve overlap ambiguities up to ``max_degree`` until nothing new appears."""
        done: set = set()
        while True:
            added = False
            for r1, r2, k in self._overlaps(max_degree):
                tag = (id(r1), id(r2), k)
                if tag in done:
                    continue
                done.add(tag)
                if self.rules.get(r1.lhs) is not r1 or self.rules.get(r2.lhs) is not r2:
                    continue
                overlap = r1.lhs + r2.lhs[k:]
                left = concat(r1.rhs, word_element(r2.lhs[k:]))
                right = concat(word_element(r1.lhs[:len(r1.lhs) - k]), r2.rhs)
                d = self.normal_form(left, strict=False) - self.normal_form(right, strict=False)
                if any(self.blocked_in(w) for w in d.keys()):
                    # still a true relation, but it may be incomplete
                    self.partial_ambiguities += 1
                if not d:
                    continue
                for rule in self._absorb([(d, f"overlap {word_str(overlap)}")]):
                    self.log.append(LogEntry(rule.lhs, rule.rhs, overlap, r1.lhs, r2.lhs))
                added = True
                break
            if not added:
                break
        self.interreduce()
        self.completed_to = max_degree if self.completed_to is None else max(self.completed_to, max_degree)
        return self

    def _overlaps(self, max_degree: int):
        by_first: dict[Gen, list[Rule]] = {}
        for r in self.rules.values():
            by_first.setdefault(r.lhs[0], []).append(r)
        rules = sorted(self.rules.values(), key=lambda r: self.key(r.lhs))
        for r1 in rules:
            for k in range(1, len(r1.lhs)):
                tail = r1.lhs[len(r1.lhs) - k:]
                for r2 in by_first.get(tail[0], ()):
                    if len(r2.lhs) <= k or r2.lhs[:k] != tail:
                        continue
                    if self.degree(r1.lhs + r2.lhs[k:]) > max_degree:
                        continue
                    yield r1, r2, k

    # -- enumeration -----------------------------------------------------------------
    def words(self, n: int, irreducible: bool = False) -> Iterable[tuple]:
        """All words of weighted degree ``n``; with ``irreducible`` only normal ones."""
        lengths = self._lhs_lengths

        def grow(prefix: tuple, left: int):
            if left == 0:
                yield prefix
                return
            for g in self.letters:
                d = self.degrees[g]
                if d > left:
                    continue
                w = prefix + (g,)
                if irreducible and any(k <= len(w) and w[len(w) - k:] in self.rules for k in lengths):
                    continue
                yield from grow(w, left - d)
        yield from grow(ONE, n)

    def cell_counts(self, n: int) -> tuple[Counter, set]:
        """Irreducible-word counts per weight at degree ``n``, and the weights
        whose counts cannot be trusted because one of their irreducible words
        contains a blocked word (a relation outside the bounds would reduce it).
        """
        counts: Counter = Counter()
        tainted = set()
        for w in self.words(n, irreducible=True):
            wt = self.weight(w)
            counts[wt] += 1
            if wt not in tainted and self.blocked_in(w) is not None:
                tainted.add(wt)
        return counts, tainted

    # -- dumps -----------------------------------------------------------------------
    def dump(self) -> str:
        """One rule per line, ``LHS -> c1 W1 + c2 W2``, sorted by lhs."""
        lines = []
        for lhs in sorted(self.rules, key=self.key):
            lines.append(f"{word_str(lhs)} -> {self.fmt(self.rules[lhs].rhs)}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.dump()


def _contains(word: tuple, sub: tuple) -> bool:
    n, k = len(word), len(sub)
    return any(word[i:i + k] == sub for i in range(n - k + 1))


# ---------------------------------------------------------------------------
# builders
# ---------------------------------------------------------------------------

def _letters(spec: AlgebraSpec) -> tuple[list[Gen], dict[Gen, Gen]]:
    """Letters for ``spec``: even generators first, then odd, each in declaration order."""
    gens = [g for g in spec.gens if g.parity == 0] + [g for g in spec.gens if g.parity == 1]
    letter_of = {g: spec.letter(g) for g in gens}
    return [letter_of[g] for g in gens], letter_of


def _lift(rs: RewriteSystem, e: Element) -> Element:
    """An algebra element as a combination of one-letter words."""
    return Element._raw({(rs.letter_of[g],): c for g, c in e.items()})


def build_env_antialgebra(spec: AlgebraSpec) -> RewriteSystem:
    """``U(a)``: tensor algebra modulo the defining relations of an antialgebra.

    Relations ``x y = xy``, ``a x + x a = 2 ax`` and ``a b - b a = 2 ab``
    (``x, y`` even, ``a, b`` odd).  On a windowed family, relations that
    need a generator outside the window are left out and their leading
    words are blocked.
    """
    if spec.style != PRODUCT:
        raise DomainError("build_env_antialgebra needs a product-style spec")
    letters, letter_of = _letters(spec)
    rs = RewriteSystem(f"U({spec.name})", letters, window=spec.window, source=spec, letter_of=letter_of)
    L = letter_of
    ev, od = spec.evens, spec.odds
    pairs = ([(x, y) for x in ev for y in ev]
             + [(a, x) for a in od for x in ev]
             + [(b, a) for i, a in enumerate(od) for b in od[i:]])
    for g, h in pairs:
        if g.parity == 1 and h.parity == 1:
            top, low, sgn, scale = (L[g], L[h]), (L[h], L[g]), -1, 2
        elif g.parity == 1:
            top, low, sgn, scale = (L[g], L[h]), (L[h], L[g]), 1, 2
        else:
            top, low, sgn, scale = (L[g], L[h]), None, 0, 1
        lead = max([top] + ([low] if low else []), key=rs.key)
        try:
            prod = spec.mul(g, h)
        except WindowError:
            rs.block(lead)
            continue
        rel = word_element(top)
        if low is not None:
            rel = rel + word_element(low, sgn)
        rel = rel - _lift(rs, prod) * scale
        if rel:
            rs.add_relation(rel, f"defining {g}*{h}")
    return rs


def build_env_superalgebra(spec: AlgebraSpec, bracket_scale=None) -> RewriteSystem:
    """``U(g)`` for a Lie superalgebra: ``X Y - (-1)^{|X||Y|} Y X = k [X, Y]``.

    The scale ``k`` defaults to ``spec.meta["bracket_scale"]`` or 2.
    """
    if spec.style != BRACKET:
        raise DomainError("build_env_superalgebra needs a bracket-style spec")
    k = scalar(bracket_scale if bracket_scale is not None else spec.meta.get("bracket_scale", 2))
    letters, letter_of = _letters(spec)
    rs = RewriteSystem(f"U({spec.name})", letters, window=spec.window, source=spec,
                       letter_of=letter_of, bracket_scale=k)
    gens = [g for g in spec.gens if g.parity == 0] + [g for g in spec.gens if g.parity == 1]
    for i, x in enumerate(gens):
        for y in gens[i:]:
            if x == y and x.parity == 0:
                continue
            X, Y = letter_of[x], letter_of[y]
            lead = max([(X, Y), (Y, X)], key=rs.key)
            try:
                br = spec.mul(x, y)
            except WindowError:
                rs.block(lead)
                continue
            rel = (word_element((X, Y)) - word_element((Y, X), sign(x.parity * y.parity))
                   - _lift(rs, br) * k)
            if rel:
                rs.add_relation(rel, f"bracket [{x},{y}]")
    return rs


def build_k1_quotient(window: WeightWindow | str) -> RewriteSystem:
    """``U(K1)`` with extra letters ``E_n`` and the relations that cut it down to ``U(AK1)``.

    Letters: ``E_n`` (degree 1), ``X_n`` (degree 2, it stands for a
    product of two odd letters) and ``A_i``.  Relations: those of ``U(K1)``
    with scale 2, ``A_i A_j - A_j A_i = (j - i) E_{i+j}`` and
    ``E_n E_m = E_{n+m}``.
    """
    if isinstance(window, str):
        window = WeightWindow.parse(window)
    k1 = catalog("K1", window)
    E = {n: Gen.make("E", 0, n, index=n) for n in window.integers()}
    X = {g.index: k1.letter(g) for g in k1.evens}
    A = {g.index: k1.letter(g) for g in k1.odds}
    letters = list(E.values()) + list(X.values()) + list(A.values())
    letter_of = {g: k1.letter(g) for g in k1.gens}
    rs = RewriteSystem("U(K1)/I", letters, degrees={x: 2 for x in X.values()}, window=window,
                       source=k1, letter_of=letter_of, bracket_scale=Fraction(2))
    base = build_env_superalgebra(k1, 2)
    for r in base.rules.values():
        rs.add_relation(word_element(r.lhs) - r.rhs, r.origin)
    for lhs in base.blocked:
        rs.block(lhs)
    odds = sorted(A)
    for idx, i in enumerate(odds):
        for j in odds[idx + 1:]:
            lead = max([(A[i], A[j]), (A[j], A[i])], key=rs.key)
            if i + j not in E:
                rs.block(lead)
                continue
            rs.add_relation(word_element((A[i], A[j])) - word_element((A[j], A[i]))
                            - word_element((E[i + j],), j - i), f"quotient A_{i} A_{j}")
    for n in E:
        for m in E:
            if n + m not in E:
                rs.block((E[n], E[m]))
                continue
            rs.add_relation(word_element((E[n], E[m])) - word_element((E[n + m],)), "quotient E E")
    return rs


# ---------------------------------------------------------------------------
# graded dimensions, the quadratic model and PBW
# ---------------------------------------------------------------------------

def graded_dimension(rs: RewriteSystem, n: int, w=None) -> int:
    """Number of irreducible words of degree ``n`` (and weight ``w``)."""
    if w is None:
        return sum(1 for _ in rs.words(n, irreducible=True))
    w = Fraction(w)
    return sum(1 for word in rs.words(n, irreducible=True) if rs.weight(word) == w)


def _g_letters(spec: AlgebraSpec, window: WeightWindow | None):
    window = window or spec.window
    keep = [g for g in spec.gens if window is None or g.weight in window]
    return [g for g in keep if g.parity == 0], [g for g in keep if g.parity == 1]


def g_model_counts(spec: AlgebraSpec, n: int, window: WeightWindow | None = None) -> Counter:
    """Weight distribution of the degree ``n`` part of ``G(a) = (K + a0) (x) S(a1)``."""
    ev, od = _g_letters(spec, window)
    counts: Counter = Counter()
    for S in itertools.combinations_with_replacement(od, n):
        counts[Fraction(sum(g.weight2 for g in S), 2)] += 1
    if n >= 1:
        for S in itertools.combinations_with_replacement(od, n - 1):
            w2 = sum(g.weight2 for g in S)
            for x in ev:
                counts[Fraction(w2 + x.weight2, 2)] += 1
    return counts


def g_model_dimension(spec: AlgebraSpec, n: int, w=None, window: WeightWindow | None = None) -> int:
    counts = g_model_counts(spec, n, window)
    if w is None:
        return sum(counts.values())
    return counts.get(Fraction(w), 0)


@dataclass(frozen=True)
class GMonomial:
    """``x a_1 ... a_p`` in ``G(a)``; ``even`` is None for a pure odd monomial."""
    even: Gen | None
    odds: tuple[Gen, ...]

    def __str__(self) -> str:
        parts = ([str(self.even)] if self.even else []) + [str(g) for g in self.odds]
        return " ".join(parts) if parts else "1"


def g_model_product(spec: AlgebraSpec, u: GMonomial, v: GMonomial) -> Element:
    """Product of two basis monomials of ``G(a)``."""
    order = {g: i for i, g in enumerate(spec.gens)}
    if u.even is not None and v.even is not None:
        return Element()
    odds = tuple(sorted(u.odds + v.odds, key=order.__getitem__))
    if v.even is not None:
        return Element.basis(GMonomial(v.even, odds), sign(len(u.odds)))
    return Element.basis(GMonomial(u.even, odds))


@dataclass
class PBWReport:
    holds: bool
    rows: list[tuple[int, Fraction, int, int]]      # (n, w, dim Gr, dim G) on trusted cells
    mismatches: list[tuple[int, Fraction, int, int]]
    untrusted: list[tuple[int, Fraction]]
    rules_added: int
    partial_ambiguities: int

    @property
    def first_mismatch(self):
        return self.mismatches[0] if self.mismatches else None

    def totals(self) -> dict[int, tuple[int, int]]:
        out: dict[int, tuple[int, int]] = {}
        for n, _, gr, g in self.rows:
            a, b = out.get(n, (0, 0))
            out[n] = (a + gr, b + g)
        return out


def compare_cells(rs: RewriteSystem, expected: Callable[[int], Counter], max_degree: int):
    rows, bad, untrusted = [], [], []
    for n in range(max_degree + 1):
        counts, tainted = rs.cell_counts(n)
        exp = expected(n)
        for w in sorted(set(counts) | set(exp) | tainted):
            if w in tainted:
                untrusted.append((n, w))
                continue
            row = (n, w, counts.get(w, 0), exp.get(w, 0))
            rows.append(row)
            if row[2] != row[3]:
                bad.append(row)
    return rows, bad, untrusted


def pbw_check(spec: AlgebraSpec, max_degree: int, window: WeightWindow | str | None = None,
              slack: int = 2) -> PBWReport:
    """Complete ``U(spec)`` to ``max_degree + slack`` and compare with ``G(spec)`` cell by cell.

    Overlaps one degree above a cell can still change its count, hence
    the slack.
    """
    if isinstance(window, str):
        window = WeightWindow.parse(window)
    if window is not None and spec.family and spec.window != window:
        spec = catalog(spec.name, window)
    rs = build_env_antialgebra(spec)
    rs.complete(max_degree + slack)
    rows, bad, untrusted = compare_cells(rs, lambda n: g_model_counts(spec, n, window), max_degree)
    return PBWReport(not bad, rows, bad, untrusted, len(rs.log), rs.partial_ambiguities)


# ---------------------------------------------------------------------------
# Braverman-Gaitsgory conditions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BGInstance:
    kind: str
    args: tuple
    image: Element                 # (alpha (x) Id - Id (x) alpha)(u), over pairs
    in_span: bool
    alpha_image: Element | None    # alpha of the image when it lies in Span R and is known
    alpha_known: bool = True       # False when the reduction used a row whose alpha leaves the window

    @property
    def ok(self) -> bool:
        return self.in_span and not self.alpha_image

    def __str__(self) -> str:
        args = ", ".join(map(str, self.args))
        img = self.image.format(show=lambda k: f"{k[0]}(x){k[1]}")
        return f"{self.kind}({args}): image {img}"


@dataclass
class BGReport:
    instances: dict[str, list[BGInstance]]
    skipped: dict[str, int]

    def verdict(self, kind: str) -> tuple[bool, bool]:
        """(condition (i) holds, condition (ii) holds) over all instances of ``kind``."""
        inst = self.instances.get(kind, [])
        return (all(i.in_span for i in inst), all(not i.alpha_image for i in inst if i.in_span))

    def undetermined(self, kind: str) -> int:
        """Instances inside Span R whose alpha could not be evaluated in the window."""
        return sum(1 for i in self.instances.get(kind, []) if i.in_span and not i.alpha_known)

    def first_violation(self, kind: str, condition: int = 1) -> BGInstance | None:
        for i in self.instances.get(kind, []):
            if condition == 1 and not i.in_span:
                return i
            if condition == 2 and i.in_span and i.alpha_image:
                return i
        return None

    @property
    def ok(self) -> bool:
        return all(all(self.verdict(k)) for k in self.instances)


def _pair(g: Gen, h: Gen, c=1) -> Element:
    return Element.basis((g, h), c)


def _t(u: Element, g: Gen, left: bool) -> Element:
    """``u (x) g`` (``left``) or ``g (x) u`` over pairs."""
    if left:
        return Element._raw({(k, g): c for k, c in u.items()})
    return Element._raw({(g, k): c for k, c in u.items()})


def bg_check(spec: AlgebraSpec, window: WeightWindow | str | None = None) -> BGReport:
    """Evaluate ``(alpha (x) Id - Id (x) alpha)`` on every instance of ``u0``-``u3``.

    Each instance is written both as an element of ``R (x) a`` and of
    ``a (x) R``; the two are checked to agree as tensors before ``alpha``
    is applied.  Condition (i) is membership of the image in ``Span R``,
    condition (ii) is ``alpha`` of the image vanishing.
    """
    if isinstance(window, str):
        window = WeightWindow.parse(window)
    if spec.style != PRODUCT:
        raise DomainError("bg_check needs a product-style spec")
    window = window or spec.window
    gens = [g for g in spec.gens if window is None or g.weight in window]
    ev = [g for g in gens if g.parity == 0]
    od = [g for g in gens if g.parity == 1]
    m = spec.mul

    def mul(g, h):
        out = m(g, h)
        for k in out.keys():
            if window is not None and k.weight not in window:
                raise WindowError(k.weight)
        return out

    # Span R with alpha attached: rows over pairs followed by tagged alpha values
    rows = []
    for x in ev:
        for y in ev:
            rows.append((_pair(x, y), _alpha_or_none(mul, x, y, 1)))
    for a in od:
        for x in ev:
            rows.append((_pair(a, x) + _pair(x, a), _alpha_or_none(mul, a, x, 2)))
    for i, a in enumerate(od):
        for b in od[i + 1:]:
            rows.append((_pair(a, b) - _pair(b, a), _alpha_or_none(mul, a, b, 2)))
    # a row whose alpha leaves the window still belongs to R; it gets its own
    # unknown tag so membership stays decidable while alpha is marked unknown
    pairs = [(g, h) for g in gens for h in gens]
    tags = [("alpha", g) for g in gens]
    unknown = [("unknown", i) for i, (_, al) in enumerate(rows) if al is None]
    ambient = pairs + tags + unknown
    aug = []
    for i, (r, al) in enumerate(rows):
        if al is None:
            aug.append(r + Element.basis(("unknown", i)))
        else:
            aug.append(r + Element._raw({("alpha", g): c for g, c in al.items()}))
    basis, _ = row_reduce(aug, ambient)

    instances: dict[str, list[BGInstance]] = {k: [] for k in ("u0", "u1", "u2", "u3")}
    skipped = {k: 0 for k in instances}

    def record(kind, args, form1, form2):
        # form1: list of (coef, r_tensor, alpha(r), g) meaning coef * r (x) g
        # form2: list of (coef, g, r_tensor, alpha(r)) meaning coef * g (x) r
        try:
            t1 = Element()
            t2 = Element()
            img = Element()
            for c, r, al, g in form1:
                t1 = t1 + Element._raw({k + (g,): v * c for k, v in r.items()})
                img = img + _t(al(), g, True) * c
            for c, g, r, al in form2:
                t2 = t2 + Element._raw({(g,) + k: v * c for k, v in r.items()})
                img = img - _t(al(), g, False) * c
        except WindowError:
            skipped[kind] += 1
            return
        if t1 != t2:
            raise AssertionError(f"{kind}{args}: the two tensor forms disagree")
        for k in img.keys():
            if any(window is not None and h.weight not in window for h in k):
                skipped[kind] += 1
                return
        res = residue(basis, ambient, img)
        outside = Element._raw({k: c for k, c in res.items() if k[0] not in ("alpha", "unknown")})
        if outside:
            instances[kind].append(BGInstance(kind, args, img, False, None))
            return
        if any(k[0] == "unknown" for k in res.keys()):
            instances[kind].append(BGInstance(kind, args, img, True, None, False))
            return
        alpha = Element._raw({k[1]: -c for k, c in res.items()})
        instances[kind].append(BGInstance(kind, args, img, True, alpha))

    P = _pair

    def R_ev(x, y):
        return P(x, y), (lambda: mul(x, y))

    def R_mix(a, x):
        return P(a, x) + P(x, a), (lambda: mul(a, x) * 2)

    def R_odd(a, b):
        return P(a, b) - P(b, a), (lambda: mul(a, b) * 2)

    for x, y, z in itertools.product(ev, repeat=3):
        r1, a1 = R_ev(x, y)
        r2, a2 = R_ev(y, z)
        record("u0", (x, y, z), [(1, r1, a1, z)], [(1, x, r2, a2)])
    for a, x, y in itertools.product(od, ev, ev):
        ra, aa = R_mix(a, x)
        rb, ab = R_ev(x, y)
        rc, ac = R_ev(x, y)
        rd, ad = R_mix(a, y)
        record("u1", (a, x, y), [(1, ra, aa, y), (1, rb, ab, a)], [(1, a, rc, ac), (1, x, rd, ad)])
    for x, a, b in itertools.product(ev, od, od):
        f1 = [(1, *R_mix(a, x), b), (-1, *R_mix(b, x), a), (1, *R_odd(a, b), x)]
        f2 = [(1, x, *R_odd(a, b)), (-1, b, *R_mix(a, x)), (1, a, *R_mix(b, x))]
        record("u2", (x, a, b), f1, f2)
    for a, b, c in itertools.product(od, repeat=3):
        f1 = [(1, *R_odd(a, b), c), (1, *R_odd(b, c), a), (1, *R_odd(c, a), b)]
        f2 = [(1, a, *R_odd(b, c)), (1, b, *R_odd(c, a)), (1, c, *R_odd(a, b))]
        record("u3", (a, b, c), f1, f2)
    return BGReport(instances, skipped)


def _alpha_or_none(mul, g, h, scale):
    try:
        return mul(g, h) * scale
    except WindowError:
        return None


# ---------------------------------------------------------------------------
# the quotient map and operations inside U
# ---------------------------------------------------------------------------

def embed(rs: RewriteSystem, e: Element) -> Element:
    """Image of an algebra element under the canonical map into ``rs``."""
    out: dict = {}
    for g, c in e.items():
        L = rs.letter_of.get(g)
        if L is None:
            raise WindowError(g.weight, f"{g} has no letter in {rs.name}")
        out[(L,)] = out.get((L,), 0) + c
    return Element._raw({k: v for k, v in out.items() if v})


def pi_pair(dst: RewriteSystem, u: Element, v: Element) -> Element:
    """``pi(u ⊙ v) = 1/2 (u v + v u)`` in ``dst = U(a)``, normal-formed."""
    U, V = embed(dst, u), embed(dst, v)
    return dst.normal_form((concat(U, V) + concat(V, U)) * Fraction(1, 2))


def pi_images(src: RewriteSystem, dst: RewriteSystem) -> dict[Gen, Element]:
    """Letter images of ``pi: U(g_a) -> U(a)`` for ``src`` built from an adjoint.

    With bracket scale ``k`` in ``src`` the images are scaled by ``k/2``.
    """
    adj = src.source.meta.get("adjoint") if src.source is not None else None
    if adj is None:
        raise DomainError(f"{src.name} is not built from an adjoint superalgebra")
    t = (src.bracket_scale or 2) / Fraction(2)
    out: dict[Gen, Element] = {}
    for g, L in src.letter_of.items():
        if g.parity == 1:
            out[L] = embed(dst, Element.basis(g)) * t
        else:
            a, b = adj.rep[g]
            out[L] = pi_pair(dst, Element.basis(a), Element.basis(b)) * t
    return out


def osp_pi_images(osp_rs: RewriteSystem, dst: RewriteSystem) -> dict[Gen, Element]:
    """``U(osp(1|2)) -> U(K3)`` through ``E=2a⊙a, F=-2b⊙b, H=-4a⊙b, A=2a, B=2b``."""
    t = (osp_rs.bracket_scale or 2) / Fraction(2)
    k3 = dst.source
    a, b = Element.basis(k3.gen("a")), Element.basis(k3.gen("b"))
    L = {str(g): g for g in osp_rs.letters}
    return {
        L["E"]: pi_pair(dst, a, a) * (2 * t),
        L["F"]: pi_pair(dst, b, b) * (-2 * t),
        L["H"]: pi_pair(dst, a, b) * (-4 * t),
        L["A"]: embed(dst, a) * (2 * t),
        L["B"]: embed(dst, b) * (2 * t),
    }


def pi_map(src: RewriteSystem, dst: RewriteSystem, e: Element,
           images: Mapping[Gen, Element] | None = None) -> Element:
    """Letterwise substitution of ``images`` into ``e``, then normal form in ``dst``."""
    if images is None:
        images = pi_images(src, dst)
    one = word_element(ONE)
    acc = Element()
    for w, c in e.items():
        cur = one
        for L in w:
            if L not in images:
                raise DomainError(f"no image for letter {L}")
            cur = dst.normal_form(concat(cur, images[L]))
        acc = acc + cur * c
    return dst.normal_form(acc)


def _parity(e: Element) -> int:
    ps = {sum(g.parity for g in w) % 2 for w in e.keys()}
    if len(ps) > 1:
        raise DomainError(f"{e.format(show=word_str)} is not parity-homogeneous")
    return ps.pop() if ps else 0


def jordan_superproduct(rs: RewriteSystem, X: Element, Y: Element) -> Element:
    """``[X, Y]_+ = 1/2 (X Y + (-1)^{|X||Y|} Y X)``, normal-formed."""
    s = sign(_parity(X) * _parity(Y))
    return rs.normal_form((concat(X, Y) + concat(Y, X) * s) * Fraction(1, 2))


def twisted_adjoint(rs: RewriteSystem, X: Element, Y: Element) -> Element:
    """``X Y - (-1)^{|X|(|Y|+1)} Y X``, normal-formed."""
    s = sign(_parity(X) * (_parity(Y) + 1))
    return rs.normal_form(concat(X, Y) - concat(Y, X) * s)


def supercommutator(rs: RewriteSystem, X: Element, Y: Element) -> Element:
    s = sign(_parity(X) * _parity(Y))
    return rs.normal_form(concat(X, Y) - concat(Y, X) * s)


def casimir(osp_rs: RewriteSystem) -> Element:
    """``C = EF + FE + 1/2 H^2 + 1/2 (AB - BA)``."""
    return osp_rs.element("E F + F E + 1/2 H H + 1/2 A B - 1/2 B A")


def ghost_casimir(osp_rs: RewriteSystem) -> Element:
    """``Gamma = AB - BA - 1/2``."""
    return osp_rs.element("A B - B A - 1/2")


def kerpi_check(spec: AlgebraSpec, adj, window=None, degree: int = 5):
    """``pi(X Y - Y X) = 2 pi([X, Y])`` for all pairs of even letters of ``U(g_a)``.

    ``U(spec)`` is completed to ``degree`` first so that normal forms are
    canonical.  Returns ``(checked, failures, skipped)``.
    """
    dst = build_env_antialgebra(spec)
    dst.complete(degree)
    src = build_env_superalgebra(adj.spec)
    ims = pi_images(src, dst)
    inv = {L: g for g, L in src.letter_of.items()}
    ev = [L for L in src.letters if L.parity == 0]
    checked, failures, skipped = 0, [], 0
    for X in ev:
        for Y in ev:
            try:
                lhs = pi_map(src, dst, word_element((X, Y)) - word_element((Y, X)), ims)
                rhs = pi_map(src, dst, embed(src, adj.spec.mul(inv[X], inv[Y])) * 2, ims)
            except WindowError:
                skipped += 1
                continue
            checked += 1
            if lhs != rhs:
                failures.append((X, Y, lhs, rhs))
    return checked, failures, skipped


def anticommutator_splits(rs: RewriteSystem, spec: AlgebraSpec):
    """Differences ``A_iA_j + A_jA_i - A_kA_l - A_lA_k`` with ``i + j = k + l``.

    Yields ``(i, j, k, l, normal form)``; reductions reaching a blocked
    word are left out.
    """
    A = {g.index: rs.letter_of[g] for g in spec.odds}
    idx = sorted(A)
    for i, j in itertools.combinations_with_replacement(idx, 2):
        for k, l in itertools.combinations_with_replacement(idx, 2):
            if i + j != k + l or (i, j) >= (k, l):
                continue
            e = (word_element((A[i], A[j])) + word_element((A[j], A[i]))
                 - word_element((A[k], A[l])) - word_element((A[l], A[k])))
            try:
                yield i, j, k, l, rs.normal_form(e)
            except BoundError:
                continue
