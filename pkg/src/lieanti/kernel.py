"""Exact scalars, graded generators, sparse linear combinations and row reduction.

Everything here is immutable and pure.  Scalars are :class:`fractions.Fraction`;
there is no floating point anywhere in the package.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

Scalar = Fraction


class DomainError(ValueError):
    """An input refers to something outside the declared domain."""


class WindowError(ArithmeticError):
    """A result would leave the weight window (closed-window contract)."""

    def __init__(self, weight: Fraction, message: str | None = None):
        self.weight = Fraction(weight)
        super().__init__(message or f"weight {fmt_scalar(self.weight)} is outside the window")


def scalar(value) -> Fraction:
    """Coerce ints, strings like ``"-3/4"`` and Fractions to a Fraction.

    Floats are rejected on purpose.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    return Fraction(value)


def fmt_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def sign(p: int) -> int:
    """(-1)**p for an integer exponent."""
    return -1 if p % 2 else 1


@dataclass(frozen=True)
class Gen:
    """A named basis vector with a parity and a (half-integer) weight.

    Identity is ``(name, index)``; parity and weight are attributes of that
    identity and do not take part in equality.  The weight is stored doubled
    so that it stays an integer.
    """

    name: str
    index: Fraction | None = None
    parity: int = field(default=0, compare=False)
    weight2: int = field(default=0, compare=False)
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.name, self.index)))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, Gen):
            return NotImplemented
        return self._hash == other._hash and self.name == other.name and self.index == other.index

    @classmethod
    def make(cls, name: str, parity: int, weight, index=None) -> "Gen":
        w = scalar(weight)
        if (2 * w).denominator != 1:
            raise DomainError(f"weight {w} of {name} is not a multiple of 1/2")
        idx = None if index is None else scalar(index)
        return cls(name, idx, parity % 2, int(2 * w))

    @property
    def weight(self) -> Fraction:
        return Fraction(self.weight2, 2)

    @property
    def key(self) -> tuple:
        return (self.name, self.index if self.index is not None else Fraction(0), self.index is None)

    def __str__(self) -> str:
        if self.index is None:
            return self.name
        return f"{self.name}_{fmt_scalar(self.index)}"

    def __repr__(self) -> str:
        return f"Gen({self})"


Word = tuple  # tuple[Gen, ...]


def word_str(word: Sequence[Gen]) -> str:
    return " ".join(str(g) for g in word) if word else "1"


def default_key(k) -> tuple:
    """Deterministic ordering of Element keys (generators or words)."""
    if isinstance(k, Gen):
        return (0, k.key)
    if isinstance(k, tuple):
        return (1, len(k), tuple(g.key for g in k))
    return (2, str(k))


class Element:
    """A finite linear combination ``sum c_k * k`` with exact coefficients.

    Keys are generators or words (tuples of generators).  Zero coefficients
    are never stored, so the empty element is zero.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, object] | Iterable[tuple[Hashable, object]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            c = scalar(c)
            if c:
                acc[k] = acc.get(k, 0) + c
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def basis(cls, key, coeff=1) -> "Element":
        c = scalar(coeff)
        return cls._raw({key: c} if c else {})

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = cls.__new__(cls)
        e._terms = terms
        e._hash = None
        return e

    # -- mapping-ish interface -------------------------------------------
    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __contains__(self, key) -> bool:
        return key in self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_items(self, key: Callable = default_key, reverse: bool = False):
        return sorted(self._terms.items(), key=lambda kv: key(kv[0]), reverse=reverse)

    # -- vector space operations -----------------------------------------
    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms.items():
            v = acc.get(k, 0) + c
            if v:
                acc[k] = v
            else:
                acc.pop(k, None)
        return Element._raw(acc)

    def __neg__(self) -> "Element":
        return Element._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, c) -> "Element":
        if isinstance(c, Element):
            return NotImplemented
        c = scalar(c)
        if not c:
            return Element()
        return Element._raw({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Element":
        return self * (1 / scalar(c))

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def map(self, f: Callable[[Hashable], "Element"]) -> "Element":
        """Linear extension of ``f`` from keys to elements."""
        acc: dict = {}
        for k, c in self._terms.items():
            for k2, c2 in f(k).items():
                v = acc.get(k2, 0) + c * c2
                if v:
                    acc[k2] = v
                else:
                    acc.pop(k2, None)
        return Element._raw(acc)

    # -- gradings ---------------------------------------------------------
    def parities(self) -> set[int]:
        return {_parity_of(k) for k in self._terms}

    def weights(self) -> set[Fraction]:
        return {_weight_of(k) for k in self._terms}

    def parity(self) -> int:
        """Parity of a homogeneous nonzero element (0 for zero)."""
        ps = self.parities()
        if len(ps) > 1:
            raise DomainError(f"element {self} is not parity-homogeneous")
        return ps.pop() if ps else 0

    def is_homogeneous(self) -> bool:
        return len(self.parities()) <= 1 and len(self.weights()) <= 1

    def format(self, key: Callable = default_key, reverse: bool = False,
               show: Callable[[Hashable], str] | None = None) -> str:
        if not self._terms:
            return "0"
        show = show or _show_key
        out = []
        for i, (k, c) in enumerate(self.sorted_items(key, reverse)):
            label = show(k)
            neg = c < 0
            mag = -c if neg else c
            if label == "1":
                body = fmt_scalar(mag)
            elif mag == 1:
                body = label
            else:
                body = f"{fmt_scalar(mag)} {label}"
            if i == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(out)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Element({self})"


def _show_key(k) -> str:
    if isinstance(k, tuple):
        return word_str(k)
    return str(k)


def _parity_of(k) -> int:
    if isinstance(k, Gen):
        return k.parity
    if isinstance(k, tuple):
        return sum(g.parity for g in k) % 2
    raise DomainError(f"no parity for key {k!r}")


def _weight_of(k) -> Fraction:
    if isinstance(k, Gen):
        return k.weight
    if isinstance(k, tuple):
        return Fraction(sum(g.weight2 for g in k), 2)
    raise DomainError(f"no weight for key {k!r}")


parity_of = _parity_of
weight_of = _weight_of


def linear_combine(pairs: Iterable[tuple[object, Hashable]]) -> Element:
    """Build an element from ``(coefficient, key)`` pairs, merging like terms."""
    return Element((k, c) for c, k in pairs)


# ---------------------------------------------------------------------------
# Row reduction
# ---------------------------------------------------------------------------

def row_reduce(rows: Iterable[Element], ambient: Sequence[Hashable]) -> tuple[list[Element], int]:
    """Reduced row echelon basis of the span of ``rows``.

    ``ambient`` fixes the column order.  Each returned row has leading
    coefficient 1 at its pivot column, and pivot columns are cleared in
    every other row, so the result is unique for a given ambient order.
    """
    col = {k: i for i, k in enumerate(ambient)}
    if len(col) != len(ambient):
        raise DomainError("ambient basis has repeated entries")
    pivots: dict[int, dict] = {}
    for r in rows:
        for k in r.keys():
            if k not in col:
                raise DomainError(f"{_show_key(k)} is not in the ambient basis")
        v = dict(r.items())
        _reduce_dict(v, pivots, col)
        if not v:
            continue
        p = min(col[k] for k in v)
        lead = v[ambient[p]]
        v = {k: c / lead for k, c in v.items()}
        pk = ambient[p]
        for row in pivots.values():
            c = row.get(pk)
            if c:
                for k, c2 in v.items():
                    x = row.get(k, 0) - c * c2
                    if x:
                        row[k] = x
                    else:
                        row.pop(k, None)
        pivots[p] = v
    basis = [Element._raw(dict(pivots[p])) for p in sorted(pivots)]
    return basis, len(basis)


def _reduce_dict(v: dict, pivots: dict[int, dict], col: Mapping) -> None:
    # pivot rows are fully reduced, so one pass in pivot order suffices
    for p in sorted(pivots):
        row = pivots[p]
        pk = next(k for k in row if col[k] == p)
        c = v.get(pk)
        if c:
            for k, c2 in row.items():
                x = v.get(k, 0) - c * c2
                if x:
                    v[k] = x
                else:
                    v.pop(k, None)


def pivot_of(row: Element, ambient: Sequence[Hashable]) -> Hashable:
    col = {k: i for i, k in enumerate(ambient)}
    return ambient[min(col[k] for k in row.keys())]


def residue(basis: Sequence[Element], ambient: Sequence[Hashable], v: Element) -> Element:
    """Reduce ``v`` modulo the span of a reduced echelon ``basis``.

    The result is supported on non-pivot columns only; it is zero exactly
    when ``v`` lies in the span.
    """
    col = {k: i for i, k in enumerate(ambient)}
    for k in v.keys():
        if k not in col:
            raise DomainError(f"{_show_key(k)} is not in the ambient basis")
    out = dict(v.items())
    for row in basis:
        pk = pivot_of(row, ambient)
        c = out.get(pk)
        if c:
            for k, c2 in row.items():
                x = out.get(k, 0) - c * c2
                if x:
                    out[k] = x
                else:
                    out.pop(k, None)
    return Element._raw(out)


def in_span(rows: Iterable[Element], ambient: Sequence[Hashable], v: Element) -> bool:
    basis, _ = row_reduce(rows, ambient)
    return not residue(basis, ambient, v)
