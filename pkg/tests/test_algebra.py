import warnings
from fractions import Fraction

import pytest

from lieanti.algebra import (HalfUnitWarning, ParseError, WeightWindow, acts_as_half_unit, adjoin_unit,
                             catalog, dump_spec, from_table, load_spec, product, specs_equal,
                             with_entries)
from lieanti.kernel import DomainError, Element, Gen, WindowError

HALF = Fraction(1, 2)


def el(g, c=1):
    return Element.basis(g, c)


def test_k3_table():
    k3 = catalog("K3")
    eps, a, b = k3.gen("eps"), k3.gen("a"), k3.gen("b")
    assert k3.mul(a, b) == el(eps, HALF)
    assert k3.mul(b, a) == el(eps, -HALF)
    assert k3.mul(eps, a) == el(a, HALF)
    assert k3.mul(eps, eps) == el(eps)
    assert k3.mul(a, a) == 0


def test_ak1_product_and_window():
    ak1 = catalog("AK1", "-2..2")
    a = ak1.gen("a", HALF)
    b = ak1.gen("a", Fraction(3, 2))
    # (j - i) convention
    assert ak1.mul(a, b) == el(ak1.gen("eps", 2), HALF)
    with pytest.raises(WindowError):
        ak1.mul(b, ak1.gen("eps", 2))
    with pytest.raises(WindowError):
        ak1.gen("a", Fraction(7, 2))


def test_product_checks_explicit_window():
    ak1 = catalog("AK1", "-3..3")
    x, y = ak1.gen("eps", 1), ak1.gen("eps", 2)
    assert product(ak1, x, y) == el(ak1.gen("eps", 3))
    with pytest.raises(WindowError):
        product(ak1, x, y, WeightWindow.parse("-2..2"))


def test_window_parse():
    w = WeightWindow.parse("-5/2..5/2")
    assert w.integers() == [-2, -1, 0, 1, 2]
    assert w.half_odds()[0] == Fraction(-5, 2)
    with pytest.raises(ValueError):
        WeightWindow.parse("[-3,3]")


def test_family_needs_window():
    with pytest.raises(DomainError):
        catalog("AK1")
    with pytest.raises(DomainError):
        catalog("nope")


def test_half_unit_detection():
    k3 = catalog("K3")
    assert acts_as_half_unit(k3, k3.gen("eps")) == (True, None)
    gk3 = catalog("GK3")
    ok, why = acts_as_half_unit(gk3, gk3.gen("eps"))
    assert not ok and why is not None


def test_adjoin_unit_warns_on_existing_half_unit():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        s = adjoin_unit(catalog("K3"))
    assert any(issubclass(w.category, HalfUnitWarning) for w in caught)
    assert acts_as_half_unit(s, s.gens[0])[0]


def test_adjoin_unit_to_zero_product():
    s = adjoin_unit(catalog("GK3"), name="u")
    assert acts_as_half_unit(s, s.gen("u"))[0]


def test_from_table_rejects_inhomogeneous_entries():
    x = Gen.make("x", 0, 0)
    a = Gen.make("a", 1, HALF)
    with pytest.raises(DomainError):
        from_table("bad", (x, a), {(x, a): el(x)})
    with pytest.raises(DomainError):
        from_table("bad", (x, a), {(a, a): el(x)})


def test_roundtrip_definition_documents():
    for name in ("K3", "osp12", "GK3"):
        spec = catalog(name)
        again = load_spec(dump_spec(spec))
        assert specs_equal(spec, again)
        assert dump_spec(again) == dump_spec(spec)


def test_load_spec_errors_carry_positions():
    with pytest.raises(ParseError) as info:
        load_spec("algebra X\neven x : weight 0\nx*y = x\n")
    assert info.value.line == 3
    with pytest.raises(ParseError):
        load_spec("even x : weight 0\n")
    with pytest.raises(ParseError):
        load_spec("algebra X\nodd a : weight 1/2\neven x : weight 0\na*a = 1/2 x\n")


def test_load_spec_rejects_symmetry_contradiction():
    text = "algebra X\nodd a : weight 0\nodd c : weight 0\neven x : weight 0\na*c = x\nc*a = x\n"
    with pytest.raises(ParseError):
        load_spec(text)


def test_with_entries_mutates_copy_only():
    k3 = catalog("K3")
    eps, a = k3.gen("eps"), k3.gen("a")
    bad = with_entries(k3, {(eps, a): el(a)})
    assert bad.mul(eps, a) == el(a) and bad.mul(a, eps) == el(a)
    assert k3.mul(eps, a) == el(a, HALF)


def test_letters():
    k3 = catalog("K3")
    assert [str(k3.letter(g)) for g in k3.gens] == ["E", "A", "B"]
    ak1 = catalog("AK1", "-1..1")
    assert str(ak1.letter(ak1.gen("eps", -1))) == "E_-1"
