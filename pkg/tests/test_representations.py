import itertools
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from lieanti.adjoint import build_adjoint
from lieanti.algebra import ParseError, catalog
from lieanti.enveloping import build_env_antialgebra, build_env_superalgebra, pi_images, pi_map, word_element
from lieanti.kernel import DomainError, Element, WindowError
from lieanti.representations import (D, D_X, D_XI, X, XI, DiffOperator, adjoint_factor,
                                     check_la_module, check_la_representation, check_lie_representation,
                                     density_antialgebra_check, density_rep, diffop_element, diffop_images,
                                     diffop_rep, diffop_word, dump_representation, extend_representation,
                                     irr_consistency, load_representation, secc_counterexample, v_ad,
                                     zero_representation)

HALF = Fraction(1, 2)
DATA = Path(__file__).parent / "data"


def test_d_on_generators():
    assert D.apply({(1, 0): 1}) == {(0, 1): 1}        # D(x) = xi
    assert D.apply({(0, 1): 1}) == {(0, 0): 1}        # D(xi) = 1
    DD = D @ D
    assert DD == D_X
    assert DD.apply({(1, 0): 1}) == {(0, 0): 1}
    assert DD.apply({(1, 1): 1}) == {(0, 1): 1}


def test_d_xi_anticommutes_with_xi():
    assert D_XI @ XI + XI @ D_XI == DiffOperator.identity()
    assert XI @ XI == 0


ops = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 1), st.integers(0, 3),
                         st.fractions(-3, 3, max_denominator=3)), max_size=3).map(
    lambda ts: DiffOperator({(p, q, m): c for p, q, m, c in ts}))


@given(ops, ops, ops)
def test_composition_is_associative(f, g, h):
    assert (f @ g) @ h == f @ (g @ h)


@given(ops, ops, st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 1)),
                                 st.fractions(-3, 3, max_denominator=2), max_size=3))
def test_composition_matches_application(f, g, poly):
    assert (f @ g).apply(poly) == f.apply(g.apply(poly))


def test_leading_order_of_pbw_words():
    images = diffop_images()
    k3 = catalog("K3")
    a, b = k3.gen("a"), k3.gen("b")
    for k, l in itertools.product(range(4), repeat=2):
        if k + l > 4:
            continue
        op = diffop_word(images, (a,) * k + (b,) * l)
        assert op.leading() == DiffOperator.mono(p=k, m=k + l, c=(-1) ** l)
        assert op.order() == Fraction(k + l, 2)


def test_diffop_rep_passes_and_overflows():
    k3 = catalog("K3")
    rep = diffop_rep(6, k3)
    assert check_la_representation(k3, rep).ok
    top = rep.carrier[-1]                      # xi x^6, sent to 6 x^7 by x D
    with pytest.raises(WindowError):
        rep.apply(k3.gen("a"), top)
    with pytest.raises(DomainError):
        diffop_rep(0)


def test_rewrite_rules_hold_as_operators():
    rs = build_env_antialgebra(catalog("K3"))
    images = diffop_images(rs.source)
    for lhs, rule in rs.rules.items():
        assert diffop_element(rs, images, word_element(lhs) - rule.rhs) == 0


def test_zero_representation_and_module():
    k3 = catalog("K3")
    z = zero_representation(k3, v_ad(k3).carrier)
    assert check_la_representation(k3, z).ok
    assert check_la_module(k3, z).ok
    ext = extend_representation(k3, z, build_adjoint(k3))
    assert ext.report.ok
    assert all(ext.rep.apply(g, v) == 0 for g in ext.rep.spec.gens for v in z.carrier)


def test_vad_module_and_flip():
    k3 = catalog("K3")
    assert check_la_module(k3, v_ad(k3)).ok
    bad = check_la_module(k3, v_ad(k3, b_on_u=Fraction(1, 4)))
    assert not bad.ok
    failing = [r for r in bad if not r.ok]
    assert failing[0].witness is not None and len(failing[0].witness.args) == 3


def test_vad_eigenvalues():
    k3 = catalog("K3")
    V = v_ad(k3)
    eps = k3.gen("eps")
    assert [V.apply(eps, v).coeff(v) for v in V.carrier] == [HALF, 1, HALF]


def test_vad_is_not_a_firc_representation():
    k3 = catalog("K3")
    r = check_la_representation(k3, v_ad(k3))["Firc"]
    assert r.status == "fail"


def test_irr_traces():
    ok = irr_consistency(1, 1)
    assert ok.consistent and "1/4 v" in str(ok)
    two = irr_consistency(2, 1)
    assert not two.consistent and "different" in two.trace[-1]
    assert not irr_consistency(1, 0).consistent
    with pytest.raises(DomainError):
        irr_consistency(1, 2)


def test_extensions():
    k3 = catalog("K3")
    adj = build_adjoint(k3)
    d = extend_representation(k3, diffop_rep(4, k3), adj, 2)
    assert d.well_defined.ok and d.report.ok
    v = extend_representation(k3, v_ad(k3), adj, 1)
    assert v.well_defined.ok and v.report.ok
    # with the other normalisation V_ad does not close up
    assert not extend_representation(k3, v_ad(k3), adj, 2).report.ok


def test_extension_commutes_with_pi():
    k3 = catalog("K3")
    adj = build_adjoint(k3)
    rep = diffop_rep(5, k3)
    ext = extend_representation(k3, rep, adj, 2).rep
    u = build_env_antialgebra(k3)
    g = build_env_superalgebra(adj.spec)
    ims = pi_images(g, u)
    inv = {L: x for x, L in g.letter_of.items()}
    images = diffop_images(k3)
    back = rep.meta["monomial"]
    mono = {v: f for f, v in back.items()}
    checked = 0
    for word in itertools.product(g.letters, repeat=2):
        image = pi_map(g, u, word_element(word), ims)
        op = diffop_element(u, images, image)
        for v in rep.carrier:
            try:
                direct = ext.chain([inv[L] for L in word], v)
            except WindowError:
                continue
            via = op.apply({mono[v]: Fraction(1)})
            assert direct == Element({back[f]: c for f, c in via.items()})
            checked += 1
    assert checked > 100


def test_secc_counterexample():
    spec, rep = secc_counterexample()
    res = check_la_representation(spec, rep)
    assert res["Firc"].ok and res["Secc"].status == "fail"


def test_density_formulas():
    rep = density_rep(0, "-6..6")
    k1 = rep.spec
    f = {v.index: v for v in rep.carrier if v.name == "f"}
    phi = {v.index: v for v in rep.carrier if v.name == "phi"}
    assert rep.apply(k1.gen("x", 2), f[3]) == Element.basis(f[5], 3)
    for lam in (-1, Fraction(1, 3)):
        r = density_rep(lam, "-6..6")
        f = {v.index: v for v in r.carrier if v.name == "f"}
        phi = {v.index: v for v in r.carrier if v.name == "phi"}
        assert r.apply(k1.gen("a", HALF), phi[Fraction(3, 2)]) == Element.basis(f[2], 2)
    rm = density_rep(-1, "-6..6")
    f = {v.index: v for v in rm.carrier if v.name == "f"}
    assert rm.apply(k1.gen("x", 1), f[3]) == Element.basis(f[4], 2)


def test_density_modules_represent_k1():
    for lam in (0, HALF, Fraction(1, 3), -1):
        assert check_lie_representation(density_rep(lam, "-3..3"), 2).ok


def test_minus_one_is_twice_adjoint():
    ratios, count = adjoint_factor(density_rep(-1, "-4..4"))
    assert ratios == {Fraction(2)} and count > 0


def test_density_theorem_small_window():
    ok = density_antialgebra_check(HALF, "-4..4")
    assert ok.ok
    assert ok["eps-formula"].ok
    bad = density_antialgebra_check(Fraction(1, 4), "-4..4")
    w = bad["eps-eps"].witness
    assert w.lhs * 2 == w.rhs                  # 4 lambda^2 = 1/4 against 2 lambda = 1/2


def test_representation_file_roundtrip():
    rep = load_representation((DATA / "vad.rep").read_text())
    k3 = rep.spec
    assert check_la_module(k3, rep).ok
    assert dump_representation(rep) == (DATA / "vad.rep").read_text()


def test_representation_file_errors():
    with pytest.raises(ParseError):
        load_representation("representation V of K3\nodd v : weight 0\nq | v = v\n")
    with pytest.raises(ParseError):
        load_representation("representation V of K3\neven v : weight 0\na | v = v\n")
    with pytest.raises(ParseError):
        load_representation("nonsense\n")
