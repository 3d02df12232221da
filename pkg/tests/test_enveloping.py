from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lieanti.algebra import catalog, zero_algebra
from lieanti.enveloping import (BoundError, CompletionError, GMonomial, RewriteSystem,
                                build_env_antialgebra, build_env_superalgebra, build_k1_quotient,
                                casimir, concat, g_model_dimension, g_model_product, ghost_casimir,
                                graded_dimension, jordan_superproduct, osp_pi_images, pbw_check,
                                pi_images, pi_map, pi_pair, power_str, supercommutator,
                                twisted_adjoint, word_element)
from lieanti.adjoint import build_adjoint
from lieanti.kernel import DomainError, Element, Gen

HALF = Fraction(1, 2)


@pytest.fixture(scope="module")
def uk3():
    rs = build_env_antialgebra(catalog("K3"))
    rs.complete(6)
    return rs


@pytest.fixture(scope="module")
def uosp():
    rs = build_env_superalgebra(catalog("osp12"))
    rs.complete(4)
    return rs


def test_k3_rule_table(uk3):
    assert uk3.dump().splitlines() == ["E E -> E", "A E -> -E A + A", "B E -> -E B + B", "B A -> A B - E"]


def test_zero_algebra_rule():
    a, b = Gen.make("a", 1, HALF), Gen.make("b", 1, -HALF)
    rs = build_env_antialgebra(zero_algebra("Z", (a, b)))
    assert rs.dump().strip() == "B A -> A B"


def test_ak1_rule_shapes():
    ak1 = catalog("AK1", "-2..2")
    rs = build_env_antialgebra(ak1)
    E = {g.index: rs.letter_of[g] for g in ak1.evens}
    A = {g.index: rs.letter_of[g] for g in ak1.odds}
    assert rs.normal_form(rs.w("E_1 E_1")) == rs.w("E_2")
    assert rs.normal_form(word_element((A[HALF], E[1]))) == \
        word_element((A[Fraction(3, 2)],)) - word_element((E[1], A[HALF]))
    lhs = word_element((A[Fraction(3, 2)], A[-HALF]))
    want = word_element((A[-HALF], A[Fraction(3, 2)])) + word_element((E[1],), -2)
    assert rs.normal_form(lhs) == want


def test_osp_rules(uosp):
    assert uosp.normal_form(uosp.w("A A")) == uosp.w("E")
    assert uosp.normal_form(uosp.w("B A")) == uosp.element("-A B - H")


def test_k1_odd_rule():
    k1 = catalog("K1", "-2..2")
    rs = build_env_superalgebra(k1)
    assert rs.normal_form(rs.element("A_3/2 A_1/2")) == rs.element("-A_1/2 A_3/2 + 2 X_2")


@pytest.mark.parametrize("word,expected", [
    ("B A", "A B - E"), ("B A^2", "A^2 B - A"), ("E A E", "0"), ("E E", "E"), ("", "1"),
])
def test_k3_normal_forms(uk3, word, expected):
    assert uk3.fmt(uk3.normal_form(uk3.element(word) if word else uk3.w(""))) == expected


def test_graded_dimensions_k3(uk3):
    assert graded_dimension(uk3, 0) == 1
    assert graded_dimension(uk3, 2) == 5
    assert {power_str(w) for w in uk3.words(2, irreducible=True)} == {"E A", "E B", "A^2", "A B", "B^2"}
    assert g_model_dimension(catalog("K3"), 2) == 5


def test_g_model_product_signs():
    k3 = catalog("K3")
    eps, a, b = k3.gens
    assert g_model_product(k3, GMonomial(None, (a,)), GMonomial(eps, (b,))) == \
        Element.basis(GMonomial(eps, (a, b)), -1)
    assert g_model_product(k3, GMonomial(eps, ()), GMonomial(eps, (a,))) == 0


def test_free_algebra_completion_is_unchanged():
    x, y = Gen.make("X", 0, 0), Gen.make("Y", 0, 0)
    rs = RewriteSystem("free", [x, y])
    rs.complete(4)
    assert not rs.rules and graded_dimension(rs, 3) == 8


def test_completion_rejects_scalar_relation():
    x = Gen.make("X", 0, 0)
    rs = RewriteSystem("bad", [x])
    with pytest.raises(CompletionError):
        rs.add_relation(word_element(()), "one = 0")


def test_no_rule_has_a_single_letter_lhs():
    ak1 = catalog("AK1", "-3..3")
    rs = build_env_antialgebra(ak1)
    rs.complete(3)
    assert rs.rules and all(len(lhs) >= 2 for lhs in rs.rules)
    for lhs, rule in rs.rules.items():
        assert {rs.weight(w) for w in rule.rhs.keys()} <= {rs.weight(lhs)}


def test_window_bound_is_reported():
    ak1 = catalog("AK1", "-2..2")
    rs = build_env_antialgebra(ak1)
    with pytest.raises(BoundError):
        rs.normal_form(rs.w("E_2 E_1"))


def test_unknown_letter():
    rs = build_env_antialgebra(catalog("K3"))
    with pytest.raises(DomainError):
        rs.w("Q")


words_k3 = st.lists(st.sampled_from(["E", "A", "B"]), max_size=4).map(" ".join)


@settings(max_examples=60, deadline=None)
@given(words_k3, words_k3)
def test_normal_form_is_idempotent_and_multiplicative(uk3, u, v):
    U, V = uk3.w(u), uk3.w(v)
    nu = uk3.normal_form(U)
    assert uk3.normal_form(nu) == nu
    assert uk3.normal_form(concat(U, V)) == uk3.normal_form(concat(nu, uk3.normal_form(V)))


def test_pbw_degree_zero_trivial():
    res = pbw_check(catalog("GK3"), 0)
    assert res.holds and res.rows == [(0, 0, 1, 1)]


def test_pbw_k3_small():
    res = pbw_check(catalog("K3"), 4)
    assert res.holds and res.totals()[4] == (9, 9)


def test_pi_of_symmetric_pair(uk3):
    k3 = uk3.source
    a, b = (Element.basis(g) for g in k3.odds)
    assert uk3.fmt(pi_pair(uk3, a, b)) == "A B - 1/2 E"


def test_pi_images_from_adjoint(uk3):
    adj = build_adjoint(catalog("K3"))
    g = build_env_superalgebra(adj.spec)
    ims = pi_images(g, uk3)
    L = {str(x): x for x in g.letters}
    assert ims[L["A⊙A"]] == uk3.w("A A")
    assert pi_map(g, uk3, g.w("A") * 2, ims) == uk3.w("A", 2)


def test_casimirs(uosp, uk3):
    ims = osp_pi_images(uosp, uk3)
    assert pi_map(uosp, uk3, casimir(uosp), ims) == 0
    gamma = ghost_casimir(uosp)
    assert uosp.normal_form(gamma) == uosp.normal_form(uosp.element("A B - B A - 1/2"))
    pg = pi_map(uosp, uk3, gamma, ims)
    assert uk3.fmt(pg) == "E - 1/2"


def test_twisted_adjoint_on_unit(uosp):
    one = uosp.w("")
    A, E = uosp.w("A"), uosp.w("E")
    assert twisted_adjoint(uosp, A, one) == A * 2
    assert twisted_adjoint(uosp, E, one) == 0


def test_jordan_superproduct_odd_skew(uk3):
    A = uk3.w("A")
    assert jordan_superproduct(uk3, A, A) == 0
    assert supercommutator(uk3, A, A) == uk3.w("A A", 2)


def test_inhomogeneous_input_rejected(uk3):
    with pytest.raises(DomainError):
        jordan_superproduct(uk3, uk3.element("A + E"), uk3.w("B"))


def test_k1_quotient_letters():
    q = build_k1_quotient("-2..2")
    names = [str(g) for g in q.letters]
    assert "E_1" in names and "X_1" in names and "A_1/2" in names
    assert q.degree(q.word("X_1")) == 2 and q.degree(q.word("E_1")) == 1
