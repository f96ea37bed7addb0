from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import chains, m_forms, pairs
from modhom.forms import FormClass, LogForm, classify, de_rham_d
from modhom.hochschild import (ChainClass, ChainElement, classify_chain, connes_B, cyclic_t,
                               degeneracy, face, format_chain, hkr_e, hkr_eps, hochschild_b,
                               parse_chain, shuffle)
from modhom.modpair import ModulusPair

P = ModulusPair.of(1, 1)
X, Y, ONE = (1, 0), (0, 1), (0, 0)


def T(*factors, c=1, p=P):
    return ChainElement.tensor(p, factors, c)


def test_faces_and_degeneracies():
    assert face(T(X, X), 0) == T((2, 0))
    assert face(T(X, Y), 1) == T((1, 1))
    a, b, c = (1, 0), (0, 1), (2, 1)
    assert face(T(a, b, c), 1) == T(a, (2, 2))
    assert degeneracy(T(X), 0) == T(X, ONE)
    assert degeneracy(T(X, Y), 1) == T(X, Y, ONE)
    assert degeneracy(T(ONE), 0) == T(ONE, ONE)


def test_b_examples():
    a, b, c = (1, 0), (0, 1), (-1, 2)
    expect = T((1, 1), c) - T(a, (-1, 3)) + T((0, 2), b)
    assert hochschild_b(T(a, b, c)) == expect
    assert hochschild_b(T(X, X)).is_zero()


def test_t_examples():
    assert cyclic_t(T(X, Y)) == T(Y, X)
    c = T(X, Y, (3, 1))
    assert cyclic_t(cyclic_t(cyclic_t(c))) == c
    p = ModulusPair.of(1, 0, [2])
    rotated = cyclic_t(T((-1,), (1,), p=p))
    assert rotated == T((1,), (-1,), p=p)
    assert classify_chain(rotated) is ChainClass.P_HH


def test_B_examples():
    assert connes_B(T(X)) == T(X, ONE) + T(ONE, X)
    p = ModulusPair.of(0, 1)
    y = ChainElement.tensor(p, ((1,),))
    assert hkr_e(connes_B(y)) == LogForm.monomial(p, (0,), (0,)) == de_rham_d(hkr_e(y))


def test_shuffle_examples():
    a, b, c, d = (1, 0), (0, 1), (2, 0), (1, 1)
    assert shuffle(T(a), T(c, d)) == T((3, 0), d)
    assert shuffle(T(a, b), T(c, d)) == T((3, 0), b, d) - T((3, 0), d, b)
    z = T(X, Y, c=Fraction(2, 3)) + T(Y, X)
    assert shuffle(T(ONE), z) == z


def test_hkr_examples():
    p = ModulusPair.of(1, 0)
    assert hkr_e(ChainElement.tensor(p, ((1,), (1,)))) == LogForm.monomial(p, (2,), (0,))
    assert hkr_e(T(X, c=4)) == LogForm.monomial(P, X, (), 4)
    q = ModulusPair.of(0, 1)
    assert hkr_e(ChainElement.tensor(q, ((0,), (1,), (1,)))).is_zero()
    assert hkr_eps(LogForm.monomial(p, (1,), (0,))) == ChainElement.tensor(p, ((0,), (1,)))
    q = ModulusPair.of(0, 2)
    e1, e2, one = (1, 0), (0, 1), (0, 0)
    expect = ChainElement.tensor(q, (one, e1, e2)) - ChainElement.tensor(q, (one, e2, e1))
    assert hkr_eps(LogForm.monomial(q, (0, 0), (0, 1))) == expect
    assert hkr_eps(LogForm.monomial(P, ONE, (), 5)) == T(ONE, c=5)
    with pytest.raises(ValueError):
        hkr_eps(LogForm.monomial(p, (-1,), (0,)))


def test_classify_chain_examples():
    p1 = ModulusPair.of(1, 0)
    p2 = ModulusPair.of(1, 0, [2])
    assert classify_chain(ChainElement.tensor(p1, ((-1,), (1,)))) is ChainClass.P_HH
    assert classify_chain(ChainElement.tensor(p2, ((-1,), (0,)))) is ChainClass.M_HH
    assert classify_chain(ChainElement.tensor(p1, ((-1,), (0,)))) is ChainClass.FULL_HH


def test_text_round_trip():
    p = ModulusPair.of(1, 1)
    c = parse_chain(p, "x1^-1*y1 (x) x1^2")
    assert c == ChainElement.tensor(p, ((-1, 1), (2, 0)))
    c = c + T(ONE, Y, c=Fraction(-3, 2))
    assert parse_chain(p, format_chain(c)) == c


def test_validation():
    with pytest.raises(ValueError):
        ChainElement(P, 1, {((0, -1), (0, 0)): 1})
    with pytest.raises(ValueError):
        ChainElement(P, 2, {((0, 0), (0, 0)): 1})


chain_cases = pairs().flatmap(lambda p: st.tuples(st.just(p), st.integers(0, 4))).flatmap(
    lambda pn: chains(pn[0], pn[1], lower=pn[0].mo_bound).map(lambda c: c))


@given(chain_cases)
def test_mixed_complex_identities(c):
    n = c.degree
    if n >= 2:
        assert hochschild_b(hochschild_b(c)).is_zero()
    assert connes_B(connes_B(c)).is_zero()
    anti = hochschild_b(connes_B(c))
    if n >= 1:
        anti = anti + connes_B(hochschild_b(c))
    assert anti.is_zero()
    r = c
    for _ in range(n + 1):
        r = cyclic_t(r)
    assert r == c


@given(chain_cases)
def test_simplicial_identities(c):
    n = c.degree
    for j in range(n + 1):
        for i in range(j):
            if n >= 1 and j <= n:
                if n >= 2:
                    assert face(face(c, j), i) == face(face(c, i), j - 1)
        assert face(degeneracy(c, j), j) == c
        assert face(degeneracy(c, j), j + 1) == c


@given(chain_cases)
def test_operators_preserve_mhh(c):
    for op in (cyclic_t, connes_B) + ((hochschild_b,) if c.degree else ()):
        out = op(c)
        assert classify_chain(out) is not ChainClass.FULL_HH
        assert out.multidegrees() <= c.multidegrees()
    assert classify(hkr_e(c)) is not FormClass.FULL


@given(pairs(), st.data())
def test_shuffle_is_graded_commutative_and_leibniz(p, data):
    n1, n2 = data.draw(st.integers(0, 2)), data.draw(st.integers(0, 2))
    c = data.draw(chains(p, n1, lower=(0,) * p.s, max_terms=2))
    d = data.draw(chains(p, n2, lower=(0,) * p.s, max_terms=2))
    cd = shuffle(c, d)
    assert cd == (-1) ** (n1 * n2) * shuffle(d, c)
    assert classify_chain(cd) is ChainClass.P_HH
    if n1 + n2 >= 1:
        rhs = ChainElement.zero(p, n1 + n2 - 1)
        if n1:
            rhs = rhs + shuffle(hochschild_b(c), d)
        if n2:
            rhs = rhs + (-1) ** n1 * shuffle(c, hochschild_b(d))
        assert hochschild_b(cd) == rhs


@given(pairs(min_vars=1), st.data())
def test_hkr_round_trip(p, data):
    q = data.draw(st.integers(0, min(p.nvars, 4)))
    w = data.draw(m_forms(p, q))
    eps = hkr_eps(w)
    assert hkr_e(eps) == w
    assert classify_chain(eps) is not ChainClass.FULL_HH
    if q:
        assert hochschild_b(eps).is_zero()


@given(chain_cases)
def test_e_intertwines(c):
    if c.degree:
        assert hkr_e(hochschild_b(c)).is_zero()
    assert hkr_e(connes_B(c)) == de_rham_d(hkr_e(c))
