from itertools import product
from math import comb

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import m_forms, pairs
from modhom.forms import (FormClass, LogForm, basis_of, classify, de_rham_d, format_form,
                          parse_form, random_form, wedge)
from modhom.modpair import ModulusPair

P1 = ModulusPair.of(1, 0)
P1r2 = ModulusPair.of(1, 0, [2])


def test_classify():
    w = LogForm.monomial(P1r2, (-1,), (0,))
    assert classify(w) is FormClass.M_OMEGA
    assert classify(LogForm.monomial(P1, (-1,), (0,))) is FormClass.FULL
    assert classify(LogForm.monomial(ModulusPair.of(0, 1), (1,), (0,))) is FormClass.P_OMEGA


def test_wedge_examples():
    dlog = LogForm.monomial(P1, (0,), (0,))
    assert wedge(dlog, dlog).is_zero()
    p = ModulusPair.of(0, 2)
    dy1 = LogForm.monomial(p, (0, 0), (0,))
    dy2 = LogForm.monomial(p, (0, 0), (1,))
    assert wedge(dy1, dy2) == -wedge(dy2, dy1)
    p = ModulusPair.of(1, 1)
    left = LogForm.monomial(p, (1, 0), (0,))
    right = LogForm.monomial(p, (0, 1), (1,))
    assert wedge(left, right) == LogForm.monomial(p, (1, 1), (0, 1))


def test_d_examples():
    assert de_rham_d(LogForm.monomial(P1r2, (-1,))) == LogForm.monomial(P1r2, (-1,), (0,), -1)
    assert de_rham_d(LogForm.monomial(P1, (0,), (), 7)).is_zero()
    p = ModulusPair.of(0, 2)
    assert de_rham_d(LogForm.monomial(p, (1, 0), (1,))) == LogForm.monomial(p, (0, 0), (0, 1))


def test_basis_examples():
    p = ModulusPair.of(1, 1, [2])
    assert basis_of(p, FormClass.M_OMEGA, 1, (-1, 1)) == [((-1, 1), (0,)), ((-1, 0), (1,))]
    assert basis_of(ModulusPair.of(0, 1), FormClass.P_OMEGA, 1, (0,)) == []
    assert basis_of(p, FormClass.M_OMEGA, 3, (0, 1)) == []
    assert basis_of(p, FormClass.P_OMEGA, 1, (-1, 1)) == []
    with pytest.raises(ValueError):
        basis_of(p, FormClass.FULL, 1, (0, 0))
    with pytest.raises(ValueError):
        basis_of(p, FormClass.M_OMEGA, 1, (0, -1))


def test_text_round_trip():
    p = ModulusPair.of(1, 2)
    w = parse_form(p, "(-1)*x1^-1*dlogx1 + y1*dy2")
    assert format_form(w) == "(-1)*x1^-1*dlogx1 + y1*dy2"
    assert parse_form(p, format_form(w)) == w


def _basis_by_enumeration(p, cls, q, deg):
    """Brute force: every (monomial, letters) with the right multidegree and class."""
    from itertools import combinations
    lower = (0,) * p.s if cls is FormClass.P_OMEGA else p.mo_bound
    found = set()
    for letters in combinations(range(p.nvars), q):
        m = list(deg)
        for a in letters:
            if a >= p.s:
                m[a] -= 1
        if any(v < 0 for v in m[p.s:]):
            continue
        if any(v < b for v, b in zip(m, lower)):
            continue
        found.add((tuple(m), letters))
    return found


@given(pairs(), st.data())
def test_basis_matches_enumeration_and_mo_splitting(p, data):
    deg = tuple(data.draw(st.integers(-3, 3)) for _ in range(p.s)) + \
        tuple(data.draw(st.integers(0, 3)) for _ in range(p.t))
    for q in range(p.nvars + 1):
        for cls in (FormClass.P_OMEGA, FormClass.M_OMEGA):
            basis = basis_of(p, cls, q, deg)
            assert set(basis) == _basis_by_enumeration(p, cls, q, deg)
            assert basis == sorted(basis, key=lambda key: key[1])
        # MΩ = MO · PΩ: shifting by a monomial of MO whose x-part is in [1-r, 0]
        shifted = set()
        for u in product(*[range(b, 1) for b in p.mo_bound]):
            src = tuple(d - a for d, a in zip(deg, u + (0,) * p.t))
            if any(v < 0 for v in src[p.s:]):
                continue
            for m, letters in basis_of(p, FormClass.P_OMEGA, q, src):
                shifted.add((tuple(a + b for a, b in zip(m, u + (0,) * p.t)), letters))
        assert shifted == set(basis_of(p, FormClass.M_OMEGA, q, deg))


@given(pairs(min_vars=1), st.data())
def test_d_squared_and_leibniz(p, data):
    q1 = data.draw(st.integers(0, p.nvars))
    q2 = data.draw(st.integers(0, p.nvars))
    w = data.draw(m_forms(p, q1))
    v = data.draw(m_forms(p, q2))
    assert de_rham_d(de_rham_d(w)).is_zero()
    assert classify(de_rham_d(w)) is not FormClass.FULL
    sign = -1 if q1 % 2 else 1
    assert de_rham_d(wedge(w, v)) == wedge(de_rham_d(w), v) + sign * wedge(w, de_rham_d(v))
    assert wedge(w, v) == (-1) ** (q1 * q2) * wedge(v, w)


def test_random_form_respects_class():
    rng = np.random.default_rng(3)
    for r in (1, 2, 3):
        p = ModulusPair.of(2, 1, [r, 1])
        for q in range(4):
            w = random_form(p, rng, q, FormClass.M_OMEGA, 4, (-3, 3))
            assert classify(w) is not FormClass.FULL
            w = random_form(p, rng, q, FormClass.P_OMEGA, 4, (-3, 3))
            assert classify(w) is FormClass.P_OMEGA


def test_dimension_count_s0():
    for t in range(3):
        p = ModulusPair.of(0, t)
        for total in range(4):
            degs = [d for d in product(range(total + 1), repeat=t) if sum(d) == total]
            for q in range(t + 1):
                got = sum(len(basis_of(p, FormClass.P_OMEGA, q, d)) for d in degs)
                ks = sum(1 for k in product(range(total + 1), repeat=t) if sum(k) == total - q)
                assert got == comb(t, q) * ks
