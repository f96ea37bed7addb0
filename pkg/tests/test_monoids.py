from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from modhom.hochschild import ChainClass, ChainElement, classify_chain
from modhom.linalg import IntMatrix
from modhom.modpair import ModulusPair
from modhom.monoids import (FgAbMonoid, MonoidMap, group_completion, rep_membership,
                            repletion_iso, replete_bar_predicate)

N, Z = FgAbMonoid(1, 0), FgAbMonoid(0, 1)


def test_parse_and_completion():
    assert FgAbMonoid.parse("N^2+Z^1") == FgAbMonoid(2, 1)
    assert FgAbMonoid.parse("N+Z+N") == FgAbMonoid(2, 1)
    assert FgAbMonoid.parse("0") == FgAbMonoid(0, 0)
    with pytest.raises(ValueError):
        FgAbMonoid.parse("Q^2")
    assert group_completion(N) == Z
    assert group_completion(FgAbMonoid(0, 2)) == FgAbMonoid(0, 2)
    assert group_completion(FgAbMonoid(2, 1)) == FgAbMonoid(0, 3)


def test_map_validation():
    with pytest.raises(ValueError):
        MonoidMap(Z, FgAbMonoid(1, 1), IntMatrix([[1], [0]], 1))
    with pytest.raises(ValueError):
        MonoidMap(N, N, IntMatrix([[-1]], 1))
    with pytest.raises(ValueError):
        MonoidMap(N, N, IntMatrix([[1, 0]], 2))


def test_rep_membership_examples():
    assert rep_membership(N, 2, [(-1,), (3,)])
    assert not rep_membership(N, 2, [(-2,), (1,)])
    assert rep_membership(Z, 3, [(-5,), (1,), (-7,)])


def test_repletion_of_N_over_zero():
    rep = repletion_iso(N, MonoidMap.zero(FgAbMonoid(0, 0), N), 2)
    assert rep.invariant_factors == [0]
    for g0, g1 in product(range(-4, 5), repeat=2):
        g = [(g0,), (g1,)]
        assert rep.contains(g) == (g0 + g1 >= 0)
        if rep.contains(g):
            assert rep.forward(g) == ((g0 + g1,), (g1,))
            assert rep.backward(rep.forward(g)) == ((g0,), (g1,))
    with pytest.raises(ValueError):
        rep.forward([(-2,), (1,)])


def test_repletion_of_group_is_everything():
    m = FgAbMonoid(0, 2)
    phi = MonoidMap(Z, m, IntMatrix([[1], [1]], 1))
    rep = repletion_iso(m, phi, 3)
    assert rep.invariant_factors == [0]
    assert rep.contains([(-3, 2), (1, -9), (0, 0)])


def test_chart_splitting_with_identity_on_z():
    m = FgAbMonoid(1, 1)
    rep = repletion_iso(m, MonoidMap.inclusion_of_group_part(m), 2)
    # Z amalgamated with Z over Z is Z: no extra group summand survives
    assert rep.invariant_factors == [0]
    img = rep.forward([(-1, 5), (2, -3)])
    assert img == ((1, 2), rep.quotient.coords((2, -3)))
    g = [(-1, 5), (2, -3)]
    h = [(-1, 0), (2, 2)]
    assert rep.equivalent(g, h)
    assert not rep.equivalent(g, [(0, 5), (1, -3)])


def test_torsion_quotient():
    m = FgAbMonoid(1, 1)
    phi = MonoidMap(Z, m, IntMatrix([[0], [2]], 1))
    rep = repletion_iso(m, phi, 2)
    assert sorted(rep.invariant_factors) == [0, 2]


vec = st.integers(-4, 4)


@st.composite
def rep_elements(draw, m, n):
    rest = [tuple(draw(vec) for _ in range(m.rank)) for _ in range(n - 1)]
    total = tuple(draw(st.integers(0, 4)) if j < m.a else draw(vec) for j in range(m.rank))
    first = tuple(t - sum(v[j] for v in rest) for j, t in enumerate(total))
    return [first] + rest


CONFIGS = [
    (FgAbMonoid(1, 0), None),
    (FgAbMonoid(2, 0), None),
    (FgAbMonoid(1, 1), None),
    (FgAbMonoid(1, 1), "incl"),
    (FgAbMonoid(1, 2), "incl"),
]


@given(st.sampled_from(CONFIGS), st.integers(1, 4), st.data())
def test_repletion_iso_properties(config, n, data):
    m, kind = config
    phi = MonoidMap.inclusion_of_group_part(m) if kind else MonoidMap.zero(FgAbMonoid(0, 0), m)
    rep = repletion_iso(m, phi, n)
    g = data.draw(rep_elements(m, n))
    h = data.draw(rep_elements(m, n))
    fg = rep.forward(g)
    assert rep.equivalent(rep.backward(fg), g)
    assert rep.forward(rep.backward(fg)) == fg
    gh = [tuple(a + b for a, b in zip(u, v)) for u, v in zip(g, h)]
    assert rep.forward(gh) == rep.add_image(fg, rep.forward(h))


def test_replete_bar_examples():
    p = ModulusPair.of(1, 0)
    assert replete_bar_predicate(p, 1, [(-1,), (2,)])
    assert not replete_bar_predicate(p, 1, [(-1,), (0,)])
    q = ModulusPair.of(0, 2)
    assert replete_bar_predicate(q, 2, [(1, 0), (0, 3), (2, 2)])
    with pytest.raises(ValueError):
        replete_bar_predicate(p, 2, [(0,)])


def test_replete_bar_matches_phh_exhaustively():
    p = ModulusPair.of(1, 1)
    monos = [(i, k) for i in range(-3, 4) for k in range(2)]
    for n in range(3):
        for f in product(monos, repeat=n + 1):
            phh = classify_chain(ChainElement.tensor(p, f)) is ChainClass.P_HH
            assert replete_bar_predicate(p, n, f) == phh
