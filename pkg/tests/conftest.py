from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from modhom.forms import LogForm
from modhom.hochschild import ChainElement
from modhom.modpair import ModulusPair

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def pairs(draw, max_s=2, max_t=2, max_r=3, min_vars=0):
    s = draw(st.integers(0, max_s))
    t = draw(st.integers(max(0, min_vars - s), max_t))
    r = draw(st.lists(st.integers(1, max_r), min_size=s, max_size=s))
    return ModulusPair.of(s, t, r)


def monomials(p, lo=-2, hi=2):
    return st.tuples(*([st.integers(lo, hi)] * p.s + [st.integers(0, max(hi, 0))] * p.t))


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(bool)


@st.composite
def chains(draw, p, n, lower=None, max_terms=3):
    """Chains of degree ``n``; with ``lower`` factor 0 is shifted up to meet it."""
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        factors = [list(draw(monomials(p))) for _ in range(n + 1)]
        if lower is not None:
            for j in range(p.s):
                total = sum(f[j] for f in factors)
                if total < lower[j]:
                    factors[0][j] += lower[j] - total
        terms[tuple(tuple(f) for f in factors)] = draw(coeffs)
    return ChainElement(p, n, terms)


@st.composite
def m_forms(draw, p, q, max_terms=3):
    """Forms in MΩ of degree ``q``."""
    from itertools import combinations
    letter_sets = list(combinations(range(p.nvars), q))
    terms = {}
    if not letter_sets:
        return LogForm.zero(p, q)
    for _ in range(draw(st.integers(1, max_terms))):
        letters = draw(st.sampled_from(letter_sets))
        m = tuple(draw(st.integers(b, 2)) for b in p.mo_bound) + \
            tuple(draw(st.integers(0, 2)) for _ in range(p.t))
        terms[(m, letters)] = Fraction(draw(coeffs))
    return LogForm(p, q, terms)
